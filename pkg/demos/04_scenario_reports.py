"""End-to-end verification scenarios and machine-readable reports.

A scenario bundles a concrete surjection family with targets, sections,
oracles, and probes.  run_verification checks the hypotheses, runs every
wired lifting path, judges certified defects against tolerances, and
returns a plain dict ready for json.dump.  The CLI (`idemlift run`) is a
thin wrapper over exactly this function.

Two scenarios get special attention here:

* example2 works over truncated power series with nilpotent convolution
  coefficients.  Norms there carry certified tail bounds; each defect
  comes with an allowance, and a check passes when defect - allowance
  stays under tolerance.  Raw defect norms would be unfair: they include
  the tail of everything the series ever touched.

* remark3-probe is a deliberate counterexample.  Its kernel elements
  have spectra escaping beyond any disc around 0, so the lifting
  hypotheses fail and the run list stays empty.  The scenario exists to
  show the hypothesis checks are not decorative.
"""

import json
import tempfile
from pathlib import Path

from idemlift import (
    build_scenario,
    list_scenarios,
    report_passed,
    run_verification,
    write_csv,
    write_json,
)

print("available scenarios:", ", ".join(list_scenarios()))

# --- a full verification run over truncated series ------------------------
scn = build_scenario("example2")
report = run_verification(scn, grid=[-0.4, 0.0, 0.4], seed=5)

print()
print("example2 passed:", report_passed(report))
for hyp in report["hypotheses"]:
    print(f"  hypothesis {hyp['name']}: passed={hyp['passed']}")
for run in report["runs"]:
    tight = max(run["checks"], key=lambda c: c["value"] - c["bound"], default=None)
    label = f"{tight['name']}={tight['value']:.2e}" if tight else "no checks"
    print(f"  run {run['name']}: passed={run['passed']} tightest check {label}")

# allowances at work: pick a lift row and compare raw vs certified
row = next(r for run in report["runs"] if run["name"] == "family-step-0"
           for r in run["rows"])
print()
print("one family row at lambda =", row["lambda"][0])
for key in sorted(row["defects"]):
    raw = row["defects"][key]
    slack = row["allowances"].get(key, 0.0)
    print(f"  {key}: raw={raw:.3e} allowance={slack:.3e} "
          f"certified={max(0.0, raw - slack):.3e}")

# --- serialization ----------------------------------------------------------
outdir = Path(tempfile.mkdtemp())
write_json(report, str(outdir / "example2-report.json"))
write_csv(report, str(outdir / "example2-report.csv"))
print()
print("wrote", sorted(p.name for p in outdir.iterdir()))

# reports are deterministic apart from wall-clock timings
again = run_verification(scn, grid=[-0.4, 0.0, 0.4], seed=5)
for rep in (report, again):
    rep.pop("timings", None)
print("bit-identical reruns:", json.dumps(report, sort_keys=True) ==
      json.dumps(again, sort_keys=True))

# --- the counterexample -----------------------------------------------------
probe = build_scenario("remark3-probe")
neg = run_verification(probe, seed=0)
print()
print("remark3-probe expected outcome:", neg["expected_outcome"])
print("lifting runs attempted:", len(neg["runs"]))
for hyp in neg["hypotheses"]:
    mark = "ok" if hyp["passed"] else ("FAIL" if hyp["required"] else "violated (expected)")
    print(f"  hypothesis {hyp['name']}: {mark}")
for pr in neg["probes"]:
    print(f"  probe {pr['name']}: passed={pr['passed']}")
# the violated hypothesis is marked non-required for this scenario, so
# the report as a whole still passes: the violation is the point
print("report verdict:", report_passed(neg))
