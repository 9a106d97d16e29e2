"""idemlift: lifting idempotent families through Banach-algebra homomorphisms."""

__version__ = "0.1.0"

from .algebra import (
    BanachAlgebra,
    BlockTriangularAlgebra,
    ConvolutionAlgebra,
    DualAlgebra,
    Element,
    MatrixAlgebra,
    ProductAlgebra,
    SpectrumReport,
    UnitizationAlgebra,
    WienerAlgebra,
    adjoint,
    alg_exp,
    build_algebra,
    commutator_defect,
    dist,
    hausdorff_distance,
    idempotency_defect,
    inverse,
    mul,
    norm,
    spectrum,
)
from .contours import (
    JordanPolygon,
    PolygonalArc,
    build_escape_arc,
    build_gamma_pair,
    circle_polygon,
    square_polygon,
)
from .families import (
    ElementFamily,
    HomFamily,
    Section,
    constant_family,
    exp_conjugation_family,
    hom_apply,
    kernel_residual,
    make_section,
    symmetrize,
)
from .funcalc import (
    ContourData,
    QuadratureAudit,
    contour_apply,
    riesz_projection,
    spectral_component_apply,
    sqrt_cut,
    sqrt_near_one,
)
from .lifting import (
    LiftPoint,
    LiftTrace,
    OrthoPoint,
    OrthoStepTrace,
    choose_sign,
    lift_family,
    lift_local,
    lift_local_sa,
    lift_ortho_step,
    lift_trivial,
)
from .report import build_report, report_passed, write_csv, write_json
from .scenarios import (
    Scenario,
    build_block_testbed,
    build_dual_testbed,
    build_example1,
    build_example2,
    build_example3,
    build_scenario,
    list_scenarios,
    remark3_probe,
    run_verification,
)
from . import errors

__all__ = [
    "BanachAlgebra",
    "BlockTriangularAlgebra",
    "ContourData",
    "ConvolutionAlgebra",
    "DualAlgebra",
    "Element",
    "ElementFamily",
    "HomFamily",
    "JordanPolygon",
    "LiftPoint",
    "LiftTrace",
    "MatrixAlgebra",
    "OrthoPoint",
    "OrthoStepTrace",
    "PolygonalArc",
    "ProductAlgebra",
    "QuadratureAudit",
    "Scenario",
    "Section",
    "SpectrumReport",
    "UnitizationAlgebra",
    "WienerAlgebra",
    "adjoint",
    "alg_exp",
    "build_algebra",
    "build_block_testbed",
    "build_dual_testbed",
    "build_escape_arc",
    "build_example1",
    "build_example2",
    "build_example3",
    "build_gamma_pair",
    "build_report",
    "build_scenario",
    "choose_sign",
    "circle_polygon",
    "commutator_defect",
    "constant_family",
    "contour_apply",
    "dist",
    "errors",
    "exp_conjugation_family",
    "hausdorff_distance",
    "hom_apply",
    "idempotency_defect",
    "inverse",
    "kernel_residual",
    "lift_family",
    "lift_local",
    "lift_local_sa",
    "lift_ortho_step",
    "lift_trivial",
    "list_scenarios",
    "make_section",
    "mul",
    "norm",
    "remark3_probe",
    "report_passed",
    "riesz_projection",
    "run_verification",
    "spectral_component_apply",
    "spectrum",
    "sqrt_cut",
    "sqrt_near_one",
    "square_polygon",
    "symmetrize",
    "write_csv",
    "write_json",
    "__version__",
]
