"""Analytic families of elements and homomorphisms, evaluated pointwise.

Families are plain evaluator closures with a declared validity radius,
never stored power series: analyticity of everything built from them is
inherited structurally (compositions of analytic maps with contour data
frozen at the base point).  Sections are right inverses of a
homomorphism family along a target family, supplied per construction
rather than by abstract existence arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .algebra import BanachAlgebra, Element, alg_exp
from .errors import (
    NoInvolution,
    NotIdempotentInput,
    NotStarCompatible,
    OutOfRadius,
    ParameterError,
    UnsupportedStrategy,
)

__all__ = [
    "ElementFamily",
    "HomFamily",
    "Section",
    "constant_family",
    "hom_apply",
    "make_section",
    "symmetrize",
    "exp_conjugation_family",
    "kernel_residual",
]

_TAGS = ("", "constant", "polynomial", "exponential-conjugation", "evaluation-hom")


def _check_radius(lam: complex, radius: float, what: str) -> None:
    if abs(lam) >= radius:
        raise OutOfRadius(f"|lambda| = {abs(lam):.6g} is outside the {what} radius {radius:.6g}")


@dataclass(frozen=True)
class ElementFamily:
    """Analytic map lambda -> element of a fixed algebra, around 0."""

    algebra: BanachAlgebra
    evaluator: Callable[[complex], Element]
    radius: float = math.inf
    tag: str = ""

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ParameterError(f"unknown family tag {self.tag!r}")
        if not self.radius > 0:
            raise ParameterError("validity radius must be positive")

    def __call__(self, lam: complex) -> Element:
        _check_radius(lam, self.radius, "family")
        out = self.evaluator(complex(lam))
        self.algebra._own(out)
        return out


@dataclass(frozen=True)
class HomFamily:
    """Analytic family of algebra homomorphisms pi(lambda): A -> B.

    ``embed`` (optional) is a pointwise right inverse used by the
    section strategies: pi(lambda)(embed(lambda, y)) = y for y in B.
    ``star_on_real`` declares pi(lambda) a *-homomorphism for real
    lambda, which the self-adjoint lifting paths require.

    Each pi(lambda) is expected to be norm-nonincreasing.  The lifting
    routines turn tail bounds on source elements into allowances on
    downstairs defects, and that accounting is an over-estimate only
    for contractive maps.
    """

    source: BanachAlgebra
    target: BanachAlgebra
    evaluator: Callable[[complex, Element], Element]
    embed: Callable[[complex, Element], Element] | None = None
    radius: float = math.inf
    star_on_real: bool = False
    tag: str = ""
    label: str = ""

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ParameterError(f"unknown family tag {self.tag!r}")
        if not self.radius > 0:
            raise ParameterError("validity radius must be positive")

    def apply(self, lam: complex, x: Element) -> Element:
        _check_radius(lam, self.radius, "homomorphism")
        self.source._own(x)
        out = self.evaluator(complex(lam), x)
        self.target._own(out)
        return out


@dataclass(frozen=True)
class Section:
    """Analytic right inverse: pi(lambda)(section(lambda)) = target(lambda)."""

    pi: HomFamily
    target: ElementFamily
    evaluator: Callable[[complex], Element]
    radius: float = math.inf
    label: str = ""

    def __call__(self, lam: complex) -> Element:
        _check_radius(lam, self.radius, "section")
        out = self.evaluator(complex(lam))
        self.pi.source._own(out)
        return out

    def defect(self, lam: complex) -> float:
        """Lifting defect ||pi(lam) section(lam) - target(lam)||."""
        return (self.pi.apply(lam, self(lam)) - self.target(lam)).norm()


def constant_family(x: Element, radius: float = math.inf) -> ElementFamily:
    return ElementFamily(x.algebra, lambda lam: x, radius=radius, tag="constant")


def hom_apply(pi: HomFamily, x: ElementFamily, lam: complex) -> Element:
    """pi(lambda)(x(lambda)) with both validity radii enforced."""
    _check_radius(lam, min(pi.radius, x.radius), "family")
    return pi.apply(lam, x(lam))


def make_section(pi: HomFamily, target: ElementFamily, strategy: str) -> Section:
    """Build a section by re-embedding the target value at each lambda.

    ``constant-embed`` reads the target value back as a constant
    function (evaluation homomorphisms on series algebras), while
    ``component-embed`` injects it into the complement of the kernel
    (split algebras: dual numbers, block triangles, unitizations,
    products thereof).  Either way sigma(section(0)) = sigma(target(0)),
    so the spectral requirements on sections hold automatically.
    """
    if strategy not in ("constant-embed", "component-embed"):
        raise UnsupportedStrategy(f"unknown section strategy {strategy!r}")
    if pi.embed is None:
        raise UnsupportedStrategy(f"{pi.label or 'this'} family has no embedding")
    if strategy == "constant-embed" and pi.tag != "evaluation-hom":
        raise UnsupportedStrategy("constant-embed needs an evaluation homomorphism")
    if strategy == "component-embed" and pi.tag == "evaluation-hom":
        raise UnsupportedStrategy("component-embed needs a split algebra")
    emb = pi.embed

    def run(lam: complex) -> Element:
        return emb(lam, target(lam))

    return Section(
        pi=pi,
        target=target,
        evaluator=run,
        radius=min(pi.radius, target.radius),
        label=f"{strategy} section",
    )


def symmetrize(sec: Section) -> Section:
    """Self-adjoint version (a + a*)/2 of a section, for real lambda.

    The result still lifts the target on the real axis when pi is a
    *-homomorphism family there and the target is self-adjoint.
    """
    alg = sec.pi.source
    if not alg.has_involution:
        raise NoInvolution(f"{alg.kind} has no involution to symmetrize with")
    if not sec.pi.star_on_real:
        raise NotStarCompatible("homomorphism family is not a *-family on real lambda")

    def run(lam: complex) -> Element:
        a = sec(lam)
        return 0.5 * (a + a.adjoint())

    return Section(
        pi=sec.pi,
        target=sec.target,
        evaluator=run,
        radius=sec.radius,
        label=(sec.label + " symmetrized").strip(),
    )


def exp_conjugation_family(e: Element, x: Element) -> ElementFamily:
    """The entire family of idempotents lambda -> exp(-lambda x) e exp(lambda x)."""
    if (e * e - e).norm() > 1e-12:
        raise NotIdempotentInput("conjugation seed is not idempotent")

    def run(lam: complex) -> Element:
        if lam == 0:
            return e
        return alg_exp(-lam * x) * e * alg_exp(lam * x)

    return ElementFamily(e.algebra, run, tag="exponential-conjugation")


def kernel_residual(pi: HomFamily, x: Element, lam: complex) -> float:
    """||pi(lambda) x||: zero iff x is in the kernel (up to tails)."""
    return pi.apply(lam, x).norm()
