"""Contour-integral functional calculus against eigendecomposition oracles."""

import numpy as np
import pytest

from oracles import (
    eigenprojection_near,
    half_shift_root,
    principal_sqrt,
    random_sectorial_matrix,
    random_split_spectrum_matrix,
)

from idemlift.algebra import DualAlgebra, MatrixAlgebra, dist
from idemlift.contours import (
    PolygonalArc,
    build_escape_arc,
    build_gamma_pair,
    circle_polygon,
    square_polygon,
)
from idemlift.errors import (
    DegenerateGeometry,
    QuadratureNotConverged,
    SpectrumMeetsCut,
    SpectrumNotEnclosed,
    SpectrumOnContour,
    SpectrumTooLarge,
)
from idemlift.funcalc import (
    ContourData,
    contour_apply,
    riesz_projection,
    sqrt_cut,
    sqrt_near_one,
)

M1 = MatrixAlgebra(1)
M2 = MatrixAlgebra(2)


def _gamma_for(x, eps_scale=1.0):
    rep = x.spectrum()
    P = build_escape_arc(rep)
    eps = eps_scale * P.distance_to_points(rep.points) / 3.0
    poly = build_gamma_pair(P, eps, rep.radius)
    return P, ContourData(poly, eps=eps, branch="cut", cut=P)


def test_cauchy_formula_basics() -> None:
    a = M2.wrap(np.diag([0.1, 0.2]).astype(complex))
    cd = ContourData(circle_polygon(0j, 0.5), eps=0.5)
    audits = []
    same = contour_apply(lambda z: z, a, cd, audit_sink=audits)
    assert dist(same, a) <= 1e-12
    unit = contour_apply(lambda z: np.ones_like(z), a, cd)
    assert dist(unit, M2.one()) <= 1e-12
    squared = contour_apply(lambda z: z**2, a, cd)
    np.testing.assert_allclose(
        squared.payload, np.diag([0.01, 0.04]), atol=1e-12
    )
    assert audits and audits[0].delta < 1e-11


def test_contour_apply_multiplicative_on_polynomials() -> None:
    rng = np.random.default_rng(2)
    alg = MatrixAlgebra(4)
    cd = ContourData(circle_polygon(0j, 3.0), eps=1.0)
    for _ in range(10):
        a = alg.random_element(rng, 0.5)
        g = contour_apply(lambda z: 1 + 2 * z, a, cd)
        h = contour_apply(lambda z: z - 0.5 * z**2, a, cd)
        gh = contour_apply(lambda z: (1 + 2 * z) * (z - 0.5 * z**2), a, cd)
        assert dist(gh, g * h) <= 1e-8


def test_contour_independence() -> None:
    a = M2.wrap(np.diag([0.1, 0.2]).astype(complex))
    circ = ContourData(circle_polygon(0j, 0.5), eps=0.5)
    sq = ContourData(square_polygon(0j, 0.6), eps=0.5)
    f1 = contour_apply(lambda z: np.exp(z), a, circ)
    f2 = contour_apply(lambda z: np.exp(z), a, sq)
    assert dist(f1, f2) <= 1e-9


def test_contour_apply_rejects_outside_spectrum() -> None:
    a = M2.wrap(np.diag([0.1, 2.0]).astype(complex))
    cd = ContourData(circle_polygon(0j, 0.5), eps=0.5)
    with pytest.raises(SpectrumNotEnclosed):
        contour_apply(lambda z: z, a, cd)


def test_riesz_on_random_split_spectra() -> None:
    rng = np.random.default_rng(7)
    alg = MatrixAlgebra(6)
    # eigenvalue discs of radius 0.28 leave clearance ~0.053 to the circle
    cd = ContourData(circle_polygon(1 + 0j, 1 / 3), eps=0.1, label="around-1")
    for _ in range(100):
        mat = random_split_spectrum_matrix(rng, 6)
        a = alg.wrap(mat)
        p = riesz_projection(a, cd)
        assert dist(p * p, p) <= 1e-9
        assert dist(p * a, a * p) <= 1e-9
        assert np.max(np.abs(p.payload - eigenprojection_near(mat, 1.0, 1 / 3))) <= 1e-7


def test_riesz_on_idempotent_returns_it() -> None:
    q = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex)  # idempotent
    a = M2.wrap(q)
    cd = ContourData(circle_polygon(1 + 0j, 1 / 3), eps=1 / 3)
    assert dist(riesz_projection(a, cd), a) <= 1e-10


def test_riesz_complement_rule() -> None:
    rng = np.random.default_rng(11)
    alg = MatrixAlgebra(5)
    cd0 = ContourData(square_polygon(0j, 1 / 3), eps=0.2)
    cd1 = ContourData(square_polygon(1 + 0j, 1 / 3), eps=0.2)
    for _ in range(10):
        a = alg.wrap(random_split_spectrum_matrix(rng, 5, radius=0.2))
        p0 = riesz_projection(a, cd0)
        p1 = riesz_projection(a, cd1)
        assert dist(p0 + p1, alg.one()) <= 1e-9


def test_riesz_rejects_spectrum_on_contour() -> None:
    a = M2.wrap(np.diag([1 / 3 + 1e-14, 2.0]).astype(complex))
    cd = ContourData(circle_polygon(0j, 1 / 3), eps=0.2)
    with pytest.raises(SpectrumOnContour):
        riesz_projection(a, cd)


def test_sqrt_cut_known_diagonal() -> None:
    x = M2.wrap(np.diag([4.0, 9.0]).astype(complex))
    P, cd = _gamma_for(x)
    assert abs(P.ray_direction - (-1 + 0j)) <= 1e-9
    s = sqrt_cut(x, P, cd, sheet=+1)
    np.testing.assert_allclose(s.payload, np.diag([2.0, 3.0]), atol=1e-10)


def test_sqrt_cut_scalar_residue_is_plus_minus_one() -> None:
    x = M1.wrap(np.array([[1.0 + 0j]]))
    P, cd = _gamma_for(x)
    plus = sqrt_cut(x, P, cd, sheet=+1).payload[0, 0]
    minus = sqrt_cut(x, P, cd, sheet=-1).payload[0, 0]
    assert abs(plus - 1.0) <= 1e-10
    assert abs(minus + 1.0) <= 1e-10


def test_sqrt_cut_squares_back_and_matches_oracle() -> None:
    rng = np.random.default_rng(13)
    alg = MatrixAlgebra(4)
    for _ in range(25):
        mat = random_sectorial_matrix(rng, 4)
        x = alg.wrap(mat)
        P, cd = _gamma_for(x)
        s = sqrt_cut(x, P, cd, sheet=+1)
        assert dist(s * s, x) <= 1e-9
        assert dist(s * x, x * s) <= 1e-9
        if abs(P.ray_direction - (-1)) < 1e-9:
            # cut along the negative axis selects the principal branch
            assert np.max(np.abs(s.payload - principal_sqrt(mat))) <= 1e-7


def test_sqrt_cut_sheets_negate_exactly() -> None:
    rng = np.random.default_rng(17)
    alg = MatrixAlgebra(3)
    x = alg.wrap(random_sectorial_matrix(rng, 3))
    P, cd = _gamma_for(x)
    assert dist(sqrt_cut(x, P, cd, 1), -1 * sqrt_cut(x, P, cd, -1)) <= 1e-12


def test_sqrt_cut_contour_independence() -> None:
    rng = np.random.default_rng(19)
    alg = MatrixAlgebra(3)
    x = alg.wrap(random_sectorial_matrix(rng, 3))
    P, cd_wide = _gamma_for(x, eps_scale=1.0)
    _, cd_tight = _gamma_for(x, eps_scale=0.5)
    s1 = sqrt_cut(x, P, cd_wide)
    s2 = sqrt_cut(x, P, cd_tight)
    assert dist(s1, s2) <= 1e-10


def test_sqrt_cut_rejects_spectrum_near_cut() -> None:
    x = M2.wrap(np.diag([-1.0, 4.0]).astype(complex))
    P = PolygonalArc((0j,), -1 + 0j)
    poly = build_gamma_pair(P, 0.2, 4.0)
    cd = ContourData(poly, eps=0.2, branch="cut", cut=P)
    with pytest.raises(SpectrumMeetsCut):
        sqrt_cut(x, P, cd)


def test_sqrt_cut_detects_loop_crossing_the_cut() -> None:
    x = M1.wrap(np.array([[-1.0 + 0j]]))
    P = PolygonalArc((0j,), 1 + 0j)  # cut along the positive axis
    crossing = ContourData(
        circle_polygon(-1 + 0j, 1.2), eps=0.2, branch="cut", cut=P
    )
    with pytest.raises(DegenerateGeometry):
        sqrt_cut(x, P, crossing)


def test_quadrature_gives_up_on_hugging_pole() -> None:
    a = M1.wrap(np.array([[0.5 - 1e-10 + 0j]]))
    cd = ContourData(circle_polygon(0j, 0.5), eps=1e-12)
    with pytest.raises(QuadratureNotConverged):
        contour_apply(lambda z: np.ones_like(z), a, cd)


def test_sqrt_near_one_scalar_values() -> None:
    w0 = sqrt_near_one(M1.zero())
    assert w0.norm() <= 1e-12
    y = M1.wrap(np.array([[0.1 + 0j]]))
    w = sqrt_near_one(y).payload[0, 0]
    assert abs(w - half_shift_root(0.1)) <= 1e-12
    assert abs(w * w + w + 0.1 / 4) <= 1e-10


def test_sqrt_near_one_solves_quarter_equation_on_nilpotents() -> None:
    base = MatrixAlgebra(3)
    dual = DualAlgebra(base)
    rng = np.random.default_rng(23)
    for _ in range(10):
        y = dual.from_parts(base.zero(), base.random_element(rng))
        w = sqrt_near_one(y)
        assert (w * w + w + 0.25 * y).norm() <= 1e-9
        assert dual.base_part(w).norm() <= 1e-12  # stays in the kernel


def test_sqrt_near_one_matches_direct_branch() -> None:
    rng = np.random.default_rng(29)
    alg = MatrixAlgebra(4)
    for _ in range(10):
        mat = random_split_spectrum_matrix(rng, 4, radius=0.3)
        y = alg.wrap(mat - np.diag(np.diag(mat)) * 0)  # spectrum near {0,1}: too big
        small = alg.wrap(0.3 * (mat - eigenprojection_near(mat, 1.0, 0.4) @ mat))
        rep = small.spectrum()
        if rep.radius >= 1 / 3:
            continue
        w = sqrt_near_one(small)
        direct = 0.5 * (-np.eye(4) + principal_sqrt(np.eye(4) - small.payload))
        assert np.max(np.abs(w.payload - direct)) <= 1e-8


def test_sqrt_near_one_rejects_large_spectrum() -> None:
    y = M1.wrap(np.array([[0.4 + 0j]]))
    with pytest.raises(SpectrumTooLarge):
        sqrt_near_one(y)
