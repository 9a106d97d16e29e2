"""Planar contour geometry: escape arcs, Jordan polygons, winding numbers.

Everything here is exact-ish plane geometry with complex numbers; no
quadrature happens in this module.  Polygons are stored as open vertex
loops (closure is implicit) and normalised to counterclockwise
orientation, so a point strictly inside always has winding number +1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateGeometry,
    ParameterError,
    SpectrumContainsZero,
    UnsupportedStrategy,
)

__all__ = [
    "PolygonalArc",
    "JordanPolygon",
    "circle_polygon",
    "square_polygon",
    "build_escape_arc",
    "build_gamma_pair",
]


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    """Distance from ``z`` to the closed segment ``[a, b]``."""
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(z - a)
    t = ((z - a).real * d.real + (z - a).imag * d.imag) / L2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def _ray_distance(z: complex, origin: complex, direction: complex) -> float:
    """Distance from ``z`` to the ray ``origin + t*direction, t >= 0``."""
    u = direction / abs(direction)
    t = (z - origin).real * u.real + (z - origin).imag * u.imag
    t = max(0.0, t)
    return abs(z - (origin + t * u))


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def _segments_cross(a: complex, b: complex, c: complex, d: complex) -> bool:
    """Proper intersection test for closed segments, tolerant at endpoints.

    Cross products scale like coordinate^2, so sign decisions use a
    relative tolerance; rotated axis-aligned templates otherwise turn
    exact zeros into 1e-16 noise with arbitrary signs.  Segments that
    are collinear within that noise cross only if their shadows on the
    common line genuinely overlap.
    """
    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
    tol = 1e-12 * scale * scale
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)

    def sgn(v: float) -> int:
        if abs(v) <= tol:
            return 0
        return 1 if v > 0 else -1

    s1, s2, s3, s4 = sgn(d1), sgn(d2), sgn(d3), sgn(d4)
    if s1 * s2 < 0 and s3 * s4 < 0:
        return True
    if s1 == s2 == s3 == s4 == 0:
        den = abs(b - a) ** 2
        if den == 0.0:
            return False
        t1 = ((c - a).real * (b - a).real + (c - a).imag * (b - a).imag) / den
        t2 = ((d - a).real * (b - a).real + (d - a).imag * (b - a).imag) / den
        lo, hi = min(t1, t2), max(t1, t2)
        return hi > 1e-9 and lo < 1.0 - 1e-9
    return False


@dataclass(frozen=True)
class PolygonalArc:
    """Simple polygonal arc from its first vertex out to infinity.

    The arc consists of the segments between consecutive ``vertices``
    followed by a half-line from the last vertex in ``ray_direction``.
    The lifting constructions only ever need the degenerate case of a
    single vertex at the origin, i.e. a plain ray.
    """

    vertices: tuple[complex, ...]
    ray_direction: complex

    def __post_init__(self) -> None:
        verts = tuple(complex(v) for v in self.vertices)
        if not verts:
            raise ParameterError("arc needs at least one vertex")
        for u, v in zip(verts, verts[1:]):
            if u == v:
                raise ParameterError("consecutive arc vertices must be distinct")
        d = complex(self.ray_direction)
        if abs(d) == 0.0:
            raise ParameterError("ray direction must be nonzero")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "ray_direction", d / abs(d))
        if not self._is_simple():
            raise ParameterError("arc is not simple")

    def _is_simple(self) -> bool:
        segs = list(zip(self.vertices, self.vertices[1:]))
        far = self.vertices[-1] + self.ray_direction * (
            10.0 + 10.0 * max(abs(v) for v in self.vertices)
        )
        segs.append((self.vertices[-1], far))
        for i in range(len(segs)):
            for j in range(i + 2, len(segs)):
                if _segments_cross(*segs[i], *segs[j]):
                    return False
        return True

    @property
    def is_ray(self) -> bool:
        return len(self.vertices) == 1

    @property
    def angle(self) -> float:
        """Angle of the terminal ray in (-pi, pi]."""
        return cmath.phase(self.ray_direction)

    def distance_to_point(self, z: complex) -> float:
        best = _ray_distance(z, self.vertices[-1], self.ray_direction)
        for u, v in zip(self.vertices, self.vertices[1:]):
            best = min(best, _segment_distance(z, u, v))
        return best

    def distance_to_points(self, pts: Iterable[complex]) -> float:
        ds = [self.distance_to_point(z) for z in pts]
        return min(ds) if ds else math.inf

    def describe(self) -> dict:
        return {
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "ray_direction": [self.ray_direction.real, self.ray_direction.imag],
        }


@dataclass(frozen=True)
class JordanPolygon:
    """Simple closed polygon, normalised to counterclockwise orientation."""

    vertices: tuple[complex, ...]

    def __post_init__(self) -> None:
        verts = tuple(complex(v) for v in self.vertices)
        if len(verts) < 3:
            raise ParameterError("polygon needs at least three vertices")
        if verts[0] == verts[-1]:
            verts = verts[:-1]
        for u, v in zip(verts, verts[1:] + verts[:1]):
            if u == v:
                raise ParameterError("consecutive polygon vertices must be distinct")
        if _signed_area(verts) < 0:
            verts = verts[::-1]
        object.__setattr__(self, "vertices", verts)
        if not self._is_simple():
            raise ParameterError("polygon is not simple")

    def _is_simple(self) -> bool:
        n = len(self.vertices)
        segs = [
            (self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)
        ]
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # closing edge is adjacent to the first
                if _segments_cross(*segs[i], *segs[j]):
                    return False
        return True

    def edges(self) -> list[tuple[complex, complex]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @property
    def signed_area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def perimeter(self) -> float:
        return sum(abs(b - a) for a, b in self.edges())

    def winding_number(self, z: complex) -> int:
        """Integer winding number of the (counterclockwise) loop about z."""
        wn = 0
        for a, b in self.edges():
            if a.imag <= z.imag:
                if b.imag > z.imag and _cross(a, b, z) > 0:
                    wn += 1
            else:
                if b.imag <= z.imag and _cross(a, b, z) < 0:
                    wn -= 1
        return wn

    def distance_to_point(self, z: complex) -> float:
        return min(_segment_distance(z, a, b) for a, b in self.edges())

    def distance_to_points(self, pts: Iterable[complex]) -> float:
        ds = [self.distance_to_point(z) for z in pts]
        return min(ds) if ds else math.inf

    def encloses(self, pts: Iterable[complex], margin: float = 0.0) -> bool:
        for z in pts:
            if self.winding_number(z) != 1:
                return False
            if margin > 0.0 and self.distance_to_point(z) < margin:
                return False
        return True

    def mirror_symmetric(self, tol: float = 1e-12) -> bool:
        """True when the vertex set is invariant under complex conjugation."""
        pts = np.asarray(self.vertices)
        for v in pts:
            if np.min(np.abs(pts - np.conj(v))) > tol:
                return False
        return True

    def describe(self) -> dict:
        return {"vertices": [[v.real, v.imag] for v in self.vertices]}


def _signed_area(verts: Sequence[complex]) -> float:
    s = 0.0
    n = len(verts)
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        s += a.real * b.imag - b.real * a.imag
    return 0.5 * s


def circle_polygon(center: complex, radius: float, n: int = 64) -> JordanPolygon:
    """Counterclockwise regular n-gon inscribed in the given circle."""
    if radius <= 0:
        raise ParameterError("circle radius must be positive")
    if n < 8:
        raise ParameterError("circle approximation needs at least 8 vertices")
    verts = tuple(
        complex(center) + radius * cmath.exp(2j * math.pi * k / n) for k in range(n)
    )
    return JordanPolygon(verts)


def square_polygon(center: complex, half_side: float) -> JordanPolygon:
    if half_side <= 0:
        raise ParameterError("square half side must be positive")
    c = complex(center)
    h = half_side
    return JordanPolygon(
        (c + h + 1j * h, c - h + 1j * h, c - h - 1j * h, c + h - 1j * h)
    )


# ---------------------------------------------------------------------------
# escape arc


def _angular_gap(phi: float, beta: float) -> float:
    d = (phi - beta) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def _ray_objective(phi: float, pts: np.ndarray, angles: np.ndarray) -> tuple[float, float]:
    ang = float(np.min(np.minimum((phi - angles) % (2 * np.pi),
                                  (angles - phi) % (2 * np.pi))))
    u = cmath.exp(1j * phi)
    t = np.maximum(0.0, pts.real * u.real + pts.imag * u.imag)
    eucl = float(np.min(np.abs(pts - t * u)))
    return ang, eucl


def build_escape_arc(spec) -> PolygonalArc:
    """Ray from the origin to infinity staying clear of a finite spectrum.

    The direction maximises the minimum angular distance to the spectrum
    directions, with euclidean clearance as tie-breaker and the lowest
    angle in [0, 2pi) breaking exact ties.  A 360-direction grid search is
    refined by ternary search around the best grid direction.
    """
    pts = np.asarray(getattr(spec, "points", spec), dtype=complex)
    if pts.size == 0:
        return PolygonalArc((0j,), -1.0 + 0j)
    if np.min(np.abs(pts)) < 1e-13:
        raise SpectrumContainsZero("spectrum touches the origin; no escape ray exists")
    angles = np.angle(pts)

    best_phi = 0.0
    best_obj = (-1.0, -1.0)
    for j in range(360):
        phi = 2.0 * math.pi * j / 360.0
        obj = _ray_objective(phi, pts, angles)
        if obj[0] > best_obj[0] + 1e-12 or (
            abs(obj[0] - best_obj[0]) <= 1e-12 and obj[1] > best_obj[1] + 1e-12
        ):
            best_obj = obj
            best_phi = phi

    lo = best_phi - 2.0 * math.pi / 360.0
    hi = best_phi + 2.0 * math.pi / 360.0
    for _ in range(200):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if _ray_objective(m1, pts, angles) < _ray_objective(m2, pts, angles):
            lo = m1
        else:
            hi = m2
    phi = (0.5 * (lo + hi)) % (2.0 * math.pi)
    refined = _ray_objective(phi, pts, angles)
    if refined >= best_obj:
        best_phi, best_obj = phi, refined

    if best_obj[1] <= 0.0:
        raise DegenerateGeometry("no ray with positive clearance found")
    return PolygonalArc((0j,), cmath.exp(1j * best_phi))


# ---------------------------------------------------------------------------
# gamma polygon around an escape ray


def build_gamma_pair(P: PolygonalArc, eps: float, rho: float) -> JordanPolygon:
    """Closed integration loop around a cut ray: a tube hugging the ray
    joined to an outer square.

    In the frame where the ray points along the positive real axis the
    loop is (R,-e)(0,-e)(-e,0)(0,e)(R,e)(R,R)(-R,R)(-R,-R)(R,-R) with
    R = max(rho + 2*eps, 1/eps); the ray leaves through the gap between
    (R,-e) and (R,e), so the origin and the whole ray stay outside the
    enclosed region while everything else of modulus <= rho + eps and
    clearance > eps from the ray is inside.
    """
    if eps <= 0:
        raise ParameterError("tube half-width must be positive")
    if eps >= rho:
        raise DegenerateGeometry(
            f"tube half-width {eps} is not smaller than the spectral bound {rho}"
        )
    if not P.is_ray or P.vertices[0] != 0:
        raise UnsupportedStrategy("tube construction is implemented for rays from 0 only")
    R = max(rho + 2.0 * eps, 1.0 / eps)
    e = eps
    frame = (
        complex(R, -e),
        complex(0, -e),
        complex(-e, 0),
        complex(0, e),
        complex(R, e),
        complex(R, R),
        complex(-R, R),
        complex(-R, -R),
        complex(R, -R),
    )
    u = P.ray_direction
    return JordanPolygon(tuple(u * v for v in frame))
