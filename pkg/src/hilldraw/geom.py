"""Robust spherical primitives: unit vectors, orientation signs, geodesic arcs,
half-circles, and the crossing predicates everything else is built on.

All predicates are pure functions of immutable inputs and work in plain
floating point with explicit sign margins.  A configuration that puts any
decision value inside the dead zone ``ToleranceConfig.sign`` is refused with
:class:`DegenerateConfigurationError`; callers are expected to perturb or
resample rather than tie-break silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Vec3 = np.ndarray


class DegenerateConfigurationError(Exception):
    """A predicate could not decide: the configuration is inside a dead zone."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric margins used by all geometric predicates.

    norm: slack on x^2 + y^2 + z^2 = 1 for unit vectors.
    perp: slack on p . m = 0 for half-circle midpoint witnesses.
    general_position: minimum |det| for a vertex triple to count as
        non-coplanar with the sphere's center.
    sign: dead zone of the sign predicates; values with |value| <= sign
        are refused instead of being tie-broken.
    """

    norm: float = 1e-12
    perp: float = 1e-12
    general_position: float = 1e-9
    sign: float = 1e-12

    def __post_init__(self):
        for name in ("norm", "perp", "general_position", "sign"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"tolerance {name!r} must be strictly positive")
        if self.sign >= self.general_position:
            raise ValueError("sign dead zone must be smaller than the "
                             "general-position margin")

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "perp": self.perp,
            "general_position": self.general_position,
            "sign": self.sign,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ToleranceConfig":
        return cls(**{k: float(d[k]) for k in
                      ("norm", "perp", "general_position", "sign")})


DEFAULT_TOL = ToleranceConfig()


def vec(x, y, z) -> Vec3:
    return np.array([x, y, z], dtype=float)


def unit(v) -> Vec3:
    """Normalized copy of v; raises on (near-)zero input."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-300:
        raise ValueError("cannot normalize a zero vector")
    return v / n


def is_unit(v, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    v = np.asarray(v, dtype=float)
    return abs(float(v @ v) - 1.0) <= tol.norm


def require_unit(v, tol: ToleranceConfig = DEFAULT_TOL) -> Vec3:
    v = np.asarray(v, dtype=float)
    if not is_unit(v, tol):
        raise ValueError(f"vector {v.tolist()} is not unit length within "
                         f"tolerance {tol.norm}")
    return v


def antipode(p) -> Vec3:
    """The diametrically opposite point -p."""
    return -np.asarray(p, dtype=float)


def angular_distance(a, b) -> float:
    """Angle in radians between two unit vectors (stable near 0 and pi)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), float(a @ b))


def rotate(v, axis, angle: float) -> Vec3:
    """Rotate v about a unit axis by angle (right-hand rule), Rodrigues form."""
    v = np.asarray(v, dtype=float)
    a = unit(axis)
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(a, v) * s + a * float(a @ v) * (1.0 - c)


def orient(p, q, r, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Sign of det[p q r]: +1, -1, or 0 when |det| falls in the dead zone.

    Zero means the three directions are coplanar with the center within
    tolerance, i.e. they lie on a common great circle.
    """
    d = float(np.linalg.det(np.stack([np.asarray(p, float),
                                      np.asarray(q, float),
                                      np.asarray(r, float)])))
    if abs(d) <= tol.sign:
        return 0
    return 1 if d > 0.0 else -1


def triple_det(p, q, r) -> float:
    return float(np.linalg.det(np.stack([np.asarray(p, float),
                                         np.asarray(q, float),
                                         np.asarray(r, float)])))


def is_general_position(points, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff no three of the points lie on a common great circle.

    Every unordered triple must satisfy |det| > tol.general_position.
    Raises ValueError for fewer than 3 points.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("expected an (n, 3) array of points")
    n = len(pts)
    if n < 3:
        raise ValueError("general position needs at least 3 points")
    # vectorized over the third index for each (i, j)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            cr = np.cross(pts[i], pts[j])
            dets = pts[j + 1:] @ cr
            if np.any(np.abs(dets) <= tol.general_position):
                return False
    return True


class GeodesicArc:
    """The shorter great-circle segment between two non-antipodal points.

    Interior membership uses the wedge form: x is strictly inside the arc
    (a, b) iff x = alpha*a + beta*b with alpha, beta > 0, tested through the
    two triple-product signs x . (b x n) and x . (n x a) with n = a x b.
    """

    __slots__ = ("a", "b", "normal", "wedge_u", "wedge_v")

    def __init__(self, a, b, tol: ToleranceConfig = DEFAULT_TOL):
        a = require_unit(a, tol)
        b = require_unit(b, tol)
        n = np.cross(a, b)
        nn = float(np.linalg.norm(n))
        if nn <= tol.general_position:
            raise DegenerateConfigurationError(
                "arc endpoints are equal or antipodal within tolerance")
        self.a = a
        self.b = b
        self.normal = n / nn
        self.wedge_u = np.cross(b, self.normal)
        self.wedge_v = np.cross(self.normal, a)

    def length(self) -> float:
        return angular_distance(self.a, self.b)

    def point_at(self, t: float) -> Vec3:
        """Point at fraction t in [0, 1] from a to b along the arc."""
        ang = self.length() * t
        # slerp via the in-plane orthonormal companion of a
        w = unit(self.b - float(self.a @ self.b) * self.a)
        return math.cos(ang) * self.a + math.sin(ang) * w

    def contains(self, x, margin: float) -> bool:
        """True iff x lies on the open arc: on the great circle within
        margin and strictly inside the wedge."""
        x = np.asarray(x, dtype=float)
        if abs(float(x @ self.normal)) > margin:
            return False
        return float(x @ self.wedge_u) > 0.0 and float(x @ self.wedge_v) > 0.0

    def reversed(self) -> "GeodesicArc":
        return GeodesicArc(self.b, self.a)

    def antipodal_image(self) -> "GeodesicArc":
        return GeodesicArc(-self.a, -self.b)

    def __repr__(self):
        return f"GeodesicArc(a={self.a.tolist()}, b={self.b.tolist()})"


class HalfCircle:
    """Half of a great circle joining the antipodal pair p, -p.

    The curve is {cos(t) p + sin(t) m : t in [0, pi]} where m, the midpoint
    witness, is orthonormalized against p on construction.  A point x of the
    great circle belongs to the half iff x . m >= 0.
    """

    __slots__ = ("p", "m", "normal")

    def __init__(self, p, m, tol: ToleranceConfig = DEFAULT_TOL):
        p = require_unit(p, tol)
        m = np.asarray(m, dtype=float)
        if not is_unit(m, tol):
            m = unit(m)
        d = float(p @ m)
        if abs(d) > tol.perp:
            m = m - d * p
            nm = float(np.linalg.norm(m))
            if nm <= tol.general_position:
                raise DegenerateConfigurationError(
                    "midpoint witness is parallel to the endpoint")
            m = m / nm
        self.p = p
        self.m = m
        self.normal = np.cross(p, m)

    def point_at(self, t: float) -> Vec3:
        """Point at parameter t in [0, 1] from p to -p through m."""
        ang = math.pi * t
        return math.cos(ang) * self.p + math.sin(ang) * self.m

    def contains(self, x, margin: float) -> bool:
        x = np.asarray(x, dtype=float)
        if abs(float(x @ self.normal)) > margin:
            return False
        return float(x @ self.m) >= 0.0

    def complement(self) -> "HalfCircle":
        """The other half of the same great circle."""
        return HalfCircle(self.p, -self.m)

    def distance_to(self, x) -> float:
        """Angular distance from x to the closed half-circle curve."""
        x = np.asarray(x, dtype=float)
        s = float(x @ self.normal)
        s = max(-1.0, min(1.0, s))
        proj = x - s * self.normal
        npj = float(np.linalg.norm(proj))
        if npj < 1e-300:
            return math.pi / 2.0
        proj /= npj
        if float(proj @ self.m) >= 0.0:
            return abs(math.asin(s))
        return min(angular_distance(x, self.p), angular_distance(x, -self.p))

    def __repr__(self):
        return f"HalfCircle(p={self.p.tolist()}, m={self.m.tolist()})"


Curve = GeodesicArc | HalfCircle


def curve_frame(c: Curve):
    """(unit normal, wedge_u, wedge_v) of a curve.

    The interior test `u . x > 0 and v . x > 0` describes the open arc for
    geodesic arcs and, with u = v = m, the half `m . x > 0` for half-circles,
    which lets one predicate serve every curve pair.
    """
    if isinstance(c, GeodesicArc):
        return c.normal, c.wedge_u, c.wedge_v
    return c.normal, c.m, c.m


def _frames_cross(f1, f2, tol: ToleranceConfig) -> bool:
    n1, u1, v1 = f1
    n2, u2, v2 = f2
    x = np.cross(n1, n2)
    nx = float(np.linalg.norm(x))
    if nx <= tol.sign:
        raise DegenerateConfigurationError(
            "curves lie on the same great circle within tolerance")
    x /= nx
    dots = (float(u1 @ x), float(v1 @ x), float(u2 @ x), float(v2 @ x))
    if min(abs(d) for d in dots) <= tol.sign:
        raise DegenerateConfigurationError(
            "intersection direction inside the sign dead zone")
    return all(d > 0.0 for d in dots) or all(d < 0.0 for d in dots)


def arcs_cross(e1: GeodesicArc, e2: GeodesicArc,
               tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Do two open geodesic arcs share an interior point?

    The great circles meet in the directions +-x = +-(n1 x n2); the arcs
    cross iff x or -x is strictly interior to both wedges.  Arcs on the same
    great circle (or a decision inside the dead zone) raise
    DegenerateConfigurationError; the caller must perturb or reject.
    """
    return _frames_cross(curve_frame(e1), curve_frame(e2), tol)


def half_circle_crosses_arc(h: HalfCircle, e: GeodesicArc,
                            tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Does the half-circle meet the open arc?  Same +-x contract, with
    half membership x . m >= 0 on the half-circle's great circle."""
    return _frames_cross(curve_frame(h), curve_frame(e), tol)


def half_circles_cross(h1: HalfCircle, h2: HalfCircle,
                       tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Do two half-circles with disjoint endpoint pairs cross?"""
    return _frames_cross(curve_frame(h1), curve_frame(h2), tol)
