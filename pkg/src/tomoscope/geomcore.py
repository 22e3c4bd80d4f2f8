"""Points, lines, planes, frames, reflections and starline orbits.

Everything here is plain numpy on small vectors.  Lines and planes are
immutable dataclasses whose constructors normalize direction vectors.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from .errors import DegenerateInputError

UNIT_TOL = 1e-12


def unit(v):
    """Return ``v / |v|`` as a float array; raises on (near) zero vectors."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n < 1e-300:
        raise DegenerateInputError(f"cannot normalize vector {v!r}")
    u = v / n
    # one Newton step keeps |u| within a couple of ulps of 1
    return u / np.linalg.norm(u)


@dataclass(frozen=True, eq=False)
class LineD:
    """Affine line ``point + t * dir`` in R^d."""

    point: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float).copy())
        object.__setattr__(self, "dir", unit(self.dir))
        if self.point.shape != self.dir.shape:
            raise DegenerateInputError("line anchor and direction differ in dimension")

    @classmethod
    def through(cls, a, b):
        a = np.asarray(a, dtype=float)
        return cls(a, np.asarray(b, dtype=float) - a)

    @property
    def dim(self):
        return self.point.shape[0]

    def at(self, t):
        return self.point + np.multiply.outer(t, self.dir)

    def foot(self, x):
        """Orthogonal projection of ``x`` onto the line."""
        x = np.asarray(x, dtype=float)
        return self.point + ((x - self.point) @ self.dir)[..., None] * self.dir

    def distance(self, x):
        x = np.asarray(x, dtype=float)
        return np.linalg.norm(x - self.foot(x), axis=-1)

    def coincides(self, other, tol=1e-9):
        parallel = abs(abs(float(self.dir @ other.dir)) - 1.0) <= tol
        return parallel and float(self.distance(other.point)) <= tol

    def __eq__(self, other):
        if not isinstance(other, LineD):
            return NotImplemented
        return self.coincides(other, 1e-12)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PlaneD:
    """Hyperplane ``{x : x . normal = offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", unit(self.normal))
        off = float(self.offset)
        if not math.isfinite(off):
            raise DegenerateInputError("plane offset must be finite")
        object.__setattr__(self, "offset", off)

    @classmethod
    def through(cls, point, normal):
        n = unit(normal)
        return cls(n, float(np.asarray(point, dtype=float) @ n))

    @property
    def dim(self):
        return self.normal.shape[0]

    def signed_distance(self, x):
        return np.asarray(x, dtype=float) @ self.normal - self.offset

    def project(self, x):
        x = np.asarray(x, dtype=float)
        return x - self.signed_distance(x)[..., None] * self.normal

    def meet_line(self, line, tol=1e-12):
        """Intersection point with ``line``, or ``None`` when parallel."""
        denom = float(line.dir @ self.normal)
        if abs(denom) <= tol:
            return None
        t = (self.offset - float(line.point @ self.normal)) / denom
        return line.point + t * line.dir


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal chart of a hyperplane: ``x = origin + basis.T @ coords``.

    In R^3 this is a 2-frame ``(e1, e2)`` with ``e1 x e2 = normal``.
    """

    origin: np.ndarray
    basis: np.ndarray  # shape (d-1, d)
    normal: np.ndarray

    @property
    def e1(self):
        return self.basis[0]

    @property
    def e2(self):
        return self.basis[1]

    def to_world(self, coords):
        return self.origin + np.asarray(coords, dtype=float) @ self.basis

    def to_local(self, x):
        return (np.asarray(x, dtype=float) - self.origin) @ self.basis.T

    def directions(self, local_dirs):
        return np.asarray(local_dirs, dtype=float) @ self.basis


Frame2 = Frame


def plane_frame(plane):
    """Deterministic frame of a plane (d=3) or hyperplane (d=4).

    The origin is the foot of the perpendicular from the global origin.  The
    first axis is the projection of the lowest-index standard basis vector
    that is not (nearly) normal to the plane; the remaining axes complete a
    right-handed frame.
    """
    n = plane.normal
    d = n.shape[0]
    origin = plane.offset * n
    eye = np.eye(d)
    k = next(k for k in range(d) if np.linalg.norm(eye[k] - (eye[k] @ n) * n) > 1e-6)
    basis = [_orthogonalize(eye[k], [n])]
    if d == 3:
        basis.append(np.cross(n, basis[0]))
    while len(basis) < d - 1:
        # greedy completion: the standard vector with the largest residual
        cands = [_orthogonalize(e, [n, *basis], normalize=False) for e in eye]
        best = max(cands, key=np.linalg.norm)
        basis.append(best / np.linalg.norm(best))
    basis = np.array(basis)
    if d != 3 and np.linalg.det(np.vstack([basis, n])) < 0:
        basis[-1] = -basis[-1]
    return Frame(origin, basis, n.copy())


def _orthogonalize(v, against, normalize=True):
    """Two-pass Gram-Schmidt of ``v`` against orthonormal vectors."""
    for _ in range(2):
        for b in against:
            v = v - (v @ b) * b
    return v / np.linalg.norm(v) if normalize else v


def reflect_point_about_line(line, x):
    """Reflect ``x`` in the line: identity along it, negation across it."""
    x = np.asarray(x, dtype=float)
    p, d = line.point, line.dir
    w = x - p
    return p + 2.0 * (w @ d)[..., None] * d - w


def reflection_matrix_about_line(direction):
    d = unit(direction)
    return 2.0 * np.outer(d, d) - np.eye(d.shape[0])


def angle_mod_pi(a):
    return np.mod(a, math.pi)


def angular_distance_mod_pi(a, b):
    """Distance between undirected line angles."""
    d = np.mod(np.asarray(a) - np.asarray(b), math.pi)
    return np.minimum(d, math.pi - d)


@dataclass(frozen=True)
class StarlineState:
    base_angle: float
    angles: tuple
    closed: bool
    period: int = None
    max_gap: float = math.pi
    iterations: int = 0


def _max_gap(angles):
    a = np.sort(np.asarray(angles, dtype=float))
    gaps = np.diff(np.concatenate([a, [a[0] + math.pi]]))
    return float(gaps.max())


def starline_generate(theta1, theta2, max_iter=500, closure_tol=1e-9):
    """Orbit of two concurrent lines under ``T_k = R_{T_{k-1}}(T_{k-2})``.

    Lines are undirected, so angles live in ``[0, pi)`` and reflecting the
    line at angle ``a`` about the line at angle ``b`` gives ``2b - a``.
    """
    if max_iter < 2:
        raise DegenerateInputError("max_iter must be at least 2")
    a1, a2 = float(angle_mod_pi(theta1)), float(angle_mod_pi(theta2))
    if angular_distance_mod_pi(a1, a2) <= closure_tol:
        raise DegenerateInputError("starline needs two distinct lines")
    orbit = [a1, a2]
    prev, cur = a1, a2
    closed = False
    k = 2
    while k < max_iter:
        nxt = float(angle_mod_pi(2.0 * cur - prev))
        k += 1
        if np.min(angular_distance_mod_pi(nxt, np.array(orbit))) <= closure_tol:
            closed = True
            break
        orbit.append(nxt)
        prev, cur = cur, nxt
    angles = tuple(sorted(orbit))
    return StarlineState(
        base_angle=a1,
        angles=angles,
        closed=closed,
        period=len(angles) if closed else None,
        max_gap=_max_gap(angles),
        iterations=k,
    )


@dataclass(frozen=True)
class StarlineClass:
    dense: bool
    q: int = None
    p: int = None

    def __str__(self):
        return "Dense" if self.dense else f"Finite({self.q})"


def classify_starline_angle(delta, max_denominator=10_000, rational_tol=1e-12):
    """Finite(q) when ``delta`` is within ``rational_tol`` of ``p*pi/q``, else Dense."""
    x = float(delta) / math.pi
    frac = Fraction(x).limit_denominator(max_denominator)
    if abs(x - float(frac)) * math.pi <= rational_tol and frac.numerator != 0:
        return StarlineClass(dense=False, q=frac.denominator, p=frac.numerator)
    return StarlineClass(dense=True)
