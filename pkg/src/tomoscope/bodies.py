"""Convex bodies in R^3 / R^4 represented by their support functions.

All support functions are evaluated on arrays of direction vectors of shape
``(..., dim)`` and are positively homogeneous, so callers may pass
unnormalized directions.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidBodySpecError, NonUniqueDiameterError
from .geomcore import LineD, unit
from .numerics import golden_max, sphere_points, sphere_quadrature

PROFILE_GRID = 4096


def _as_dirs(u, dim):
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != dim:
        raise ValueError(f"expected {dim}-vectors, got shape {u.shape}")
    return u


def _lexmin_disc_point(center, normal, radius):
    """Lexicographically smallest point of a flat disc in R^d."""
    if radius <= 0:
        return center.copy()
    d = center.shape[0]
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        proj = e - (e @ normal) * normal
        n = np.linalg.norm(proj)
        if n > 1e-12:
            return center - radius * proj / n
    return center.copy()


class ConvexBody:
    """Base class: a convex body known through its support function."""

    kind = "Composite"

    def __init__(self, dim, circumradius_bound, inradius_bound, label=None):
        if dim not in (2, 3, 4):
            raise InvalidBodySpecError(f"unsupported dimension {dim}")
        self.dim = dim
        self.circumradius_bound = float(circumradius_bound)
        self.inradius_bound = float(inradius_bound)
        self.label = label or self.kind

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} dim={self.dim}>"

    @property
    def width_min(self):
        return 1e-4 * self.circumradius_bound

    def support(self, u):
        raise NotImplementedError

    def width(self, u):
        u = np.asarray(u, dtype=float)
        return self.support(u) + self.support(-u)

    def boundary_point(self, u):
        """Supporting point in direction ``u`` (gradient of the support function)."""
        return self._gradient_boundary_point(u)

    def _gradient_boundary_point(self, u, step=1e-6):
        u = _as_dirs(u, self.dim)
        flat = u.reshape(-1, self.dim)
        flat = flat / np.linalg.norm(flat, axis=1, keepdims=True)
        out = np.empty_like(flat)
        for k in range(self.dim):
            e = np.zeros(self.dim)
            e[k] = step
            out[:, k] = (self.support(flat + e) - self.support(flat - e)) / (2 * step)
        return out.reshape(u.shape)

    def contains(self, x):
        raise NotImplementedError(f"{self.label} has no membership oracle")

    def ray_exit(self, x, u, tol=1e-13):
        """Largest ``t >= 0`` with ``x + t u`` in the body (bisection on membership)."""
        x = np.asarray(x, dtype=float)
        u = _as_dirs(u, self.dim)
        flat = u.reshape(-1, self.dim)
        lo = np.zeros(len(flat))
        hi = np.full(len(flat), 2.0 * self.circumradius_bound + 2.0 * np.linalg.norm(x))
        n = int(math.ceil(math.log2(max(hi[0], 1e-300) / tol))) + 1
        for _ in range(n):
            mid = 0.5 * (lo + hi)
            inside = self.contains(x + mid[:, None] * flat)
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        return (0.5 * (lo + hi)).reshape(u.shape[:-1])

    def is_interior(self, x, margin=None):
        """Sampled interior test: ``h(u) - x.u > margin`` for many directions."""
        margin = self.width_min if margin is None else margin
        dirs = sphere_points(2000 if self.dim == 3 else 4000, self.dim)
        return bool(np.min(self.support(dirs) - dirs @ np.asarray(x, float)) > margin)

    def interior_margin(self, x):
        dirs = sphere_points(2000 if self.dim == 3 else 4000, self.dim)
        return float(np.min(self.support(dirs) - dirs @ np.asarray(x, float)))


class Ellipsoid(ConvexBody):
    kind = "Ellipsoid"

    def __init__(self, semi_axes, center=None, orientation=None, label=None):
        a = np.asarray(semi_axes, dtype=float)
        if a.ndim != 1 or len(a) not in (3, 4) or np.any(~np.isfinite(a)) or np.any(a <= 0):
            raise InvalidBodySpecError(f"semi-axes must be 3 or 4 positive numbers, got {semi_axes!r}")
        dim = len(a)
        c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
        if c.shape != (dim,):
            raise InvalidBodySpecError("center dimension mismatch")
        R = np.eye(dim) if orientation is None else np.asarray(orientation, dtype=float)
        if R.shape != (dim, dim) or not np.allclose(R @ R.T, np.eye(dim), atol=1e-9):
            raise InvalidBodySpecError("orientation must be an orthogonal matrix")
        self.semi_axes = a
        self.center = c
        self.orientation = R
        self.shape_matrix = R @ np.diag(a**2) @ R.T
        self._inv_shape = R @ np.diag(a**-2.0) @ R.T
        super().__init__(dim, np.linalg.norm(c) + a.max(), a.min(), label)

    def support(self, u):
        u = _as_dirs(u, self.dim)
        q = np.sum((u @ self.shape_matrix) * u, axis=-1)
        return u @ self.center + np.sqrt(np.maximum(q, 0.0))

    def boundary_point(self, u):
        u = _as_dirs(u, self.dim)
        mu = u @ self.shape_matrix
        q = np.sqrt(np.einsum("...i,...i->...", mu, u))
        return self.center + mu / q[..., None]

    def contains(self, x):
        y = np.asarray(x, dtype=float) - self.center
        return np.einsum("...i,ij,...j->...", y, self._inv_shape, y) <= 1.0

    def ray_exit(self, x, u, tol=None):
        u = _as_dirs(u, self.dim)
        y = np.asarray(x, dtype=float) - self.center
        A = self._inv_shape
        a = np.einsum("...i,ij,...j->...", u, A, u)
        b = u @ (A @ y)
        c = y @ A @ y - 1.0
        return (-b + np.sqrt(np.clip(b * b - a * c, 0.0, None))) / a


class Ball(Ellipsoid):
    kind = "Ball"

    def __init__(self, radius=1.0, center=None, dim=3, label=None):
        if not (np.isfinite(radius) and radius > 0):
            raise InvalidBodySpecError(f"radius must be positive, got {radius!r}")
        if center is not None:
            dim = len(center)
        self.radius = float(radius)
        super().__init__(np.full(dim, float(radius)), center, None, label)

    def support(self, u):
        u = _as_dirs(u, self.dim)
        return u @ self.center + self.radius * np.linalg.norm(u, axis=-1)


@dataclass(frozen=True)
class ProfileCurve:
    """Radius of a body of revolution as a function of height along its axis."""

    radius: object
    t_min: float
    t_max: float
    name: str = "profile"

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)) or self.t_max <= self.t_min:
            raise InvalidBodySpecError("profile needs t_min < t_max")
        t = np.linspace(self.t_min, self.t_max, 1000)
        r = np.asarray(self.radius(t), dtype=float)
        if r.shape != t.shape or np.any(~np.isfinite(r)) or np.any(r < -1e-12):
            raise InvalidBodySpecError("profile radius must be finite and nonnegative")
        if r.max() <= 0:
            raise InvalidBodySpecError("profile is empty (zero radius everywhere)")
        second = r[:-2] - 2 * r[1:-1] + r[2:]
        if np.any(second > 1e-9 * max(1.0, r.max())):
            raise InvalidBodySpecError("profile radius must be concave")

    def __call__(self, t):
        return np.clip(np.asarray(self.radius(t), dtype=float), 0.0, None)

    @classmethod
    def ellipse(cls, radius, half_height):
        """Meridian of an ellipsoid of revolution: r(t) = R sqrt(1 - (t/H)^2)."""
        R, H = float(radius), float(half_height)
        if R <= 0 or H <= 0:
            raise InvalidBodySpecError("ellipse profile needs positive radius and half-height")
        return cls(lambda t: R * np.sqrt(np.clip(1.0 - (np.asarray(t) / H) ** 2, 0.0, None)),
                   -H, H, f"ellipse({R:g},{H:g})")

    @classmethod
    def power(cls, radius, half_height, exponent):
        """r(t) = R (1 - |t/H|^k)^(1/k); k=2 is an ellipse, larger k is boxier."""
        R, H, k = float(radius), float(half_height), float(exponent)
        if R <= 0 or H <= 0 or k < 1:
            raise InvalidBodySpecError("power profile needs R, H > 0 and exponent >= 1")
        return cls(lambda t: R * np.clip(1.0 - np.abs(np.asarray(t) / H) ** k, 0.0, None) ** (1.0 / k),
                   -H, H, f"power({R:g},{H:g},{k:g})")

    @classmethod
    def table(cls, heights, radii):
        """Piecewise-linear profile through ``(heights[i], radii[i])``."""
        h = np.asarray(heights, dtype=float)
        r = np.asarray(radii, dtype=float)
        if h.ndim != 1 or h.shape != r.shape or len(h) < 2 or np.any(np.diff(h) <= 0):
            raise InvalidBodySpecError("table profile needs increasing heights and matching radii")
        return cls(lambda t: np.interp(t, h, r), float(h[0]), float(h[-1]), "table")


class Revolution(ConvexBody):
    """Body swept by rotating a concave profile about an axis line in R^3.

    The support is ``sup_t [t (u.axis) + r(t) |u_perp|]``: a precomputed
    4096-point profile grid brackets the maximizer, golden-section search
    refines it.
    """

    kind = "Revolution"

    def __init__(self, profile, axis=None, label=None):
        if axis is None:
            axis = LineD(np.zeros(3), np.array([0.0, 0.0, 1.0]))
        if axis.dim != 3:
            raise InvalidBodySpecError("revolution bodies live in R^3")
        self.profile = profile
        self.axis = axis
        t = np.linspace(profile.t_min, profile.t_max, PROFILE_GRID)
        r = profile(t)
        self._t, self._r = t, r
        # table of grid argmax indices as a function of the angle psi of (a, b)
        psi = np.linspace(0.0, math.pi, PROFILE_GRID + 1)
        vals = np.outer(np.cos(psi), t) + np.outer(np.sin(psi), r)
        self._psi = psi
        self._argmax = np.argmax(vals, axis=1)
        reach = math.sqrt(max(abs(profile.t_min), abs(profile.t_max)) ** 2 + r.max() ** 2)
        inner = float(np.max(np.minimum(r, np.minimum(t - t[0], t[-1] - t))))
        super().__init__(3, np.linalg.norm(axis.point) + reach, inner, label or f"revolution[{profile.name}]")

    def _split(self, u):
        a = u @ self.axis.dir
        perp = u - a[..., None] * self.axis.dir
        b = np.linalg.norm(perp, axis=-1)
        return a, b, perp

    def _argsup(self, a, b):
        """Height maximizing ``t a + r(t) b`` for arrays ``a``, ``b >= 0``."""
        psi = np.arctan2(b, a)
        k = np.clip(np.searchsorted(self._psi, psi) - 1, 0, PROFILE_GRID - 1)
        j1 = self._argmax[k]
        j2 = self._argmax[k + 1]
        lo_idx = np.clip(np.minimum(j1, j2) - 1, 0, PROFILE_GRID - 1)
        hi_idx = np.clip(np.maximum(j1, j2) + 1, 0, PROFILE_GRID - 1)
        lo, hi = self._t[lo_idx], self._t[hi_idx]
        scale = self.profile.t_max - self.profile.t_min
        # the value error is quadratic in the argmax error, so 1e-10 suffices
        f = lambda t: t * a + self.profile(t) * b
        t_star, val = golden_max(f, lo, hi, tol=1e-10 * scale)
        # near the poles the maximizer sits on a bracket end, which golden search only approaches
        for end in (lo, hi):
            f_end = f(end)
            better = f_end > val
            t_star = np.where(better, end, t_star)
            val = np.where(better, f_end, val)
        return t_star, val

    def support(self, u):
        u = _as_dirs(u, self.dim)
        shape = u.shape[:-1]
        flat = u.reshape(-1, 3)
        a, b, _ = self._split(flat)
        _, val = self._argsup(a, b)
        return (flat @ self.axis.point + val).reshape(shape)

    def boundary_point(self, u):
        u = _as_dirs(u, self.dim)
        shape = u.shape
        flat = u.reshape(-1, 3)
        a, b, perp = self._split(flat)
        t_star, _ = self._argsup(a, b)
        r_star = self.profile(t_star)
        out = np.empty_like(flat)
        for i in range(len(flat)):
            base = self.axis.point + t_star[i] * self.axis.dir
            if b[i] > 1e-12 * max(1.0, abs(a[i])):
                out[i] = base + r_star[i] * perp[i] / b[i]
            else:
                out[i] = _lexmin_disc_point(base, self.axis.dir, r_star[i])
        return out.reshape(shape)

    def contains(self, x):
        y = np.asarray(x, dtype=float) - self.axis.point
        s = y @ self.axis.dir
        rho = np.linalg.norm(y - s[..., None] * self.axis.dir, axis=-1)
        inside = (s >= self.profile.t_min) & (s <= self.profile.t_max)
        rs = self.profile(np.clip(s, self.profile.t_min, self.profile.t_max))
        return inside & (rho <= rs)


class DiscHull(ConvexBody):
    """Convex hull of the discs ``{z=0, x^2+y^2<=r1^2}`` and ``{y=0, x^2+z^2<=r2^2}``.

    Not strictly convex: its boundary contains segments and flat pieces.
    """

    kind = "DiscHull"

    def __init__(self, r1=1.0, r2=1.0, label=None):
        if not (r1 > 0 and r2 > 0):
            raise InvalidBodySpecError("disc radii must be positive")
        self.r1, self.r2 = float(r1), float(r2)
        self.center = np.zeros(3)
        inr = 1.0 / math.sqrt(2.0 / min(r1, r2) ** 2 + 1.0 / min(r1, r2) ** 2)
        super().__init__(3, max(r1, r2), inr, label or f"two_disc_hull({r1:g},{r2:g})")

    def _disc_supports(self, u):
        h1 = self.r1 * np.hypot(u[..., 0], u[..., 1])
        h2 = self.r2 * np.hypot(u[..., 0], u[..., 2])
        return h1, h2

    def support(self, u):
        u = _as_dirs(u, self.dim)
        h1, h2 = self._disc_supports(u)
        return np.maximum(h1, h2)

    def boundary_point(self, u):
        """Lexicographically smallest maximizer of ``x.u`` over the hull."""
        u = _as_dirs(u, self.dim)
        shape = u.shape
        flat = u.reshape(-1, 3)
        h1, h2 = self._disc_supports(flat)
        out = np.empty_like(flat)
        for i, v in enumerate(flat):
            cands = []
            tie = 1e-12 * max(1.0, abs(h1[i]), abs(h2[i]))
            if h1[i] >= h2[i] - tie:
                cands.append(self._disc_argmax(v, np.array([0.0, 0.0, 1.0]), self.r1, (0, 1)))
            if h2[i] >= h1[i] - tie:
                cands.append(self._disc_argmax(v, np.array([0.0, 1.0, 0.0]), self.r2, (0, 2)))
            out[i] = min(cands, key=lambda p: tuple(p))
        return out.reshape(shape)

    @staticmethod
    def _disc_argmax(v, normal, radius, plane_idx):
        p = np.zeros(3)
        p[list(plane_idx)] = v[list(plane_idx)]
        n = np.linalg.norm(p)
        if n > 1e-12:
            return radius * p / n
        return _lexmin_disc_point(np.zeros(3), normal, radius)

    def contains(self, x):
        y = np.asarray(x, dtype=float)
        shape = y.shape[:-1]
        y = y.reshape(-1, 3)
        ay1 = np.abs(y[:, 1]) / self.r1
        ay2 = np.abs(y[:, 2]) / self.r2
        lo = ay1
        hi = 1.0 - ay2
        feasible = lo <= hi + 1e-15
        hi = np.maximum(hi, lo)

        def reach(lam):
            a = np.sqrt(np.clip((lam * self.r1) ** 2 - y[:, 1] ** 2, 0.0, None))
            b = np.sqrt(np.clip(((1 - lam) * self.r2) ** 2 - y[:, 2] ** 2, 0.0, None))
            return a + b

        _, best = golden_max(reach, lo, hi, tol=1e-13)
        best = np.maximum(best, np.maximum(reach(lo), reach(hi)))
        return (feasible & (np.abs(y[:, 0]) <= best + 1e-15)).reshape(shape)


class Translate(ConvexBody):
    kind = "Translate"

    def __init__(self, body, shift, label=None):
        self.body = body
        self.shift = np.asarray(shift, dtype=float)
        if self.shift.shape != (body.dim,):
            raise InvalidBodySpecError("translation dimension mismatch")
        self.center = getattr(body, "center", np.zeros(body.dim)) + self.shift
        super().__init__(body.dim, body.circumradius_bound + np.linalg.norm(self.shift),
                         body.inradius_bound, label or f"{body.label}+shift")

    def support(self, u):
        u = _as_dirs(u, self.dim)
        return self.body.support(u) + u @ self.shift

    def boundary_point(self, u):
        return self.body.boundary_point(u) + self.shift

    def contains(self, x):
        return self.body.contains(np.asarray(x, dtype=float) - self.shift)


class Composite(ConvexBody):
    """Body given by an arbitrary support callable (sections, projections, fixtures)."""

    kind = "Composite"

    def __init__(self, dim, support_fn, circumradius_bound, inradius_bound=0.0,
                 boundary_fn=None, contains_fn=None, label=None):
        self._support_fn = support_fn
        self._boundary_fn = boundary_fn
        self._contains_fn = contains_fn
        super().__init__(dim, circumradius_bound, inradius_bound, label)

    def support(self, u):
        u = _as_dirs(u, self.dim)
        shape = u.shape[:-1]
        return np.asarray(self._support_fn(u.reshape(-1, self.dim)), dtype=float).reshape(shape)

    def boundary_point(self, u):
        if self._boundary_fn is not None:
            return self._boundary_fn(u)
        return self._gradient_boundary_point(u)

    def contains(self, x):
        if self._contains_fn is None:
            return super().contains(x)
        return self._contains_fn(x)


# constructors ---------------------------------------------------------------

def ball(radius=1.0, center=None, dim=3):
    return Ball(radius, center, dim)


def ellipsoid(semi_axes, center=None, orientation=None):
    return Ellipsoid(semi_axes, center, orientation)


def ellipsoid4(semi_axes, center=None, orientation=None):
    if len(semi_axes) != 4:
        raise InvalidBodySpecError("ellipsoid4 needs four semi-axes")
    return Ellipsoid(semi_axes, center, orientation)


def revolution(profile, axis=None):
    return Revolution(profile, axis)


def two_disc_hull(r1=1.0, r2=1.0):
    return DiscHull(r1, r2)


def translate(body, shift):
    return Translate(body, shift)


def perturbed_ellipsoid(semi_axes, amplitude=0.05, seed=0):
    """Ellipsoid plus a smooth cubic bump ``amp (x.a)(x.b)(x.c)/|x|^2``.

    The bump is odd, so the body is not centrally symmetric, and with
    generic ``a, b, c`` it has no planar symmetry either.
    """
    E = Ellipsoid(semi_axes)
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((3, 3))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    amp = float(amplitude)

    def h(u):
        n2 = np.einsum("...i,...i->...", u, u)
        bump = (u @ vecs[0]) * (u @ vecs[1]) * (u @ vecs[2]) / n2
        return E.support(u) + amp * bump

    body = Composite(3, h, E.circumradius_bound + amp, max(E.inradius_bound - amp, 0.0),
                     label=f"perturbed_ellipsoid(seed={seed})")
    body.bump_vectors = vecs
    return body


def construct(spec):
    """Build a body from a plain dict (the JSON body-spec format of the CLI)."""
    try:
        kind = spec["kind"]
    except (KeyError, TypeError):
        raise InvalidBodySpecError("body spec needs a 'kind'") from None
    params = dict(spec.get("params", {}))
    center = spec.get("center")
    orientation = spec.get("orientation")
    if kind == "ball":
        body = Ball(params.get("radius", 1.0), None, int(params.get("dim", 3)))
    elif kind == "ellipsoid":
        body = Ellipsoid(params["semi_axes"], None, orientation)
    elif kind == "ellipsoid4":
        body = ellipsoid4(params["semi_axes"], None, orientation)
    elif kind == "two_disc_hull":
        body = DiscHull(params.get("r1", 1.0), params.get("r2", 1.0))
    elif kind == "revolution":
        body = Revolution(_profile_from_spec(params["profile"]), _axis_from_spec(params.get("axis")))
    else:
        raise InvalidBodySpecError(f"unknown body kind {kind!r}")
    if kind != "ellipsoid" and kind != "ellipsoid4" and orientation is not None:
        raise InvalidBodySpecError(f"'orientation' is not supported for kind {kind!r}")
    if center is not None:
        c = np.asarray(center, dtype=float)
        if c.shape != (body.dim,):
            raise InvalidBodySpecError("center dimension mismatch")
        if isinstance(body, Ellipsoid):
            cls = Ball if isinstance(body, Ball) else Ellipsoid
            if cls is Ball:
                body = Ball(body.radius, c, body.dim)
            else:
                body = Ellipsoid(body.semi_axes, c, body.orientation)
        elif np.any(c != 0):
            body = Translate(body, c)
    return body


def _profile_from_spec(p):
    kind = p.get("type")
    if kind == "ellipse":
        return ProfileCurve.ellipse(p["radius"], p["half_height"])
    if kind == "power":
        return ProfileCurve.power(p["radius"], p["half_height"], p["exponent"])
    if kind == "table":
        return ProfileCurve.table(p["heights"], p["radii"])
    raise InvalidBodySpecError(f"unknown profile type {kind!r}")


def _axis_from_spec(a):
    if a is None:
        return None
    return LineD(np.asarray(a["point"], dtype=float), np.asarray(a["direction"], dtype=float))


# global quantities ----------------------------------------------------------

def steiner_point(K):
    """Steiner point ``(3/4pi) int h(u) u du`` of a body in R^3."""
    if K.dim != 3:
        raise ValueError("steiner_point is implemented for dim 3")
    pts, w = sphere_quadrature()
    h = K.support(pts)
    return 3.0 / (4.0 * math.pi) * (w * h) @ pts


def central_symmetry(K, n=4000):
    """Fit ``h(u) - h(-u) = 2 c.u``; returns ``(center, residual)``.

    A residual near zero means the body is centrally symmetric about ``c``.
    """
    dirs = sphere_points(n, K.dim)
    odd = 0.5 * (K.support(dirs) - K.support(-dirs))
    c, *_ = np.linalg.lstsq(dirs, odd, rcond=None)
    return c, float(np.max(np.abs(odd - dirs @ c)))


@dataclass(frozen=True)
class Segment:
    a: np.ndarray
    b: np.ndarray

    @property
    def length(self):
        return float(np.linalg.norm(self.a - self.b))

    @property
    def midpoint(self):
        return 0.5 * (self.a + self.b)

    @property
    def line(self):
        return LineD.through(self.a, self.b)

    def to_dict(self):
        return {"a": self.a.tolist(), "b": self.b.tolist(), "length": self.length}


def diameters(K, tol=1e-6, n_grid=10_000, n_refine=24):
    """All longest chords (binormals of maximal width) of ``K``.

    Width ``h(u) + h(-u)`` is maximized over a 10^4-direction grid, the best
    distinct grid directions are refined locally, and every refined segment
    within ``tol`` of the best width is returned, deduplicated by endpoints.
    """
    dirs = sphere_points(n_grid, K.dim, seed=12345)
    w = K.width(dirs)
    order = np.argsort(-w, kind="stable")
    seeds = []
    for i in order:
        u = dirs[i]
        if all(abs(u @ s) < math.cos(0.15) for s in seeds):
            seeds.append(u)
        if len(seeds) >= n_refine:
            break

    def neg_width(x):
        n = np.linalg.norm(x)
        return -float(K.width(x / n))

    refined = []
    for s in seeds:
        res = minimize(neg_width, s, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000})
        u = unit(res.x)
        refined.append((-res.fun, u))
    best = max(wd for wd, _ in refined)
    segments = []
    for wd, u in sorted(refined, key=lambda p: -p[0]):
        if wd < best - tol:
            continue
        a = K.boundary_point(-u)
        b = K.boundary_point(u)
        if b[np.argmax(np.abs(b - a))] < a[np.argmax(np.abs(b - a))]:
            a, b = b, a
        dup = False
        for s in segments:
            d1 = max(np.linalg.norm(s.a - a), np.linalg.norm(s.b - b))
            d2 = max(np.linalg.norm(s.a - b), np.linalg.norm(s.b - a))
            if min(d1, d2) <= 10 * tol:
                dup = True
                break
        if not dup:
            segments.append(Segment(a, b))
    return segments


def unique_diameter(K, tol=1e-6):
    segs = diameters(K, tol)
    if len(segs) != 1:
        raise NonUniqueDiameterError(f"{len(segs)} distinct diameters found", segs)
    return segs[0]
