"""Symmetry lines and centers of planar convex bodies.

The residual of a candidate symmetry is the Hausdorff distance between the
body and its mirror image.  For convex bodies that distance is the sup-norm
of the difference of support functions, which we evaluate on the body's
angle grid: reflecting about the line through ``c`` at angle ``a`` maps the
support ``h(t)`` to ``h(2a - t) + c.(v(t) - v(2a - t))``.
"""

from dataclasses import dataclass, field
import functools
import math

import numpy as np

from .geomcore import angular_distance_mod_pi
from .numerics import golden_min

N_SCAN = 720
CIRCLE_COUNT = 64
ANGLE_TOL = 1e-10
SPACING_TOL = 1e-6


@dataclass(frozen=True)
class Line2:
    angle: float
    through: tuple

    def __post_init__(self):
        a = float(np.mod(self.angle, math.pi))
        if math.pi - a < 1e-9:
            a = 0.0
        object.__setattr__(self, "angle", a)
        object.__setattr__(self, "through", tuple(float(x) for x in self.through))

    @property
    def direction(self):
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    @property
    def point(self):
        return np.asarray(self.through)

    def distance(self, x):
        d = np.asarray(x, dtype=float) - self.point
        n = np.array([-math.sin(self.angle), math.cos(self.angle)])
        return float(abs(d @ n))

    def intersect(self, other):
        """Intersection point, or ``None`` for parallel lines."""
        d1, d2 = self.direction, other.direction
        det = d1[0] * (-d2[1]) - d1[1] * (-d2[0])
        if abs(det) < 1e-14:
            return None
        rhs = other.point - self.point
        t = (rhs[0] * (-d2[1]) - rhs[1] * (-d2[0])) / det
        return self.point + t * d1

    def to_dict(self):
        return {"angle": self.angle, "through": list(self.through)}


@dataclass(frozen=True)
class PinnedLine:
    """Best line under a constraint; ``found`` iff its residual is within tolerance."""

    line: Line2
    residual: float
    found: bool

    def to_dict(self):
        return {"line": self.line.to_dict(), "residual": self.residual, "found": self.found}


@dataclass(frozen=True)
class CenterResult:
    center: tuple
    residual: float
    found: bool

    def to_dict(self):
        return {"center": list(self.center), "residual": self.residual, "found": self.found}


@dataclass
class SymmetryReport:
    lines: list = field(default_factory=list)  # (Line2, residual)
    center: CenterResult = None
    is_circle: bool = False
    starline_consistent: bool = True
    scan_min: float = math.inf
    best_residual: float = math.inf

    def to_dict(self):
        return {
            "lines": [{"angle": l.angle, "through": list(l.through), "residual": r} for l, r in self.lines],
            "center": None if self.center is None else self.center.to_dict(),
            "is_circle": self.is_circle,
            "starline_consistent": self.starline_consistent,
            "scan_min": self.scan_min,
            "best_residual": self.best_residual,
        }


def _dirs(t):
    return np.stack([np.cos(t), np.sin(t)], axis=-1)


def _reflection_residuals(P, alphas, points, exact=False):
    """Residuals for lines at ``alphas`` (K,) through ``points`` (K, 2)."""
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    points = np.broadcast_to(np.asarray(points, dtype=float), (len(alphas), 2))
    t = P.angles[None, :]
    refl = 2.0 * alphas[:, None] - t
    evaluate = P.exact_support if exact else P.support_at
    h_ref = evaluate(refl.ravel()).reshape(refl.shape)
    # c.(v(t) - v(2a - t)), expanded to avoid building (K, m, 2) arrays
    cos_t, sin_t = np.cos(t), np.sin(t)
    cos_r, sin_r = np.cos(refl), np.sin(refl)
    shift = points[:, :1] * (cos_t - cos_r) + points[:, 1:] * (sin_t - sin_r)
    return np.max(np.abs(P.h[None, :] - h_ref - shift), axis=1)


def asymmetry_about_line(P, line, exact=True):
    """Hausdorff distance between ``P`` and its reflection in ``line``."""
    return float(_reflection_residuals(P, [line.angle], [line.point], exact)[0])


def _refine_angles(P, point, centers, step):
    """Golden-section refinement of all bracketed minima at once."""
    centers = np.asarray(centers, dtype=float)
    point = np.asarray(point, dtype=float)[None, :]
    a, r = golden_min(lambda x: _reflection_residuals(P, x, point), centers - step, centers + step,
                      tol=ANGLE_TOL)
    return a, r


def _local_minima(res):
    prev = np.roll(res, 1)
    nxt = np.roll(res, -1)
    return np.flatnonzero((res <= prev) & (res <= nxt))


def _lattice(P, n):
    """Reflected angles ``2 pi k/n - 2 pi j/m`` of a uniform scan share a lattice.

    Returns ``(G, idx, H, C, S)``: lattice size, the (n, m) index table and
    the interpolated support, cosine and sine on the lattice.  Cached per
    body since every scan of the same body reuses it.
    """
    cache = P.__dict__.setdefault("_scan_lattice", {})
    if n not in cache:
        G, idx, C, S = _lattice_table(n, P.m)
        grid = 2.0 * math.pi * np.arange(G) / G
        cache[n] = (G, idx, P.support_at(grid), C, S)
    return cache[n]


@functools.lru_cache(maxsize=16)
def _lattice_table(n, m):
    G = n * m // math.gcd(n, m)
    k = np.arange(n)[:, None] * (G // n)
    j = np.arange(m)[None, :] * (G // m)
    idx = np.mod(k - j, G)
    grid = 2.0 * math.pi * np.arange(G) / G
    return G, idx, np.cos(grid), np.sin(grid)


def _scan(P, point, n=N_SCAN):
    """Spline residuals of the ``n`` lines through ``point`` at angles ``pi k/n``."""
    alphas = math.pi * np.arange(n) / n
    _, idx, H, C, S = _lattice(P, n)
    px, py = float(point[0]), float(point[1])
    ct, st = np.cos(P.angles), np.sin(P.angles)
    dev = (P.h - px * ct - py * st)[None, :] - (H - px * C - py * S)[idx]
    return alphas, np.max(np.abs(dev), axis=1)


def find_symmetry_lines(P, tol, max_candidates=32, with_center=True):
    """All symmetry lines of ``P`` with residual ``<= tol``.

    Symmetry lines of a convex body pass through its Steiner point, so the
    search is a scan over 720 angles of lines through it, with golden-section
    refinement of every local minimum.
    """
    s = P.steiner_point()
    alphas, res = _scan(P, s)
    report = SymmetryReport(scan_min=float(res.min()))
    if with_center:
        report.center = find_symmetry_center(P, tol)
    if np.count_nonzero(res <= tol) >= CIRCLE_COUNT:
        report.is_circle = True
        report.best_residual = float(res.min())
        if report.center is None:
            report.center = find_symmetry_center(P, tol)
        return report
    step = math.pi / len(alphas)
    minima = _local_minima(res)
    minima = minima[np.argsort(res[minima], kind="stable")][:max_candidates]
    a_ref, r_ref = _refine_angles(P, s, alphas[minima], step)
    refined = sorted(zip(r_ref.tolist(), a_ref.tolist()))
    found = []
    for i, (r_spline, a) in enumerate(refined):
        # exact re-evaluation only where the interpolated residual is promising
        if i > 0 and r_spline > 2.0 * tol:
            break
        r = float(_reflection_residuals(P, [a], [s], exact=True)[0])
        report.best_residual = min(report.best_residual, r)
        if r <= tol and all(angular_distance_mod_pi(a, b.angle) > 1e-6 for b, _ in found):
            found.append((Line2(a, s), r))
    found.sort(key=lambda p: p[0].angle)
    report.lines = found
    report.starline_consistent = starline_spacing_ok([l.angle for l, _ in found])
    return report


def best_symmetry_line(P, tol):
    """Best symmetry line of ``P`` (any position): ``PinnedLine``."""
    rep = find_symmetry_lines(P, tol, max_candidates=8, with_center=False)
    if rep.is_circle:
        return PinnedLine(Line2(0.0, tuple(rep.center.center)), rep.best_residual, True)
    if rep.lines:
        line, r = min(rep.lines, key=lambda p: p[1])
        return PinnedLine(line, r, True)
    s = P.steiner_point()
    alphas, res = _scan(P, s)
    a = float(alphas[int(np.argmin(res))])
    return PinnedLine(Line2(a, s), rep.best_residual, False)


def starline_spacing_ok(angles, tol=SPACING_TOL):
    """True when undirected line angles are equally spaced by ``pi/n``."""
    n = len(angles)
    if n < 2:
        return True
    a = np.sort(np.mod(angles, math.pi))
    gaps = np.diff(np.concatenate([a, [a[0] + math.pi]]))
    return bool(np.max(np.abs(gaps - math.pi / n)) <= tol)


def find_symmetry_line_through_point(P, q, tol):
    """Best symmetry line constrained to pass through ``q`` (frame coordinates)."""
    q = np.asarray(q, dtype=float)
    alphas, res = _scan(P, q)
    below = np.flatnonzero(res <= tol)
    if len(below) >= CIRCLE_COUNT:
        k = int(below[0])
        r = float(_reflection_residuals(P, [alphas[k]], [q], exact=True)[0])
        return PinnedLine(Line2(alphas[k], q), r, r <= tol)
    step = math.pi / len(alphas)
    minima = _local_minima(res)
    minima = minima[np.argsort(res[minima], kind="stable")][:4]
    a_ref, r_ref = _refine_angles(P, q, alphas[minima], step)
    refined = sorted(zip(r_ref.tolist(), a_ref.tolist()))
    best = None
    for r_spline, a in refined[:2]:
        # a runner-up is re-evaluated only if it could beat the leader
        if best is not None and r_spline > max(2.0 * tol, 2.0 * best[1]):
            break
        r = float(_reflection_residuals(P, [a], [q], exact=True)[0])
        if best is None or r < best[1]:
            best = (a, r)
    line = Line2(best[0], q)
    return PinnedLine(line, best[1], best[1] <= tol)


def find_symmetry_line_with_direction(P, angle, tol):
    """Best symmetry line with a prescribed direction (free offset)."""
    n = np.array([-math.sin(angle), math.cos(angle)])
    R = max(P.circumradius(), 1e-12)

    def f(s):
        pts = s[:, None] * n[None, :]
        return _reflection_residuals(P, np.full(len(s), angle), pts)

    # residual is a max of |affine| in the offset, hence convex
    s, _ = golden_min(f, np.array([-2 * R]), np.array([2 * R]), tol=1e-12 * R)
    through = float(s[0]) * n
    r = float(_reflection_residuals(P, [angle], [through], exact=True)[0])
    return PinnedLine(Line2(angle, through), r, r <= tol)


def _center_residual(P, c):
    m = P.m
    if m % 2 == 0:
        h_opp = np.roll(P.h, -m // 2)
    else:
        h_opp = P.support_at(P.angles + math.pi)
    return float(np.max(np.abs(P.h - h_opp - 2.0 * (_dirs(P.angles) @ c))))


def find_symmetry_center(P, tol):
    """Center of symmetry by compass search from the Steiner point."""
    c = P.steiner_point()
    best = _center_residual(P, c)
    step = 0.1 * max(P.circumradius(), 1e-12)
    moves = _dirs(math.pi / 4 * np.arange(8))
    while step > 1e-10:
        improved = False
        for mv in moves:
            trial = c + step * mv
            r = _center_residual(P, trial)
            if r < best:
                c, best, improved = trial, r, True
                break
        if not improved:
            step *= 0.5
    return CenterResult(tuple(c), best, best <= tol)


def circle_fit(P):
    """Least-squares ``h = r + c.v``: returns ``(center, radius, max deviation)``."""
    A = np.column_stack([np.ones(P.m), np.cos(P.angles), np.sin(P.angles)])
    coef, *_ = np.linalg.lstsq(A, P.h, rcond=None)
    dev = float(np.max(np.abs(P.h - A @ coef)))
    return coef[1:], float(coef[0]), dev


def is_disc(P, tol, center=None):
    """Disc test with optional prescribed center; returns ``(ok, residual)``."""
    c, r, dev = circle_fit(P)
    resid = dev
    if center is not None:
        resid += float(np.linalg.norm(c - np.asarray(center, dtype=float)))
    return resid <= tol, resid
