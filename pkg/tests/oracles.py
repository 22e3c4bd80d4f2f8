"""Independent reference computations used to derive and freeze test values.

Nothing here imports the package's numerical engines: each oracle works
from closed forms, brute-force sampling or scipy's qhull.
"""

from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
from scipy.spatial import HalfspaceIntersection, cKDTree


@lru_cache(maxsize=4)
def _fib_cached(n):
    return fib_sphere(n)


def fib_sphere(n):
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


# reflections and pencils ----------------------------------------------------

def reflect(p, d, x):
    d = np.asarray(d, float) / np.linalg.norm(d)
    y = np.asarray(x, float) - p
    return p + 2.0 * (y @ d) * d - y


def starline_exact(a1, a2, max_iter):
    """Exact orbit for angles given as Fractions of pi; returns the sorted set."""
    orbit = [a1 % 1, a2 % 1]
    prev, cur = orbit
    for _ in range(max_iter):
        nxt = (2 * cur - prev) % 1
        if nxt in orbit:
            return sorted(orbit), True
        orbit.append(nxt)
        prev, cur = cur, nxt
    return sorted(orbit), False


def continued_fraction_denominator(x, max_den, tol):
    """Smallest convergent denominator q <= max_den with |x - p/q| <= tol, else None."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    y = x
    for _ in range(64):
        a = math.floor(y)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            return None
        if abs(x - h1 / k1) <= tol:
            return k1
        frac = y - a
        if frac == 0:
            return k1
        y = 1.0 / frac
    return None


# planar shapes ---------------------------------------------------------------

def ellipse_points(a, b, n, center=(0.0, 0.0), angle=0.0):
    t = 2.0 * math.pi * np.arange(n) / n
    pts = np.column_stack([a * np.cos(t), b * np.sin(t)])
    c, s = math.cos(angle), math.sin(angle)
    return pts @ np.array([[c, s], [-s, c]]) + np.asarray(center)


def ellipse_support(a, b, theta, center=(0.0, 0.0)):
    return np.sqrt((a * np.cos(theta)) ** 2 + (b * np.sin(theta)) ** 2) + center[0] * np.cos(theta) + \
        center[1] * np.sin(theta)


def point_hausdorff(A, B):
    """Symmetric Hausdorff distance between two dense boundary samples."""
    da, _ = cKDTree(B).query(A)
    db, _ = cKDTree(A).query(B)
    return float(max(da.max(), db.max()))


def reflect2(points, angle, through):
    d = np.array([math.cos(angle), math.sin(angle)])
    y = points - through
    return through + 2.0 * (y @ d)[:, None] * d - y


def line_scan_min(support, q, n_angles=3600, n_dirs=2048):
    """Brute-force min over lines through q of the sup-norm support asymmetry."""
    th = 2.0 * math.pi * np.arange(n_dirs) / n_dirs
    h = support(th)
    best = math.inf
    for a in math.pi * np.arange(n_angles) / n_angles:
        refl = 2.0 * a - th
        hr = support(refl)
        # support of the reflected body about the reflected direction, shifted to q
        d = np.column_stack([np.cos(th), np.sin(th)])
        dr = np.column_stack([np.cos(refl), np.sin(refl)])
        dev = (h - d @ q) - (hr - dr @ q)
        best = min(best, float(np.max(np.abs(dev))))
    return best


def center_grid_min(support, c0, half_width=0.3, n=121, n_dirs=2048):
    """Brute-force min over a center grid of ``max |h(t) - h(t+pi) - 2 c.d(t)|``."""
    th = 2.0 * math.pi * np.arange(n_dirs) / n_dirs
    odd = support(th) - support(th + math.pi)
    d = np.column_stack([np.cos(th), np.sin(th)])
    g = np.linspace(-half_width, half_width, n)
    best = math.inf
    for x in g:
        for y in g:
            c = np.asarray(c0) + [x, y]
            best = min(best, float(np.max(np.abs(odd - 2.0 * d @ c))))
    return best


# sections of ellipsoids -------------------------------------------------------

class EllipsoidPolytope:
    """Circumscribed polytope of ``{x: x.A^-1 x <= 1}``: tangent halfspaces
    ``u.x <= h(u)`` for ``n_facets`` Fibonacci normals.
    """

    def __init__(self, A, n_facets=50_000):
        self.A = np.asarray(A, dtype=float)
        self.U = _fib_cached(n_facets)
        self.AU = self.U @ self.A
        self.h = np.sqrt(np.einsum("ij,ij->i", self.AU, self.U))

    def section(self, normal, offset, origin, basis, band=None):
        """Vertices of the polytope section, in the given in-plane coordinates.

        With ``band``, only facets whose tangent point lies within ``band`` of
        the plane are kept; dropping facets can only enlarge the polytope, so
        the result still circumscribes the true section.
        """
        U, h = self.U, self.h
        if band is not None:
            keep = np.abs(self.AU @ normal / h - offset) <= band
            U, h = U[keep], h[keep]
        Bu = U @ basis.T
        rhs = h - U @ origin
        keep = np.linalg.norm(Bu, axis=1) > 1e-12
        hs = np.column_stack([Bu[keep], -rhs[keep]])
        # center of the elliptic section: argmin of the quadratic form on the plane
        An = self.A @ normal
        x_star = offset * An / (normal @ An)
        interior = basis @ (x_star - origin)
        return HalfspaceIntersection(hs, interior).intersections


def ellipsoid_polytope_section(A, normal, offset, origin, basis, n_facets=50_000, band=None):
    return EllipsoidPolytope(A, n_facets).section(normal, offset, origin, basis, band)


def polygon_support(vertices, theta):
    d = np.column_stack([np.cos(theta), np.sin(theta)])
    return np.max(vertices @ d.T, axis=0)


def ellipsoid_section_semiaxes(semi, normal, offset):
    """Closed-form semi-axes and center of an axis-aligned ellipsoid section."""
    A = np.diag(np.asarray(semi, float) ** 2)
    n = np.asarray(normal, float) / np.linalg.norm(normal)
    t = np.eye(3)[np.argmin(np.abs(n))]
    e1 = t - (t @ n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    B = np.vstack([e1, e2])
    Ai = np.linalg.inv(A)
    An = A @ n
    c = offset * An / (n @ An)
    Q = B @ Ai @ B.T
    k = 1.0 - c @ Ai @ c + (c @ Ai @ B.T) @ np.linalg.solve(Q, B @ Ai @ c)
    ev = np.linalg.eigvalsh(Q)
    return np.sqrt(k / ev), c


# chords --------------------------------------------------------------------------

def ellipsoid_chord(semi, x, u):
    """Exit distances ``(t+, t-)`` of the line ``x + t u`` through an ellipsoid."""
    s = np.asarray(semi, float)
    a = np.sum((u / s) ** 2, axis=-1)
    b = 2.0 * np.sum(x * u / s ** 2, axis=-1)
    c = np.sum((x / s) ** 2) - 1.0
    disc = np.sqrt(b * b - 4.0 * a * c)
    return (-b + disc) / (2.0 * a), (b + disc) / (2.0 * a)


def midpoint_chord_endpoints(semi, x, n_dirs=100_000, rel_tol=2e-3):
    """Endpoints of sampled chords through ``x`` that ``x`` nearly bisects."""
    U = fib_sphere(n_dirs)
    tp, tm = ellipsoid_chord(semi, np.asarray(x, float), U)
    keep = np.abs(tp - tm) <= rel_tol * (tp + tm)
    return np.vstack([x + tp[keep, None] * U[keep], x - tm[keep, None] * U[keep]])


def ellipsoid_radial_spread(semi, n=200_000):
    """max |x| - min |x| over boundary samples of a centered ellipsoid."""
    U = fib_sphere(n)
    pts = U * np.asarray(semi, float)
    r = np.linalg.norm(pts, axis=1)
    return float(r.max() - r.min())


def frac(p, q):
    return Fraction(p, q)
