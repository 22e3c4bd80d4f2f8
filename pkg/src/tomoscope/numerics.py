"""Small numerical kernels: vectorized golden-section search, sphere samplings."""

from concurrent.futures import ThreadPoolExecutor
import math
import os

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = 1.0 - INV_PHI


def golden_iterations(width, tol):
    """Number of golden-section steps needed to shrink ``width`` below ``tol``."""
    width = float(width)
    if not np.isfinite(width) or width <= tol:
        return 0
    return int(math.ceil(math.log(tol / width) / math.log(INV_PHI)))


def golden_min(f, lo, hi, tol=1e-10):
    """Minimize a batch of unimodal functions by golden-section search.

    ``f`` maps an array of abscissae (shape of ``lo``) to function values,
    element ``i`` being evaluated with its own objective.  Every element
    runs the same number of steps, derived from the widest bracket, so the
    result does not depend on evaluation order.

    Returns ``(x, fx)`` arrays of the minimizers and minimum values.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    lo, hi = np.broadcast_arrays(lo, hi)
    lo, hi = lo.copy(), hi.copy()
    n = golden_iterations(np.max(hi - lo) if lo.size else 0.0, tol)

    c = lo + INV_PHI2 * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc = f(c)
    fd = f(d)
    for _ in range(n):
        left = fc < fd
        right = ~left
        # shrink to [lo, d] where the left probe is lower, else to [c, hi]
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        x_new = lo + np.where(left, INV_PHI2, INV_PHI) * (hi - lo)
        f_new = f(x_new)
        c_next = np.where(left, x_new, d)
        fc_next = np.where(left, f_new, fd)
        np.copyto(d, c, where=left)
        np.copyto(d, x_new, where=right)
        np.copyto(fd, fc, where=left)
        np.copyto(fd, f_new, where=right)
        c, fc = c_next, fc_next
    best_left = fc <= fd
    return np.where(best_left, c, d), np.where(best_left, fc, fd)


def golden_max(f, lo, hi, tol=1e-10):
    x, fx = golden_min(lambda t: -f(t), lo, hi, tol)
    return x, -fx


def fibonacci_sphere(n, hemisphere=False):
    """Deterministic, nearly uniform points on S^2 (``n`` of them).

    With ``hemisphere=True`` the points cover only ``z >= 0``; useful for
    sampling planes through a point, where ``u`` and ``-u`` coincide.
    """
    i = np.arange(n, dtype=float) + 0.5
    if hemisphere:
        z = 1.0 - i / n
    else:
        z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden_angle = math.pi * (3.0 - math.sqrt(5.0))
    phi = golden_angle * np.arange(n)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sphere_points(n, dim, seed=0):
    """``n`` deterministic unit vectors in R^dim (Fibonacci for dim 3)."""
    if dim == 3:
        return fibonacci_sphere(n)
    if dim == 2:
        t = 2.0 * math.pi * np.arange(n) / n
        return np.column_stack([np.cos(t), np.sin(t)])
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def sphere_quadrature(n_polar=48, n_azimuth=96):
    """Product Gauss-Legendre x trapezoid rule on S^2.

    Returns ``(points, weights)``; weights sum to 4*pi.  Exact for spherical
    polynomials of degree below ``min(2*n_polar, n_azimuth)``.
    """
    z, wz = np.polynomial.legendre.leggauss(n_polar)
    az = 2.0 * math.pi * np.arange(n_azimuth) / n_azimuth
    zz, aa = np.meshgrid(z, az, indexing="ij")
    r = np.sqrt(1.0 - zz**2)
    pts = np.stack([r * np.cos(aa), r * np.sin(aa), zz], axis=-1).reshape(-1, 3)
    w = np.repeat(wz * (2.0 * math.pi / n_azimuth), n_azimuth)
    return pts, w


def random_rotation(dim, seed):
    """Haar-random rotation matrix (det +1) from a seeded generator."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def orthonormal_complement(vectors, dim):
    """Orthonormal basis of the complement of span(vectors), deterministic."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    basis = [v / np.linalg.norm(v) for v in vectors]
    out = []
    for k in range(dim):
        e = np.zeros(dim)
        e[k] = 1.0
        for b in basis + out:
            e = e - (e @ b) * b
        nrm = np.linalg.norm(e)
        if nrm > 1e-6:
            out.append(e / nrm)
        if len(out) == dim - len(basis):
            break
    return np.array(out)


def fit_plane(points):
    """Least-squares plane through a point cloud: ``(centroid, unit normal, max residual)``."""
    pts = np.asarray(points, dtype=float)
    c = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - c, full_matrices=False)
    normal = vt[-1]
    # sign convention: first nonzero component positive
    k = int(np.argmax(np.abs(normal) > 1e-12))
    if normal[k] < 0:
        normal = -normal
    resid = np.abs((pts - c) @ normal)
    return c, normal, float(resid.max()) if len(resid) else 0.0


def thread_count():
    """Worker cap from ``TOMOSCOPE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("TOMOSCOPE_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map, threaded when ``TOMOSCOPE_THREADS`` > 1.

    Results come back in input order, so reductions over them are
    independent of the schedule.
    """
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
