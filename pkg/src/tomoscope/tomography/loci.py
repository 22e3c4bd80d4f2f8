"""Midpoint loci of chords and shadow boundaries."""

import math

import numpy as np
from scipy.spatial import cKDTree

from ..bodies import central_symmetry
from ..geomcore import PlaneD, plane_frame, unit
from ..numerics import fibonacci_sphere, fit_plane, orthonormal_complement
from .certify import require_interior
from .records import MidpointLocus, ShadowBoundary

ROOT_TOL = 1e-10
DEDUP_TOL = 1e-6


def _dedup(points, tol=DEDUP_TOL):
    """Greedy deduplication in input order (first representative wins)."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    tree = cKDTree(points)
    keep = np.ones(len(points), dtype=bool)
    for i in range(len(points)):
        if keep[i]:
            for j in tree.query_ball_point(points[i], tol):
                if j > i:
                    keep[j] = False
    return points[keep]


def midpoint_locus(K, x, n_circles=24, n_samples=256):
    """Endpoints of the chords of ``K`` bisected by ``x``.

    Along each of ``n_circles`` great circles of directions ``u(s)``,
    ``s in [0, pi]``, the imbalance ``g(u) = t+(u) - t-(u)`` of the exit
    distances changes sign (``g(-u) = -g(u)``), so every circle carries at
    least one root.  Roots are bracketed on the sample grid and bisected.
    """
    x = require_interior(K, x)
    normals = fibonacci_sphere(n_circles, hemisphere=True)
    s = math.pi * np.arange(n_samples + 1) / n_samples
    frames = [orthonormal_complement(w, 3) for w in normals]
    A = np.array([f[0] for f in frames])
    B = np.array([f[1] for f in frames])

    def dirs(si, idx):
        return np.cos(si)[..., None] * A[idx] + np.sin(si)[..., None] * B[idx]

    def g(si, idx):
        u = dirs(si, idx)
        return K.ray_exit(x, u) - K.ray_exit(x, -u)

    idx_grid = np.repeat(np.arange(n_circles)[:, None], len(s), axis=1)
    s_grid = np.broadcast_to(s, idx_grid.shape)
    G = g(s_grid, idx_grid)
    scale = K.circumradius_bound
    if np.max(np.abs(G)) <= 1e-9 * scale:
        # every chord through x is bisected: the locus is all of the boundary
        u = dirs(s_grid.ravel(), idx_grid.ravel())
        pts = x + K.ray_exit(x, u)[:, None] * u
        return MidpointLocus(x, _dedup(pts), None, None, spans_sphere=True)

    exact = np.argwhere(G[:, :-1] == 0.0)
    brackets = np.argwhere(G[:, :-1] * G[:, 1:] < 0.0)
    roots_s = [s[j] for _, j in exact]
    roots_i = [i for i, _ in exact]
    if len(brackets):
        ci = brackets[:, 0]
        lo = s[brackets[:, 1]]
        hi = s[brackets[:, 1] + 1]
        g_lo = G[ci, brackets[:, 1]]
        n_iter = int(math.ceil(math.log2((math.pi / n_samples) / ROOT_TOL)))
        for _ in range(n_iter):
            mid = 0.5 * (lo + hi)
            gm = g(mid, ci)
            same = np.sign(gm) == np.sign(g_lo)
            lo = np.where(same, mid, lo)
            g_lo = np.where(same, gm, g_lo)
            hi = np.where(same, hi, mid)
        roots_s.extend(0.5 * (lo + hi))
        roots_i.extend(ci)
    roots_s = np.array(roots_s)
    roots_i = np.array(roots_i, dtype=int)
    u = dirs(roots_s, roots_i)
    t_plus = K.ray_exit(x, u)
    t_minus = K.ray_exit(x, -u)
    pts = np.concatenate([x + t_plus[:, None] * u, x - t_minus[:, None] * u])
    pts = _dedup(pts)
    c, n, resid = fit_plane(pts)
    return MidpointLocus(x, pts, PlaneD.through(c, n), resid)


def shadow_boundary(K, u, m=360, symmetry_tol=1e-8):
    """Touching points of the supporting lines parallel to ``u``.

    A supporting plane with normal ``v ⊥ u`` contains the direction ``u``,
    so its contact point lies on the shadow boundary.  When ``K`` is
    centrally symmetric, the residual against the central plane
    ``{x.u = c.u}`` is reported too.
    """
    u = unit(u)
    frame = plane_frame(PlaneD(u, 0.0))
    t = 2.0 * math.pi * np.arange(m) / m
    V = frame.directions(np.column_stack([np.cos(t), np.sin(t)]))
    pts = K.boundary_point(V)
    c, n, resid = fit_plane(pts)
    central = None
    center, sym = central_symmetry(K)
    if sym <= symmetry_tol:
        central = float(np.max(np.abs((pts - center) @ u)))
    return ShadowBoundary(u, pts, PlaneD.through(c, n), resid, central)
