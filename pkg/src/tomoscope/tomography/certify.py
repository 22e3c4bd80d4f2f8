"""Point tests and certifications built on planar sections.

Every test samples a fixed family of planes, measures one planar residual
per plane and reports the worst one.  A failing test names the plane that
realized it.
"""

import math

import numpy as np

from ..bodies import steiner_point, central_symmetry
from ..errors import DegenerateAxisError, EmptySectionError, IllConditionedError, PointOutsideBodyError
from ..geomcore import LineD, PlaneD, unit
from ..numerics import fibonacci_sphere, pmap, sphere_points
from ..slicing import project, section
from ..symmetry2d import (
    _center_residual,
    best_symmetry_line,
    find_symmetry_line_through_point,
    find_symmetry_line_with_direction,
    is_disc,
)
from .records import Certification


def plane_dict(plane):
    return {"normal": plane.normal.tolist(), "offset": plane.offset}


def require_interior(K, p):
    p = np.asarray(p, dtype=float)
    if p.shape != (K.dim,):
        raise PointOutsideBodyError(f"point has dimension {p.shape}, body has {K.dim}")
    if not K.is_interior(p):
        raise PointOutsideBodyError(f"point {p.tolist()} is not interior to {K.label}")
    return p


def planes_through(p, n_planes):
    """``n_planes`` planes through ``p`` with Fibonacci-hemisphere normals."""
    return [PlaneD.through(p, n) for n in fibonacci_sphere(n_planes, hemisphere=True)]


def _worst(results, n_samples, tol, extra=None):
    """Fold per-plane ``(residual, witness)`` pairs into a Certification."""
    worst_r, worst_w = -math.inf, None
    for r, w in results:
        if r > worst_r:
            worst_r, worst_w = r, w
    passed = worst_r <= tol
    return Certification(passed, float(worst_r), None if passed else worst_w, n_samples,
                         dict(extra or {}, tol=tol))


# point tests ---------------------------------------------------------------

def larman_point_test(K, p, n_planes=36, tol=1e-6, m=360):
    """Every section through ``p`` must have a symmetry line (anywhere)."""
    p = require_interior(K, p)

    def one(plane):
        P = section(K, plane, m)
        best = best_symmetry_line(P, tol)
        return best.residual, {"plane": plane_dict(plane), "line": best.line.to_dict(),
                               "residual": best.residual}

    return _worst(pmap(one, planes_through(p, n_planes)), n_planes * m, tol)


def revolution_point_test(K, p, n_planes=36, tol=1e-6, m=360):
    """Every section through ``p`` must have a symmetry line through ``p``."""
    p = require_interior(K, p)

    def one(plane):
        P = section(K, plane, m)
        q = P.frame.to_local(p)
        best = find_symmetry_line_through_point(P, q, tol)
        return best.residual, {"plane": plane_dict(plane), "line": best.line.to_dict(),
                               "residual": best.residual}

    return _worst(pmap(one, planes_through(p, n_planes)), n_planes * m, tol)


# axis certifications ---------------------------------------------------------

def _axis_heights(K, L, n_planes):
    """Offsets ``c`` of the planes ``x.d = c`` orthogonal to ``L`` that cross ``K``.

    Raises DegenerateAxisError unless ``L`` meets the interior of ``K``.
    """
    d = L.dir
    P = project(K, d, 180)
    q = P.frame.to_local(L.point)
    margin = float(np.min(P.h - np.cos(P.angles) * q[0] - np.sin(P.angles) * q[1]))
    if margin <= K.width_min:
        raise DegenerateAxisError(f"line misses the interior of {K.label} (margin {margin:.3g})")
    hi = float(K.support(d))
    lo = -float(K.support(-d))
    # keep clear of the tips, where sections shrink to points
    pad = max(0.02 * (hi - lo), 2 * K.width_min)
    return lo + pad + (hi - lo - 2 * pad) * (np.arange(n_planes) + 0.5) / n_planes


def _axis_planes(K, L, n_planes):
    out = []
    for c in _axis_heights(K, L, n_planes):
        plane = PlaneD(L.dir, c)
        out.append((plane, plane.meet_line(L)))
    return out


def is_axis_of_symmetry(K, L, n_planes=36, tol=1e-6, m=360):
    """``L`` is an axis iff every section orthogonal to it is symmetric about ``Π ∩ L``.

    The per-plane residual is half the Hausdorff distance between the
    section and its point reflection in ``Π ∩ L``, which bounds the offset
    of the section's center from the axis.
    """

    def one(item):
        plane, foot = item
        P = section(K, plane, m)
        r = 0.5 * _center_residual(P, P.frame.to_local(foot))
        return r, {"plane": plane_dict(plane), "point": foot.tolist(), "residual": r}

    return _worst(pmap(one, _axis_planes(K, L, n_planes)), n_planes * m, tol)


def certify_body_of_revolution(K, axis, n_planes=36, tol=1e-6, m=360):
    """Sections orthogonal to ``axis`` must be discs centered on it."""

    def one(item):
        plane, foot = item
        P = section(K, plane, m)
        _, r = is_disc(P, tol, center=P.frame.to_local(foot))
        return r, {"plane": plane_dict(plane), "point": foot.tolist(), "residual": r}

    return _worst(pmap(one, _axis_planes(K, axis, n_planes)), n_planes * m, tol,
                  {"axis": {"point": axis.point.tolist(), "direction": axis.dir.tolist()}})


def certify_sphere(K, tol=1e-6, n_boundary=10_000, center=None, method="boundary"):
    """Sphere test.

    ``method="boundary"``: center at the Steiner point, then the spread
    ``max |‖x - c‖ - r|`` over boundary samples with ``r`` the mid-range
    radius.  ``method="support"``: the sup-distance between ``h`` and the
    best ball centered at ``c`` (exact Hausdorff distance to that ball),
    for bodies known only through their support.
    """
    if center is None:
        center = steiner_point(K) if K.dim == 3 else central_symmetry(K)[0]
    c = np.asarray(center, dtype=float)
    dirs = sphere_points(n_boundary, K.dim)
    if method == "boundary":
        radii = np.linalg.norm(K.boundary_point(dirs) - c, axis=1)
    elif method == "support":
        radii = K.support(dirs) - dirs @ c
    else:
        raise ValueError(f"unknown sphere method {method!r}")
    r_lo, r_hi = float(radii.min()), float(radii.max())
    r_bar = 0.5 * (r_lo + r_hi)
    resid = 0.5 * (r_hi - r_lo)
    passed = resid <= tol
    witness = None
    if not passed:
        k = int(np.argmax(np.abs(radii - r_bar)))
        witness = {"direction": dirs[k].tolist(), "radius": float(radii[k])}
    return Certification(passed, resid, witness, n_boundary,
                         {"center": c.tolist(), "radius": r_bar, "radial_spread": r_hi - r_lo, "tol": tol})


def theorem_aux(K, H_normal, p, n_axes=8, n_planes=24, tol=1e-6, m=360):
    """If all sampled lines of ``H`` through ``p`` are axes, certify the orthogonal axis.

    Returns ``(axes_certification, revolution_certification or None)``.
    """
    n = unit(H_normal)
    p = np.asarray(p, dtype=float)
    a = np.cross(n, [1.0, 0.0, 0.0])
    if np.linalg.norm(a) < 1e-6:
        a = np.cross(n, [0.0, 1.0, 0.0])
    a = unit(a)
    b = np.cross(n, a)
    results = []
    for k in range(n_axes):
        t = math.pi * k / n_axes
        L = LineD(p, math.cos(t) * a + math.sin(t) * b)
        cert = is_axis_of_symmetry(K, L, n_planes, tol, m)
        results.append((cert.residual, {"axis_angle": t, "inner": cert.witness, "residual": cert.residual}))
    axes = _worst(results, n_axes * n_planes * m, tol)
    if not axes.passed:
        return axes, None
    return axes, certify_body_of_revolution(K, LineD(p, n), n_planes, tol, m)


def safe_section(K, plane, m):
    """Section or ``None`` with the reason, for surveys that tolerate skips."""
    try:
        return section(K, plane, m), None
    except (EmptySectionError, IllConditionedError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def pinned_line(P, q=None, direction=None, tol=1e-6):
    """Symmetry line pinned at a point (frame coords) or to a direction (angle)."""
    if direction is not None:
        return find_symmetry_line_with_direction(P, direction, tol)
    return find_symmetry_line_through_point(P, q, tol)
