"""Decision pipelines: check the hypotheses numerically, then the conclusion.

Each pipeline returns a Decision.  ``HYPOTHESIS_FAILED`` carries the plane
or direction that broke the hypothesis; ``CONCLUSION_FAILED`` means the
hypotheses passed but the predicted structure was not found, which on a
correct theorem signals a tolerance or sampling problem, or a fixture
outside the theorem's scope.
"""

import math

import numpy as np

from ..bodies import central_symmetry, unique_diameter
from ..config import Budgets, ToleranceLadder
from ..errors import ConfigurationInvalidError, EmptySectionError, IllConditionedError
from ..geomcore import LineD, PlaneD, unit
from ..numerics import fibonacci_sphere, orthonormal_complement, pmap, sphere_points
from ..slicing import hyperproject, hypersection, project
from ..symmetry2d import find_symmetry_line_through_point, find_symmetry_line_with_direction
from .certify import (
    _worst,
    certify_body_of_revolution,
    certify_sphere,
    is_axis_of_symmetry,
    plane_dict,
    planes_through,
    require_interior,
    revolution_point_test,
    safe_section,
)
from .records import Certification, Decision, Verdict
from .survey import SurveyFrame, constrained_symmetry_survey, survey_summary

SAME_POINT_TOL = 1e-9
PARALLEL_TOL = 1e-9


def _center(K, tol):
    """Center of a centrally symmetric body; ``None`` with the residual otherwise."""
    c, resid = central_symmetry(K)
    return (c if resid <= tol else None), resid


def _not_symmetric(resid):
    w = {"central_symmetry_residual": resid}
    hyp = Certification(False, resid, w, 0, {"check": "central symmetry"})
    return Decision(Verdict.HYPOTHESIS_FAILED, resid, w, hyp)


def _conclude(hyp, concl, verdict):
    if concl.passed:
        return Decision(verdict, concl.residual, None, hyp, concl)
    return Decision(Verdict.CONCLUSION_FAILED, concl.residual, concl.witness, hyp, concl)


# pinned sections: sphere or revolution -------------------------------------------------------------------

def theorem1_decide(K, p, L, tols=None, budgets=None, stop_on_fail=True):
    """Constrained sections through ``p`` pinned on ``L`` force a sphere (``p != o``)
    or a body of revolution with axis ``⊥ Ω`` through ``o`` (``p = o``).
    """
    tols = tols or ToleranceLadder()
    budgets = budgets or Budgets()
    tol = tols.for_body(K)
    o, sym = _center(K, tol)
    if o is None:
        return _not_symmetric(sym)
    p = np.asarray(p, dtype=float)
    sf = SurveyFrame.build(o, p, L)
    same = np.linalg.norm(p - o) <= SAME_POINT_TOL
    if not same and abs(float(unit(p - o) @ L.dir)) <= PARALLEL_TOL:
        raise ConfigurationInvalidError("the line op is perpendicular to L")
    require_interior(K, p)
    records = constrained_symmetry_survey(K, p, L, budgets.n_theta, budgets.n_phi, tol, budgets.m,
                                          o=o, stop_on_fail=stop_on_fail)
    summary = survey_summary(records)
    failing = [r for r in records if r.skipped is None and not r.passed]
    if failing:
        worst = max(failing, key=lambda r: r.residual)
        w = worst.to_dict()
        hyp = Certification(False, worst.residual, w, len(records) * budgets.m, summary)
        return Decision(Verdict.HYPOTHESIS_FAILED, worst.residual, w, hyp)
    hyp = Certification(True, summary["worst_residual"] or 0.0, None, len(records) * budgets.m, summary)
    if same:
        axis = LineD(o, sf.e3)
        concl = certify_body_of_revolution(K, axis, budgets.n_planes, tol, budgets.m)
        return _conclude(hyp, concl, Verdict.REVOLUTION_CERTIFIED)
    concl = certify_sphere(K, tol, budgets.n_boundary)
    return _conclude(hyp, concl, Verdict.SPHERE_CERTIFIED)


# revolution points ---------------------------------------------------

def theorem2_decide(K, p, tols=None, budgets=None, q=None):
    """A revolution point ``p != o`` makes ``K`` a body of revolution about ``L(o, p)``.

    With a second revolution point ``q`` (``o`` off ``L(p, q)``) the body
    must be a sphere.
    """
    tols = tols or ToleranceLadder()
    budgets = budgets or Budgets()
    tol = tols.for_body(K)
    o, sym = _center(K, tol)
    if o is None:
        return _not_symmetric(sym)
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p - o) <= SAME_POINT_TOL:
        raise ConfigurationInvalidError("p coincides with the center o")
    if q is not None:
        q = np.asarray(q, dtype=float)
        if np.linalg.norm(q - o) <= SAME_POINT_TOL or np.linalg.norm(q - p) <= SAME_POINT_TOL:
            raise ConfigurationInvalidError("q must differ from o and p")
        if float(LineD.through(p, q).distance(o)) <= SAME_POINT_TOL:
            raise ConfigurationInvalidError("o lies on the line through p and q")
    hyp = revolution_point_test(K, p, budgets.n_planes, tol, budgets.m)
    if q is not None and hyp.passed:
        hyp_q = revolution_point_test(K, q, budgets.n_planes, tol, budgets.m)
        if not hyp_q.passed or hyp_q.residual > hyp.residual:
            hyp = Certification(hyp_q.passed, hyp_q.residual, hyp_q.witness, hyp.samples_used + hyp_q.samples_used,
                                dict(hyp_q.details, point="q"))
    if not hyp.passed:
        return Decision(Verdict.HYPOTHESIS_FAILED, hyp.residual, hyp.witness, hyp)
    if q is not None:
        concl = certify_sphere(K, tol, budgets.n_boundary)
        return _conclude(hyp, concl, Verdict.SPHERE_CERTIFIED)
    axis = LineD.through(o, p)
    concl = certify_body_of_revolution(K, axis, budgets.n_planes, tol, budgets.m)
    return _conclude(hyp, concl, Verdict.REVOLUTION_CERTIFIED)


# projections symmetric about lines meeting L ------------------------------------------------------------------------

def projection_directions(L, n_dirs, n_parallel=4):
    """Fibonacci directions plus ``n_parallel`` directions orthogonal to ``L``."""
    dirs = list(fibonacci_sphere(n_dirs, hemisphere=True))
    a, b = orthonormal_complement(L.dir, 3)
    for k in range(n_parallel):
        t = math.pi * (k + 0.5) / n_parallel
        dirs.append(math.cos(t) * a + math.sin(t) * b)
    return np.array(dirs)


def theorem3_decide(K, L, tols=None, budgets=None, n_dirs=None):
    """Every projection has a symmetry line meeting ``L`` (parallel to ``L``
    when the projection plane is) forces a body of revolution about ``L``.
    """
    tols = tols or ToleranceLadder()
    budgets = budgets or Budgets()
    tol = tols.for_body(K)
    n_dirs = budgets.n_dirs if n_dirs is None else n_dirs
    dirs = projection_directions(L, n_dirs)

    def one(u):
        P = project(K, u, budgets.m)
        plane = PlaneD(u, 0.0)
        hit = plane.meet_line(L, tol=PARALLEL_TOL)
        if hit is None:
            v = P.frame.basis @ L.dir
            best = find_symmetry_line_with_direction(P, math.atan2(v[1], v[0]), tol)
            pin = "direction"
        else:
            best = find_symmetry_line_through_point(P, P.frame.to_local(hit), tol)
            pin = "point"
        return best.residual, {"direction": u.tolist(), "pin": pin, "line": best.line.to_dict(),
                               "residual": best.residual}

    hyp = _worst(pmap(one, dirs), len(dirs) * budgets.m, tol)
    if not hyp.passed:
        return Decision(Verdict.HYPOTHESIS_FAILED, hyp.residual, hyp.witness, hyp)
    concl = certify_body_of_revolution(K, L, budgets.n_planes, tol, budgets.m)
    return _conclude(hyp, concl, Verdict.REVOLUTION_CERTIFIED)


# dimension four: sections and projections -----------------------------------------------------------

def _local_axis(frame, D):
    """Orthogonal projection of the line ``D`` into a hyperplane frame (3-D coords)."""
    point = frame.to_local(D.point)
    direction = frame.basis @ D.dir
    if np.linalg.norm(direction) <= 1e-9:
        return None
    return LineD(point, direction)


def _revolution_3d(S, axis, budgets, tol):
    """3-D revolution certificate of a section or projection, or a failing stub."""
    if axis is None:
        return Certification(False, math.inf, {"reason": "diameter orthogonal to the hyperplane"}, 0)
    return certify_body_of_revolution(S, axis, budgets.n_sub_planes, tol, budgets.m_sub)


def theorem45_decide(K4, mode="sections", p=None, tols=None, budgets=None):
    """Hypersections through ``p`` (or projections along ``D^⊥``) that are
    3-bodies of revolution force ``K4`` to be a body of revolution about
    its unique diameter ``D``.
    """
    tols = tols or ToleranceLadder()
    budgets = budgets or Budgets()
    tol = tols.hyper_axis
    if K4.dim != 4:
        raise ConfigurationInvalidError("theorem45 needs a body in R^4")
    seg = unique_diameter(K4)
    D = seg.line
    n = budgets.n_hyperplanes
    if mode == "sections":
        if p is None:
            raise ConfigurationInvalidError("sections mode needs a point p")
        p = require_interior(K4, p)
        # the diameter direction is only known to ~1e-8 (the width is flat at its max)
        if float(D.distance(p)) <= 1e-6 * K4.circumradius_bound:
            raise ConfigurationInvalidError("p lies on the diameter")
        normals = sphere_points(n, 4, seed=budgets.seed)

        def one(normal):
            plane = PlaneD.through(p, normal)
            try:
                S = hypersection(K4, plane)
            except (EmptySectionError, IllConditionedError) as exc:
                return math.inf, {"plane": plane_dict(plane), "reason": str(exc)}
            cert = _revolution_3d(S, _local_axis(S.frame, D), budgets, tol)
            return cert.residual, {"plane": plane_dict(plane), "inner": cert.witness, "residual": cert.residual}

        items = normals
    elif mode == "projections":
        basis = orthonormal_complement(D.dir, 4)
        coeffs = fibonacci_sphere(n)
        items = coeffs @ basis

        def one(u):
            S = hyperproject(K4, u)
            cert = _revolution_3d(S, _local_axis(S.frame, D), budgets, tol)
            return cert.residual, {"direction": np.asarray(u).tolist(), "inner": cert.witness,
                                   "residual": cert.residual}
    else:
        raise ConfigurationInvalidError(f"unknown mode {mode!r}")
    hyp = _worst(pmap(one, items), len(items), tol, {"mode": mode, "diameter": seg.to_dict()})
    if not hyp.passed:
        return Decision(Verdict.HYPOTHESIS_FAILED, hyp.residual, hyp.witness, hyp)
    concl = certify_revolution_4d(K4, D, budgets, tol)
    return _conclude(hyp, concl, Verdict.REVOLUTION_CERTIFIED)


def certify_revolution_4d(K4, D, budgets, tol):
    """Hyperplane sections orthogonal to ``D`` must be 3-balls centered on ``D``."""
    d = D.dir
    hi, lo = float(K4.support(d)), -float(K4.support(-d))
    pad = 0.05 * (hi - lo)
    k = budgets.n_sub_planes
    offsets = lo + pad + (hi - lo - 2 * pad) * (np.arange(k) + 0.5) / k

    def one(c):
        plane = PlaneD(d, c)
        S = hypersection(K4, plane)
        foot = plane.meet_line(D)
        cert = certify_sphere(S, tol, 2000, center=S.frame.to_local(foot), method="support")
        return cert.residual, {"plane": plane_dict(plane), "residual": cert.residual}

    return _worst(pmap(one, offsets), k * 2000, tol,
                  {"axis": {"point": D.point.tolist(), "direction": D.dir.tolist()}})


# axis through o plus sections through p ---------------------------------------------------------------------------

def theorem7_decide(K, p, L, tols=None, budgets=None):
    """``L`` an axis through ``o`` plus sections through ``p`` symmetric about
    lines through ``Π ∩ L`` force a body of revolution about ``L``.
    """
    tols = tols or ToleranceLadder()
    budgets = budgets or Budgets()
    tol = tols.for_body(K)
    o, sym = _center(K, tol)
    if o is None:
        return _not_symmetric(sym)
    if float(L.distance(o)) > SAME_POINT_TOL:
        raise ConfigurationInvalidError("L must contain the center o")
    p = require_interior(K, p)
    if float(L.distance(p)) <= SAME_POINT_TOL:
        raise ConfigurationInvalidError("p lies on L")
    axis = is_axis_of_symmetry(K, L, budgets.n_planes, tol, budgets.m)
    if not axis.passed:
        return Decision(Verdict.HYPOTHESIS_FAILED, axis.residual, axis.witness, axis)

    def one(plane):
        P, reason = safe_section(K, plane, budgets.m)
        if P is None:
            return -math.inf, {"plane": plane_dict(plane), "skipped": reason}
        hit = plane.meet_line(L, tol=PARALLEL_TOL)
        if hit is None:
            v = P.frame.basis @ L.dir
            best = find_symmetry_line_with_direction(P, math.atan2(v[1], v[0]), tol)
        else:
            best = find_symmetry_line_through_point(P, P.frame.to_local(hit), tol)
        return best.residual, {"plane": plane_dict(plane), "line": best.line.to_dict(), "residual": best.residual}

    planes = planes_through(p, budgets.n_planes)
    hyp = _worst(pmap(one, planes), len(planes) * budgets.m, tol)
    if not hyp.passed:
        return Decision(Verdict.HYPOTHESIS_FAILED, hyp.residual, hyp.witness, hyp)
    concl = certify_body_of_revolution(K, L, budgets.n_planes, tol, budgets.m)
    return _conclude(hyp, concl, Verdict.REVOLUTION_CERTIFIED)
