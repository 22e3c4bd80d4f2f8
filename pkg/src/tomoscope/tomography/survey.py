"""Constrained symmetry survey over the two-angle family of planes through p.

Coordinates: ``p`` is the base point, ``e1`` the direction of the line
``Λ = L(o, p)`` (of ``L`` itself when ``p = o``), ``e3`` the normal of the
plane ``Ω`` spanned by ``o`` and ``L``, and ``e2 = e3 x e1``.  ``L(θ)`` is
the line through ``p`` in ``Ω`` at angle ``θ`` from ``e1``, and ``Ω(θ,φ)``
the plane containing ``L(θ)`` tilted by ``φ`` out of ``Ω``.
"""

from dataclasses import dataclass
import math

import numpy as np

from ..errors import ConfigurationInvalidError, MissingLinesError
from ..geomcore import LineD, PlaneD, angular_distance_mod_pi, reflect_point_about_line, reflection_matrix_about_line, unit
from ..numerics import pmap
from .certify import pinned_line, require_interior, safe_section
from .records import FGProfile, PlaneSymmetryRecord

PARALLEL_TOL = 1e-9
CASE_ONE_TOL = 1e-4
PHI_TOL = 1e-7


def theta_grid(n):
    return -math.pi / 2 + (np.arange(n) + 0.5) * math.pi / n


def phi_grid(n):
    return (np.arange(n) + 0.5) * math.pi / n


@dataclass(frozen=True)
class SurveyFrame:
    o: np.ndarray
    p: np.ndarray
    L: LineD
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    M: LineD

    @classmethod
    def build(cls, o, p, L, tol=1e-9):
        o = np.asarray(o, dtype=float)
        p = np.asarray(p, dtype=float)
        if float(L.distance(o)) <= tol:
            raise ConfigurationInvalidError("the center o lies on L")
        if float(L.distance(p)) <= tol:
            raise ConfigurationInvalidError("p lies on L")
        e3 = unit(np.cross(L.dir, L.point - o))
        if abs(float((p - o) @ e3)) > 1e-6 * max(1.0, np.linalg.norm(p - o)):
            raise ConfigurationInvalidError("p is not in the plane spanned by o and L")
        if np.linalg.norm(p - o) <= tol:
            e1 = L.dir.copy()
        else:
            e1 = unit(p - o)
        e1 = unit(e1 - (e1 @ e3) * e3)
        e2 = np.cross(e3, e1)
        lam = LineD(o, e1)
        M = LineD(reflect_point_about_line(lam, L.point), reflection_matrix_about_line(e1) @ L.dir)
        return cls(o, p, L, e1, e2, e3, M)

    def direction(self, theta):
        return math.cos(theta) * self.e1 + math.sin(theta) * self.e2

    def plane(self, theta, phi):
        d = self.direction(theta)
        w = np.cross(self.e3, d)
        return PlaneD.through(self.p, math.cos(phi) * self.e3 - math.sin(phi) * w)

    def line_theta(self, theta):
        return LineD(self.p, self.direction(theta))

    def _meet(self, theta, line):
        """Point of ``L(θ) ∩ line`` (both in ``Ω``), or ``None`` when parallel."""
        d = self.direction(theta)
        a = np.array([[d @ self.e1, -(line.dir @ self.e1)], [d @ self.e2, -(line.dir @ self.e2)]])
        if abs(np.linalg.det(a)) <= PARALLEL_TOL:
            return None
        rhs = line.point - self.p
        s, _ = np.linalg.solve(a, np.array([rhs @ self.e1, rhs @ self.e2]))
        return self.p + s * d

    def q(self, theta):
        return self._meet(theta, self.L)

    def m(self, theta):
        return self._meet(theta, self.M)


def _local_angle(frame, direction):
    v = frame.basis @ direction
    return math.atan2(v[1], v[0])


def _pin(P, point, line, tol):
    """Pinned search at ``point``, or to the direction of ``line`` if ``point`` is None."""
    if point is None:
        return pinned_line(P, direction=_local_angle(P.frame, line.dir), tol=tol), "direction"
    return pinned_line(P, q=P.frame.to_local(point), tol=tol), "point"


def survey_record(K, sf, theta, phi, tol, m=360, with_e=False):
    plane = sf.plane(theta, phi)
    rec = PlaneSymmetryRecord(plane=plane, theta=float(theta), phi=float(phi))
    P, reason = safe_section(K, plane, m)
    if P is None:
        rec.skipped = reason
        return rec, None
    q = sf.q(theta)
    rec.q_pin = q
    D, rec.pin = _pin(P, q, sf.L, tol)
    rec.found = D.line
    rec.D_line = D.line
    rec.residual = D.residual
    rec.passed = D.found
    if with_e:
        E, _ = _pin(P, sf.m(theta), sf.M, tol)
        rec.E_line = E.line
        rec.E_residual = E.residual
    return rec, P


def constrained_symmetry_survey(K, p, L, n_theta=36, n_phi=36, tol=1e-6, m=360, o=None,
                                with_e=False, thetas=None, phis=None, stop_on_fail=False):
    """Symmetry lines of the sections ``K(θ,φ)`` pinned at ``q(θ) = L(θ) ∩ L``.

    Planes parallel to ``L`` pin the direction of ``L`` instead.  With
    ``with_e`` each record also carries the line pinned at ``m(θ)``, the
    meet of ``L(θ)`` with the mirror image of ``L`` in ``Λ``.  With
    ``stop_on_fail`` the grid is walked in order and the survey ends at
    the first failing record.
    """
    p = require_interior(K, p)
    o = np.zeros(3) if o is None else np.asarray(o, dtype=float)
    sf = SurveyFrame.build(o, p, L)
    thetas = theta_grid(n_theta) if thetas is None else np.asarray(thetas, dtype=float)
    phis = phi_grid(n_phi) if phis is None else np.asarray(phis, dtype=float)
    grid = [(t, f) for t in thetas for f in phis]
    if stop_on_fail:
        out = []
        for t, f in grid:
            out.append(survey_record(K, sf, t, f, tol, m, with_e)[0])
            if out[-1].skipped is None and not out[-1].passed:
                break
        return out
    return pmap(lambda tf: survey_record(K, sf, tf[0], tf[1], tol, m, with_e)[0], grid)


def survey_summary(records):
    done = [r for r in records if r.skipped is None]
    worst = max(done, key=lambda r: r.residual) if done else None
    return {
        "planes": len(records),
        "skipped": len(records) - len(done),
        "passed": sum(r.passed for r in done),
        "worst_residual": None if worst is None else float(worst.residual),
    }


def _fg_point(K, sf, theta, phi, tol, m):
    """``(signed f, g, z, case_one, record)`` for one plane ``Ω(θ,φ)``."""
    rec, P = survey_record(K, sf, theta, phi, tol, m, with_e=True)
    if rec.skipped is not None or rec.D_line is None or rec.E_line is None:
        raise MissingLinesError(f"no symmetry lines for plane (theta={theta}, phi={phi})")
    D, E = rec.D_line, rec.E_line
    ref = _local_angle(P.frame, sf.direction(theta))
    case_one = bool(angular_distance_mod_pi(D.angle, ref) <= CASE_ONE_TOL
                    and angular_distance_mod_pi(E.angle, ref) <= CASE_ONE_TOL)
    g = float(angular_distance_mod_pi(D.angle, E.angle))
    g = math.pi if g == 0.0 else g
    if case_one:
        return 0.0, g, P.frame.to_world(D.point), True, rec
    z_loc = D.intersect(E)
    if z_loc is None:
        return math.nan, g, None, False, rec
    base = P.frame.to_local(sf.p)
    normal = np.array([-math.sin(ref), math.cos(ref)])
    return float((z_loc - base) @ normal), g, P.frame.to_world(z_loc), False, rec


def fg_profile(K, p, L, theta, phis=None, n_phi=36, tol=1e-6, m=360, o=None, locate_zeros=True):
    """Distance ``f`` of ``z = D ∩ E`` to ``L(θ)`` and angle ``g`` between ``D`` and ``E``.

    ``signed_f`` carries the side of ``L(θ)`` on which ``z`` lies; its sign
    changes on the grid are refined by bisection in ``φ`` and returned as
    ``zeros``.  Records where both lines coincide with ``L(θ)`` are
    flagged ``case_one`` and count as zeros of ``f``.
    """
    p = require_interior(K, p)
    o = np.zeros(3) if o is None else np.asarray(o, dtype=float)
    sf = SurveyFrame.build(o, p, L)
    phis = phi_grid(n_phi) if phis is None else np.asarray(phis, dtype=float)
    rows = pmap(lambda f: _fg_point(K, sf, theta, f, tol, m), phis)
    sf_vals = [r[0] for r in rows]
    prof = FGProfile(
        theta=float(theta),
        phi_grid=[float(x) for x in phis],
        f=[abs(v) if math.isfinite(v) else math.inf for v in sf_vals],
        g=[r[1] for r in rows],
        signed_f=sf_vals,
        z=[r[2] for r in rows],
        case_one=[r[3] for r in rows],
        q_theta=sf.q(theta),
        m_theta=sf.m(theta),
        records=[r[4] for r in rows],
    )
    if locate_zeros:
        prof.zeros = _zeros(lambda f: _fg_point(K, sf, theta, f, tol, m)[0], phis, sf_vals)
    return prof


def _zeros(fn, xs, vals):
    out = []
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if a == 0.0:
            out.append(float(xs[i]))
            continue
        if a * b > 0:
            continue
        lo, hi, f_lo = float(xs[i]), float(xs[i + 1]), a
        while hi - lo > PHI_TOL:
            mid = 0.5 * (lo + hi)
            fm = fn(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if not math.isfinite(fm):
                break
            if (fm > 0) == (f_lo > 0):
                lo, f_lo = mid, fm
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
    if vals and vals[-1] == 0.0:
        out.append(float(xs[-1]))
    return out
