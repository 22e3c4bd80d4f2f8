"""Sections and orthogonal projections of support-function bodies.

A section ``K ∩ {x.n = c}`` has support ``inf_t h_K(v - t n) + t c`` for
directions ``v`` in the plane; each infimum is a 1-D convex problem solved by
golden-section search on a bracket derived from the width of ``K``.
Projections need no optimization: the support is just ``h_K`` restricted to
the projection plane.
"""

import io
import math

import numpy as np
from scipy.interpolate import CubicSpline

from .bodies import Composite, ConvexBody
from .errors import EmptySectionError, IllConditionedError
from .geomcore import Frame, PlaneD, plane_frame, unit
from .numerics import golden_min

T_TOL = 1e-10
MAX_BRACKET_RATIO = 1e6


def section_margins(support, plane):
    n = plane.normal
    hn = float(support(n[None, :])[0])
    hmn = float(support(-n[None, :])[0])
    return hn - plane.offset, hmn + plane.offset


def section_support(support, plane, dirs, width_min=0.0):
    """Support of ``K ∩ plane`` at in-plane directions ``dirs`` (shape (N, d)).

    ``support`` is the (vectorized, homogeneous) support function of ``K``.
    Raises EmptySectionError when the plane misses the interior by the
    ``width_min`` margin, IllConditionedError when the search bracket would
    exceed 10^6 times the section width.
    """
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    n, c = plane.normal, plane.offset
    m_plus, m_minus = section_margins(support, plane)
    if min(m_plus, m_minus) < width_min or min(m_plus, m_minus) <= 0:
        raise EmptySectionError(
            f"plane misses the interior (margins {m_plus:.3g}, {m_minus:.3g}, need {width_min:.3g})")
    w = support(dirs) + support(-dirs)
    if np.max(w) / min(m_plus, m_minus) > MAX_BRACKET_RATIO:
        raise IllConditionedError("section bracket exceeds 1e6: plane nearly tangent")
    pad = 1.0 + 1e-9
    lo = -pad * w / m_plus - 1e-12
    hi = pad * w / m_minus + 1e-12

    def phi(t):
        return support(dirs - t[:, None] * n) + t * c

    _, val = golden_min(phi, lo, hi, tol=T_TOL)
    return val


def _angle_dirs(angles):
    angles = np.asarray(angles, dtype=float)
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


class PlanarBody:
    """A planar convex body sampled by its support function in a frame.

    ``angles`` are the m uniform directions ``2 pi j / m`` (frame
    coordinates), ``h`` the support values about the frame origin, and
    ``boundary`` the counterclockwise vertices of the circumscribed polygon
    cut out by consecutive support lines.  ``support_fn`` (optional) gives
    exact support values at arbitrary angles; otherwise a periodic cubic
    spline of the samples is used.
    """

    def __init__(self, h, frame=None, support_fn=None):
        self.h = np.asarray(h, dtype=float)
        m = len(self.h)
        if m < 8:
            raise ValueError("need at least 8 support samples")
        self.m = m
        self.angles = 2.0 * math.pi * np.arange(m) / m
        self.frame = frame
        self.support_fn = support_fn
        self._spline = CubicSpline(np.append(self.angles, 2.0 * math.pi),
                                   np.append(self.h, self.h[0]), bc_type="periodic")
        self.boundary = self._envelope()

    @classmethod
    def from_support(cls, fn, m=720, frame=None):
        angles = 2.0 * math.pi * np.arange(m) / m
        return cls(fn(angles), frame, fn)

    def _envelope(self):
        a0 = self.angles
        a1 = np.roll(a0, -1)
        h0, h1 = self.h, np.roll(self.h, -1)
        det = np.sin(a1 - a0)
        det[-1] = math.sin(2.0 * math.pi / self.m)
        x = (h0 * np.sin(a1) - h1 * np.sin(a0)) / det
        y = (h1 * np.cos(a0) - h0 * np.cos(a1)) / det
        return np.column_stack([x, y])

    def support_at(self, angles):
        return self._spline(np.mod(angles, 2.0 * math.pi))

    def exact_support(self, angles):
        if self.support_fn is None:
            return self.support_at(angles)
        return np.asarray(self.support_fn(np.mod(np.asarray(angles, dtype=float), 2.0 * math.pi)))

    def support_vec(self, v):
        """Homogeneous support on 2-vectors (lets a planar body be sliced again)."""
        v = np.asarray(v, dtype=float)
        r = np.linalg.norm(v, axis=-1)
        return r * self.exact_support(np.arctan2(v[..., 1], v[..., 0]))

    def steiner_point(self):
        d = _angle_dirs(self.angles)
        return 2.0 / self.m * (self.h @ d)

    def circumradius(self):
        return float(np.max(np.abs(self.h)))

    def convexity_defect(self):
        """Most negative turn (cross product of consecutive edges)."""
        p = self.boundary
        e = np.roll(p, -1, axis=0) - p
        f = np.roll(e, -1, axis=0)
        cross = e[:, 0] * f[:, 1] - e[:, 1] * f[:, 0]
        return float(min(cross.min(), 0.0))

    def to_world(self, coords):
        if self.frame is None:
            raise ValueError("planar body has no embedding frame")
        return self.frame.to_world(coords)

    def to_csv(self):
        buf = io.StringIO()
        buf.write("# tomoscope planar v1\n")
        buf.write("theta,h,x,y\n")
        for t, hv, (x, y) in zip(self.angles, self.h, self.boundary):
            buf.write(f"{t!r},{hv!r},{x!r},{y!r}\n")
        return buf.getvalue()


def section(K: ConvexBody, plane: PlaneD, m=360):
    """Planar section ``plane ∩ K`` of a 3-body, in the plane's default frame."""
    if K.dim != 3:
        raise ValueError("section() takes a 3-body; use hypersection() in R^4")
    frame = plane_frame(plane)
    width_min = K.width_min

    def fn(angles):
        dirs = frame.directions(_angle_dirs(angles))
        return section_support(K.support, plane, dirs, width_min)

    return PlanarBody.from_support(fn, m, frame)


def project(K: ConvexBody, u, m=360):
    """Orthogonal projection of a 3-body onto ``u^⊥``."""
    if K.dim != 3:
        raise ValueError("project() takes a 3-body; use hyperproject() in R^4")
    frame = plane_frame(PlaneD(unit(u), 0.0))

    def fn(angles):
        return K.support(frame.directions(_angle_dirs(angles)))

    return PlanarBody.from_support(fn, m, frame)


def hypersection(K4: ConvexBody, plane: PlaneD):
    """3-dimensional section of a 4-body, expressed in the hyperplane's frame."""
    if K4.dim != 4 or plane.dim != 4:
        raise ValueError("hypersection() needs a 4-body and a hyperplane of R^4")
    m_plus, m_minus = section_margins(K4.support, plane)
    if min(m_plus, m_minus) < K4.width_min:
        raise EmptySectionError("hyperplane misses the interior of the body")
    frame = plane_frame(plane)
    width_min = K4.width_min

    def h(v):
        return section_support(K4.support, plane, v @ frame.basis, width_min)

    def contains(x):
        return K4.contains(frame.to_world(x))

    body = Composite(3, h, K4.circumradius_bound, 0.0, contains_fn=contains,
                     label=f"section of {K4.label}")
    body.frame = frame
    body.parent = K4
    return body


def hyperproject(K4: ConvexBody, u):
    """Orthogonal projection of a 4-body onto ``u^⊥`` as a 3-body."""
    if K4.dim != 4:
        raise ValueError("hyperproject() needs a 4-body")
    frame = plane_frame(PlaneD(unit(u), 0.0))

    def h(v):
        return K4.support(v @ frame.basis)

    body = Composite(3, h, K4.circumradius_bound, K4.inradius_bound,
                     label=f"projection of {K4.label}")
    body.frame = frame
    body.parent = K4
    return body


def line_section_extent(P: PlanarBody, normal2, offset):
    """Chord ``P ∩ {y.normal2 = offset}`` as ``(t_lo, t_hi)`` along the chord direction.

    The chord direction is ``normal2`` rotated by +90 degrees.
    """
    n = unit(normal2)
    d = np.array([-n[1], n[0]])
    plane = PlaneD(n, offset)
    vals = section_support(P.support_vec, plane, np.stack([d, -d]), 0.0)
    return -vals[1], vals[0]


# planar fixtures ------------------------------------------------------------

def planar_ellipse(a, b, center=(0.0, 0.0), angle=0.0, m=720):
    c = np.asarray(center, dtype=float)

    def fn(t):
        s = np.asarray(t) - angle
        return np.sqrt((a * np.cos(s)) ** 2 + (b * np.sin(s)) ** 2) + c[0] * np.cos(t) + c[1] * np.sin(t)

    return PlanarBody.from_support(fn, m)


def planar_disc(r=1.0, center=(0.0, 0.0), m=720):
    return planar_ellipse(r, r, center, 0.0, m)


def planar_from_harmonics(coeffs, m=720):
    """Planar body with support ``1 + sum_k a_k cos(k t) + b_k sin(k t)``.

    ``coeffs`` maps ``k -> (a_k, b_k)``; the caller keeps ``h + h'' > 0``.
    """

    def fn(t):
        t = np.asarray(t, dtype=float)
        out = np.ones_like(t)
        for k, (ak, bk) in coeffs.items():
            out = out + ak * np.cos(k * t) + bk * np.sin(k * t)
        return out

    return PlanarBody.from_support(fn, m)
