"""Result records of the tomography layer."""

from dataclasses import dataclass, field
import enum
import io
import math

import numpy as np


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return x


@dataclass
class Certification:
    passed: bool
    residual: float
    witness: dict = None
    samples_used: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failed certification must carry a witness")

    @property
    def verdict(self):
        return "Pass" if self.passed else "Fail"

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "residual": float(self.residual),
            "witness": _jsonable(self.witness),
            "samples_used": int(self.samples_used),
            "details": _jsonable(self.details),
        }


class Verdict(str, enum.Enum):
    SPHERE_CERTIFIED = "SphereCertified"
    REVOLUTION_CERTIFIED = "RevolutionCertified"
    HYPOTHESIS_FAILED = "HypothesisFailed"
    CONCLUSION_FAILED = "ConclusionFailed"

    @property
    def certified(self):
        return self in (Verdict.SPHERE_CERTIFIED, Verdict.REVOLUTION_CERTIFIED)


@dataclass
class Decision:
    """Outcome of a theorem pipeline: the hypothesis check and the conclusion check."""

    verdict: Verdict
    residual: float
    witness: dict = None
    hypothesis: object = None
    conclusion: object = None
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "residual": float(self.residual),
            "witness": _jsonable(self.witness),
            "hypothesis": _jsonable(self.hypothesis),
            "conclusion": _jsonable(self.conclusion),
            "details": _jsonable(self.details),
        }


@dataclass
class PlaneSymmetryRecord:
    plane: object
    q_pin: np.ndarray = None
    found: object = None          # Line2 in the plane frame
    residual: float = math.inf
    passed: bool = False
    D_line: object = None
    E_line: object = None
    E_residual: float = None
    theta: float = None
    phi: float = None
    pin: str = "point"            # "point", "direction" or "any"
    skipped: str = None           # reason when the section could not be formed

    def to_dict(self):
        return {
            "plane": {"normal": self.plane.normal.tolist(), "offset": self.plane.offset},
            "q_pin": None if self.q_pin is None else np.asarray(self.q_pin).tolist(),
            "found": None if self.found is None else self.found.to_dict(),
            "residual": float(self.residual),
            "passed": self.passed,
            "D_line": None if self.D_line is None else self.D_line.to_dict(),
            "E_line": None if self.E_line is None else self.E_line.to_dict(),
            "E_residual": self.E_residual,
            "theta": self.theta,
            "phi": self.phi,
            "pin": self.pin,
            "skipped": self.skipped,
        }


@dataclass
class FGProfile:
    theta: float
    phi_grid: list
    f: list
    g: list
    signed_f: list
    z: list
    case_one: list
    q_theta: np.ndarray
    m_theta: np.ndarray
    zeros: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def case_one_fraction(self):
        return float(np.mean(self.case_one)) if self.case_one else 0.0

    def to_dict(self):
        return {
            "theta": self.theta,
            "phi_grid": list(map(float, self.phi_grid)),
            "f": [float(v) for v in self.f],
            "signed_f": [float(v) if math.isfinite(v) else None for v in self.signed_f],
            "g": [float(v) if math.isfinite(v) else None for v in self.g],
            "zeros": [float(v) for v in self.zeros],
            "case_one_fraction": self.case_one_fraction,
            "q_theta": None if self.q_theta is None else np.asarray(self.q_theta).tolist(),
            "m_theta": None if self.m_theta is None else np.asarray(self.m_theta).tolist(),
        }

    CSV_COLUMNS = ("phi", "f", "signed_f", "g", "z_x", "z_y", "z_z", "case_one")

    def to_csv(self):
        buf = io.StringIO()
        buf.write("# tomoscope fg-profile v1 theta=%r\n" % self.theta)
        buf.write(",".join(self.CSV_COLUMNS) + "\n")
        for phi, f, sf, g, z, c1 in zip(self.phi_grid, self.f, self.signed_f, self.g, self.z, self.case_one):
            zz = [math.nan] * 3 if z is None else list(z)
            buf.write(",".join(repr(float(v)) for v in (phi, f, sf, g, *zz)) + f",{int(c1)}\n")
        return buf.getvalue()


@dataclass
class MidpointLocus:
    anchor: np.ndarray
    points: np.ndarray
    best_plane: object
    planarity_residual: float
    spans_sphere: bool = False

    CSV_COLUMNS = ("x", "y", "z")

    def to_csv(self):
        buf = io.StringIO()
        buf.write("# tomoscope midpoint-locus v1\n")
        buf.write(",".join(self.CSV_COLUMNS) + "\n")
        for p in self.points:
            buf.write(",".join(repr(float(v)) for v in p) + "\n")
        return buf.getvalue()

    def to_dict(self):
        return {
            "anchor": self.anchor.tolist(),
            "n_points": int(len(self.points)),
            "best_plane": None if self.best_plane is None else {
                "normal": self.best_plane.normal.tolist(), "offset": self.best_plane.offset},
            "planarity_residual": self.planarity_residual,
            "spans_sphere": self.spans_sphere,
        }


@dataclass
class ShadowBoundary:
    direction: np.ndarray
    points: np.ndarray
    best_plane: object
    planarity_residual: float
    central_plane_residual: float = None

    def to_dict(self):
        return {
            "direction": self.direction.tolist(),
            "n_points": int(len(self.points)),
            "best_plane": {"normal": self.best_plane.normal.tolist(), "offset": self.best_plane.offset},
            "planarity_residual": self.planarity_residual,
            "central_plane_residual": self.central_plane_residual,
        }
