"""Tolerance ladder and sampling budgets shared by the pipelines and the CLI."""

from dataclasses import asdict, dataclass, fields, replace
import json


@dataclass(frozen=True)
class ToleranceLadder:
    analytic: float = 1e-6      # certifications on smooth analytic bodies
    sampled: float = 5e-3       # non-smooth or sampled bodies (DiscHull)
    hyper_axis: float = 1e-5    # 3-D revolution certificates of 4-D sections
    case_one_angle: float = 1e-4
    closure: float = 1e-9

    def for_body(self, K):
        return self.sampled if getattr(K, "kind", "") == "DiscHull" else self.analytic


@dataclass(frozen=True)
class Budgets:
    m: int = 360                # support samples per planar section
    n_planes: int = 36          # planes per point test / certification
    n_theta: int = 36           # pinned-section survey grid
    n_phi: int = 36
    n_dirs: int = 64            # projection directions
    n_boundary: int = 10_000    # boundary samples for the sphere test
    n_hyperplanes: int = 64     # hyperplanes through p (R^4)
    n_sub_planes: int = 8       # planes per 3-D revolution certificate in R^4
    m_sub: int = 128            # support samples for those nested sections
    locus_circles: int = 24     # great circles for the midpoint locus
    locus_samples: int = 256
    seed: int = 4               # seeds the random 4-D hyperplane normals

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def load_config(path):
    """Read ``{"tolerances": {...}, "budgets": {...}}`` from a JSON file."""
    with open(path) as fh:
        raw = json.load(fh)
    unknown = set(raw) - {"tolerances", "budgets"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    tol_names = {f.name for f in fields(ToleranceLadder)}
    bud_names = {f.name for f in fields(Budgets)}
    tols = raw.get("tolerances", {})
    buds = raw.get("budgets", {})
    bad = (set(tols) - tol_names) | (set(buds) - bud_names)
    if bad:
        raise ValueError(f"unknown config keys: {sorted(bad)}")
    return ToleranceLadder(**tols), Budgets(**buds)


def as_dict(obj):
    return asdict(obj)
