"""Point tests, certifications, diagnostic loci and the decision pipelines."""

from .certify import (
    certify_body_of_revolution,
    certify_sphere,
    is_axis_of_symmetry,
    larman_point_test,
    revolution_point_test,
)
from .loci import midpoint_locus, shadow_boundary
from .records import Certification, Decision, FGProfile, MidpointLocus, PlaneSymmetryRecord, ShadowBoundary, Verdict
from .survey import SurveyFrame, constrained_symmetry_survey, fg_profile, survey_summary
from .theorems import theorem1_decide, theorem2_decide, theorem3_decide, theorem45_decide, theorem7_decide
