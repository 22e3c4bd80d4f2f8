"""Sections, projections and rotational symmetry of convex bodies."""

from .bodies import ball, construct, ellipsoid, ellipsoid4, perturbed_ellipsoid, revolution, translate, two_disc_hull
from .config import Budgets, ToleranceLadder
from .geomcore import LineD, PlaneD, starline_generate
from .slicing import PlanarBody, hyperproject, hypersection, project, section
from .symmetry2d import asymmetry_about_line, find_symmetry_lines

__version__ = "0.1.0"
