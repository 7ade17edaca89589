"""Combinatorial engine for twist regions, flat augmented link polyhedra,
normal curves and Euler characteristic bounds of essential surfaces."""

from .augmentation import AugmentedStructure, CrossingCircle, augment, filling_slope, flatten
from .bounds import (BoundCertificate, LemmaEvidence, certify, chi_bound, genus_bound,
                     min_boundary_count, verify_must_meet_circle, verify_one_cusp_forces_K,
                     verify_three_circles, visible_meridional_spheres)
from .diagram import (Diagram, DiagramError, HypothesisReport, TwistRegion, check_hypotheses,
                      faces, is_prime, is_twist_reduced, parse_pd, twist_regions)
from .normal import (ComplexityTuple, NormalCurve, area, check_normal, comb_length, complexity,
                     cusp_pattern, enumerate_normal_curves, gauss_bonnet, project_curve)
from .polyhedral import BoundaryComplex, Polyhedron, boundary_complex, decompose, validate

__version__ = "0.1.0"
