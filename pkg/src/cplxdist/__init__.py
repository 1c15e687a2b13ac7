"""Exact-arithmetic geometry of complex distances and lines in C^3.

The package computes, over the Gaussian rationals and without any
floating-point in its results:

* squared complex distances of plane point sets, their histograms, and
  the quadruple counts that control distinct-distance lower bounds;
* the transform sending ordered point pairs to lines in C^3, under which
  equal distances become coplanar line pairs, together with its pencils,
  special points, and tangency machinery;
* canonical lines/planes/quadrics in C^3 with exact pair classification,
  containment, and surface fitting;
* r-rich points, rich surfaces, and structure decompositions of line sets;
* the R^6/R^8 charts of standard complex lines and the complex tangent
  space machinery of real hypersurfaces;
* seeded generators, an executable invariant suite, and report tables
  comparing exact counts against reference growth curves.
"""

from .algebra import (GaussianRational, Matrix, MultiPoly, Rational, gr,
                      mat_nullspace, poly_affine_compose, poly_eval,
                      poly_gradient)
from .cplane import (DistanceStatistics, GrowthSets, PointC2, delta,
                     distance_statistics, growth_sets, isotropic_classify,
                     point2, quadruples_bruteforce)
from .esgk import (EsgkFamily, direction_field, esgk_family, esgk_line,
                   parallel_pair_count, pencil_quadric, special_point,
                   tangency_poly)
from .incidence import (RichPointReport, RichSurfaceReport, StructureReport,
                        rich_points, rich_surfaces, structure_report)
from .lines3 import (Equal, Intersecting, LineC3, Parallel, PlaneC3,
                     QuadricC3, Skew, canonical_line, canonical_plane,
                     canonical_quadric, fit_quadrics, is_bad_plane,
                     line_in_quadric, line_pair_relation, vec3)
from .realgeom import (StandardLineCoords, complex_tangent_frame, g_coords,
                       g_inverse, line_membership_conditions, phi,
                       ruled_at_point)
from .verify import run_verify

__all__ = [name for name in dir() if not name.startswith("_")]
