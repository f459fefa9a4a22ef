"""Exact-arithmetic multiparameter persistence.

Finitely presented persistence modules over exact coefficient fields, the
interleaving distance decided through quadratic-system solvability, 1-D
persistence diagrams and bottleneck distances, Rips/Cech bifiltrations of
rational point clouds, homology presentation extraction, and a reproducible
inference harness.
"""

from .exactnum import (INF, NEG_INF, ExtendedRational, PrimeField, QQ,
                       Rational, ext, parse_field, parse_rational)
from .presentation import (MonotoneAffineMap, Presentation, PresentationError,
                           direct_sum, interval_presentation,
                           parse_presentation)
from .quadsys import (BudgetExceeded, QuadEquation, QuadraticSystem,
                      evaluate, export_system, parse_system,
                      solve_finite_field)
from .interleave import (InterleavingSystem, assemble_system, candidate_set,
                         decide_generalized, decide_interleaving,
                         interleaving_distance)
from .onedim import (PersistenceDiagram, bottleneck, bottleneck_bruteforce,
                     diagram_of, parse_diagram, presentation_of)
from .filtration import (BifilteredComplex, DensitySpec, KdeSpec, PointCloud,
                         Scale, cech_bifiltration, distance,
                         fixed_scale_slice, function_aware_hausdorff,
                         gromov_function_distance, kde_evaluate,
                         parse_complex, parse_points_csv, parse_values_csv,
                         rips_bifiltration, sample_density,
                         sup_function_distance)
from .homology import (GradedChainComplex, GridModule, barcode_1d,
                       chain_complex_of, grid_module_of, image_grid_module,
                       parse_grid_module, present_homology,
                       rank_shift_distance, resample)
from .infer import (ExperimentRecord, cech_cluster_module,
                    offset_cluster_module, run_experiment)

__version__ = "0.1.0"
