"""Exact computations with finite conformal superalgebras and their modules."""

__version__ = "0.1.0"

from .scalars import I, ONE, ZERO, DPoly, Gaussian, as_scalar, parse_scalar, scalar_str
from .algebra import (AxiomReport, ConformalSuperalgebra, Element, MirrorMismatch, check_axioms,
                      complete_mirror, lambda_bracket, lambda_table, nth_product)
from .lie import LieSuperalgebraData, builtin_lie
from .constructions import (divergence, make_CK6, make_current, make_KN,
                            make_semidirect_vir_current, make_SN, make_virasoro, make_WN, subalgebra)
from .modules import (ConformalModule, direct_sum, invariants, is_irreducible_rank1, is_split,
                      make_current_module, make_ext_44a, make_ext_44b, make_ext_45, make_M_A_B,
                      make_M_alpha_Delta, make_trivial_module, make_vir_current_module,
                      module_check, rep_to_gc)
from .structure import (Submodule, center, derived_series, find_proper_ideal, is_nilpotent,
                        is_solvable, lower_central_series)
from .cohomology import (CentralExtension, TwoCocycle, central_extend, cocycle_check, h2_dimension,
                         is_coboundary)
from .modes import expand_module_modes, expand_modes, jacobi_check, locality_order
from .gc import GcElement, gc_nth_product
from .builtins import builtin_algebra, builtin_module
from .dsl import DslError, emit_algebra, parse, parse_algebra, parse_cocycle, parse_module
from .report import emit_json
