"""F_q chain complexes, CSS/subsystem product codes, and homological
distance computation."""

from .gf import GF, field, field_from_order, parse_field_tag
from .matf import Mat, hstack, same_rowspace, symplectic_matrix, symplectic_product, vstack
from .chain import ChainComplex, ProductComplex, INF, kunneth_ranks, tensor_product
from .css import (CssCode, SubsystemCode, code_params, css_from_complex, css_new,
                  logical_basis, subsystem_new, xz_swapped, z_shortened_code)
from .distance import (BudgetExceeded, DistanceResult, ProductDescriptor, certify,
                       distance_bounds, dz_auto, dz_covering_set, dz_exact,
                       verify_certificate, weighted_weight)
from .constructions import (circulant, concatenated_stabilizer, dbl_even_code,
                            homological_product, multi_fold, nilpotent_from_css,
                            odd_base_code, project_level, qhp, qhp_complex,
                            repetition_check, steane_code, subsystem_product,
                            subsystem_qhp, toric_code, xz_symmetric_product)

__version__ = "0.1.0"
