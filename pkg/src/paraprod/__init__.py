"""Paraproducts, weighted BMO norms and bilinear multipliers on periodic grids."""
from .field import (GridSpec, SampledField, Spectrum, apply_multiplier, band_limit, dilate,
                    forward_transform, fractional_derivative, inverse_transform, pointwise_product)
from .weights import (AdmissibleWeight, builtin_weight, ratio_bounds, validate_admissible)
from .calderon import (AuxiliaryFamily, BumpPair, ScaleGrid, apply_Pt, apply_Qt, calderon_sum,
                       make_auxiliary_family, make_bump_pair)
from .symbol import SigmaSymbol, apply_I_inv_sigma, apply_I_sigma, check_mikhlin, compute_sigma
from .norms import (NormConfig, bmo_local_norm, bmo_seminorm, bmo_sigma_norm, carleson_norm,
                    h1_norm, hardy_maximal_norm, morrey_norm, weighted_average_sup, xw_norm)
from .bilinear import (BilinearSymbol, ScalarSymbol, VariableSymbol, cm_split,
                       coifman_meyer_apply, commutator_l1_norm, duality_pairing,
                       hm_symbol_check, kato_ponce_decompose, paraproduct_const,
                       paraproduct_split, paraproduct_var)

__version__ = "0.1.0"
