"""Exact computations with finite parabolic bundles on orbifold projective lines."""

__version__ = "0.1.0"

from .abgroup import FpAbelianGroup, Hom, fp_group, kernel, n_torsion, smith_normal_form
from .covers import TameCover, cover_geometry, deck_action_on_points, extend_orbifold, make_cover
from .finitegroup import (FiniteGroup, Subgroup, cosets, cyclic_group, dihedral_group, double_cosets,
                          group_from_permutations, semidirect_product, symmetric_group, alternating_group)
from .orbifold import OrbifoldCurve, canonical_form, orbifold, pic_zero_torsion, picard_group
from .parabolic import (ParabolicBundleData, ParabolicLineBundle, find_finite_relation, line_bundle,
                        line_bundle_data, mackey_tensor, par_degree, pushforward, rh_realize, shift,
                        splitting_type, tensor_weights)
from .reptheory import (Character1D, MonomialRep, character, decompose, induce, inner_product,
                        linear_characters, little_groups_irreducibles, local_exponents, mackey_decompose,
                        monomial_irreducibles, tensor)

__all__ = [name for name in dir() if not name.startswith("_")]
