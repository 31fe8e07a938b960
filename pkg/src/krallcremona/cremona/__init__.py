"""Projective-map algebra for the Krall-Jacobi Cremona families."""
from .inverse import (InverseConsistencyError, NoInverseError, check_inverse, invert,
                      invert_parametric, lift_vector, structural_inverse)
from .maps import (DegenerateMapError, FixedMap, canonical, compose, identity_map, jacobian_det,
                   jacobian_matrix, lr_conjugate, proportional, reflect_in_k, reverse_components,
                   specialize, subs_k_affine)

__all__ = [
    "FixedMap", "DegenerateMapError", "canonical", "compose", "identity_map", "jacobian_det",
    "jacobian_matrix", "lr_conjugate", "proportional", "reflect_in_k", "reverse_components",
    "specialize", "subs_k_affine", "invert", "invert_parametric", "structural_inverse",
    "check_inverse", "lift_vector", "NoInverseError", "InverseConsistencyError",
]
