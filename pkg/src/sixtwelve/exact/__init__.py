from .fields import (GF, QQ, MixedFieldError, NFElement, NumberField, Residue, ResidueRing,
                     ZeroDivisorError, Zmod_pk, common_parent, div, parent_of)
from .matrix import Matrix, kernel_basis
from .mpoly import MultiPoly, det_poly, monomials_of_degree, normal_form
from .upoly import UPoly, interpolate, poly_gcd, resultant

__all__ = [
    "GF", "QQ", "MixedFieldError", "NFElement", "NumberField", "Residue", "ResidueRing",
    "ZeroDivisorError", "Zmod_pk", "common_parent", "div", "parent_of", "Matrix",
    "kernel_basis", "MultiPoly", "det_poly", "monomials_of_degree", "normal_form", "UPoly",
    "interpolate", "poly_gcd", "resultant",
]
