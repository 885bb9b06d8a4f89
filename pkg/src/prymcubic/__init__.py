"""Exact-arithmetic toolkit for cubic symmetroids and the correspondence
between genus-4 curves with a marked double cover and genus-3 curves with a
pair of degree-4 pencils."""

__version__ = "0.1.0"

from .fields import Field, FieldElement, QQ
from .poly import HomogPoly, SymMatrix, proportional
from .symmetroid import Symmetrization, SymmetroidType, cayley_normal_form, hankel_symmetroid
from .prym import forward_even, forward_general, pencil_conics, reverse_construct

__all__ = [
    "Field", "FieldElement", "QQ", "HomogPoly", "SymMatrix", "proportional",
    "Symmetrization", "SymmetroidType", "cayley_normal_form", "hankel_symmetroid",
    "forward_even", "forward_general", "pencil_conics", "reverse_construct",
]
