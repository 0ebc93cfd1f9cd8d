"""State-sum polynomials of knot shadows, by brute force and by formula."""
from .algebra import Polynomial, Series, format_poly, poly, series_rational_expand
from .diagram import (
    CutPoint,
    Shadow,
    connected_sum,
    disjoint_union,
    self_closure,
    state_sum,
    validate,
)
from .expr import eval_poly, eval_shadow, parse, render
from .families import CATALOG, FamilySpec, build
from .formulas import (
    Components,
    closure_of_generated,
    components_solve,
    family_gf,
    family_poly_closed,
    family_poly_recurrence,
)
from .tables import compare_with_reference, export, triangle

__all__ = [
    "CATALOG", "Components", "CutPoint", "FamilySpec", "Polynomial", "Series", "Shadow",
    "build", "closure_of_generated", "components_solve", "compare_with_reference",
    "connected_sum", "disjoint_union", "eval_poly", "eval_shadow", "export", "family_gf",
    "family_poly_closed", "family_poly_recurrence", "format_poly", "parse", "poly", "render",
    "self_closure", "series_rational_expand", "state_sum", "triangle", "validate",
]
