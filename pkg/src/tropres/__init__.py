"""Tropical hyperplane arrangements, their type decompositions and cellular resolutions."""

from .complex import (
    Cell,
    ResourceLimitError,
    TropicalComplex,
    bounded_subcomplex,
    crosscut_complex,
    dual_subdivision,
    enumerate_cells,
    is_fine,
)
from .estimator import TypeDecomposition
from .ideals import (
    MonomialIdeal,
    VariableSpace,
    alexander_dual,
    coarse_type_ideal,
    cotype_ideal,
    fine_type_ideal,
)
from .io import ArrangementDocument, DocumentError
from .mixed import MixedSubdivision, cyclic_arrangement, from_tropical_complex, staircase_subdivision
from .pipeline import face_poset_from_points, generate_random_generic, verify_all
from .render import render_svg
from .resolutions import betti_table, resolve, verify_resolution
from .tropical import Arrangement, TropicalPoint, coarse_type, fine_type

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "ArrangementDocument",
    "Cell",
    "DocumentError",
    "MixedSubdivision",
    "MonomialIdeal",
    "ResourceLimitError",
    "TropicalComplex",
    "TropicalPoint",
    "TypeDecomposition",
    "VariableSpace",
    "alexander_dual",
    "betti_table",
    "bounded_subcomplex",
    "coarse_type",
    "coarse_type_ideal",
    "cotype_ideal",
    "crosscut_complex",
    "cyclic_arrangement",
    "dual_subdivision",
    "enumerate_cells",
    "face_poset_from_points",
    "fine_type",
    "fine_type_ideal",
    "from_tropical_complex",
    "generate_random_generic",
    "is_fine",
    "render_svg",
    "resolve",
    "staircase_subdivision",
    "verify_all",
    "verify_resolution",
]
