"""Exact chain-level comodule theory over a field.

GF(p) and ℚ linear algebra, chain complexes, dg-coalgebras and comodules,
cotensor products, the conormalized cobar construction with CoTor and Ext,
Postnikov towers and factorizations of comodule maps, and the spectral
sequence of the cobar bicomplex.
"""

from .field_linalg import GF2, GF3, QQ, Field, Matrix
from .chain_complex import (
    ChainComplex,
    ChainMap,
    Report,
    disk,
    homology,
    homology_dims,
    is_quasi_iso,
    sphere,
    split_complex,
    tensor,
)
from .coalgebra import CoalgebraMap, DGCoalgebra, homology_coalgebra, validate_coalgebra
from .comodule import (
    ComoduleMap,
    DGComodule,
    cofree,
    hom_comodule,
    is_fibrant,
    is_fibration,
    trivial_comodule,
    validate_comodule,
)
from .cotensor import cobar_bicomplex, coinduce, corestrict, cotensor, cotor, ext, injective_resolution
from .postnikov import factorize, postnikov_tower, stabilized_limit, verify_tower
from .emss import e1_page, e2_page, run_to_einfty, spectral_sequence, total_homology
from .fixtures import fixture_coalgebra, fixture_comodules

__all__ = [
    "GF2", "GF3", "QQ", "Field", "Matrix",
    "ChainComplex", "ChainMap", "Report", "disk", "sphere", "homology", "homology_dims",
    "is_quasi_iso", "split_complex", "tensor",
    "CoalgebraMap", "DGCoalgebra", "homology_coalgebra", "validate_coalgebra",
    "ComoduleMap", "DGComodule", "cofree", "hom_comodule", "is_fibrant", "is_fibration",
    "trivial_comodule", "validate_comodule",
    "cobar_bicomplex", "coinduce", "corestrict", "cotensor", "cotor", "ext", "injective_resolution",
    "factorize", "postnikov_tower", "stabilized_limit", "verify_tower",
    "e1_page", "e2_page", "run_to_einfty", "spectral_sequence", "total_homology",
    "fixture_coalgebra", "fixture_comodules",
]
