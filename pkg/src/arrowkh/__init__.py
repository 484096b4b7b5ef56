"""Arrow polynomial of virtual links and its F2 Khovanov-type homology.

The top-level namespace re-exports the main entry points; the submodules
hold the full API.
"""

from __future__ import annotations

from .atoms import (
    AtomInfo,
    BoundReport,
    Verdict,
    atom_characteristics,
    minimality_certificate,
    span_bound_check,
    thickness_bound_check,
    virtual_crossing_lower_bound,
)
from .corpus import bundled, bundled_names, random_code
from .cube import BifurcationCube, EdgeKind, build_cube
from .homology import BettiKey, BettiTable, betti_table, euler_reconstruct, f2_rank, thickness
from .khovanov import (
    ChainComplex,
    GradingSystem,
    build_complex,
    dprime_complement_check,
    verify_d_squared,
)
from .knotio import VirtualLinkDiagram, parse_gauss_code, serialize, validate, writhe
from .moves import apply_r1, apply_r2, apply_r3, random_equivalent
from .poly import ArrowPolynomial, LaurentPoly
from .statesum import (
    arrow_polynomial,
    bracket_polynomial,
    flat_specialization,
    normalized_arrow_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "ArrowPolynomial",
    "AtomInfo",
    "BettiKey",
    "BettiTable",
    "BifurcationCube",
    "BoundReport",
    "ChainComplex",
    "EdgeKind",
    "GradingSystem",
    "LaurentPoly",
    "Verdict",
    "VirtualLinkDiagram",
    "apply_r1",
    "apply_r2",
    "apply_r3",
    "arrow_polynomial",
    "atom_characteristics",
    "betti_table",
    "bracket_polynomial",
    "build_complex",
    "build_cube",
    "bundled",
    "bundled_names",
    "dprime_complement_check",
    "euler_reconstruct",
    "f2_rank",
    "flat_specialization",
    "minimality_certificate",
    "normalized_arrow_polynomial",
    "parse_gauss_code",
    "random_code",
    "random_equivalent",
    "serialize",
    "span_bound_check",
    "thickness",
    "thickness_bound_check",
    "validate",
    "verify_d_squared",
    "virtual_crossing_lower_bound",
    "writhe",
]
