"""Transversals, diagonal spectra and parity congruences of Latin squares."""

from .algebra import (
    derangement,
    determinant,
    even_permanent,
    gf2_nullity,
    gf2_rank,
    permanent,
    permanent_bruteforce,
    permanental_minor,
    permanental_minors,
    regular_degree,
    sample_regular,
)
from .claims import REGISTRY, ClaimReport, check, run_suite
from .core import (
    Diagonal,
    Intercalate,
    LatinArray,
    LatinError,
    LatinRectangle,
    LatinSquare,
    OrderGuardError,
    ParseError,
    RowLatinRectangle,
    RowLatinSquare,
    SymbolArray,
    conjugate,
    cyclic_square,
    delete,
    find_intercalates,
    format_square,
    parse_square,
    square_parities,
    transversal_parities,
    turn_intercalate,
)
from .fixtures import fixture, paper_fixtures
from .search import (
    Corpus,
    exhaustive_reduced,
    random_square,
    residue_search,
    sixteen_class_search,
)
from .spectrum import (
    count_transversals,
    depleted_counts,
    ev_spectrum,
    parity_type_counts,
    r_sequence,
    signed_count,
    spectrum_enumerate,
    spectrum_from_r,
    spectrum_report,
)

__version__ = "0.1.0"
