"""Finite rings, their structural subsets, and SDT-type classification."""

from .catalog import CatalogEntry, builtin_catalog
from .classifiers import (
    ClassificationReport,
    WitnessTable,
    classify_ring,
    is_c_delta,
    is_sdi,
    is_sdt,
    is_semi_tripotent,
    is_strongly_delta_npotent,
)
from .decomposition import DecompositionReport, crt_split_mod6, mod_jacobson, verify_boolean_yaqub
from .errors import *  # noqa: F401,F403
from .invariants import (
    ElementSubset,
    center,
    delta,
    idempotents,
    jacobson_radical,
    nilpotents,
    potents,
    structural_sets,
    tripotents,
    units,
)
from .parser import build, format_expr, parse_and_build, parse_ring_expr
from .ring import (
    FiniteRing,
    make_corner,
    make_full_matrix,
    make_gf4,
    make_product,
    make_quotient,
    make_table_ring,
    make_trivial_extension,
    make_truncated_poly,
    make_upper_triangular,
    make_zmod,
    validate_ring,
)
from .suite import run_catalog_suite, run_suite
from .tableio import export_tables, load_table_ring, ring_from_json
from .triangular import (
    BlockView,
    WorkhorseCase,
    check_theorem_local,
    lift_commuting_tripotent,
    sdt_representation_triangular,
    sylvester_solve,
    workhorse_z,
)

__version__ = "0.1.0"
