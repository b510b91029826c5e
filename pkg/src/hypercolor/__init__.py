"""2-coloring of k-uniform hypergraphs in the edge-probe model.

Three engines over probe-instrumented hypergraphs:

- a deterministic global colorer that finds a uniquely-colorable K_ll copy
  and propagates its forced coloring in two waves;
- a randomized per-vertex coloring oracle whose answers are always
  consistent with one proper coloring (the lexicographically first one);
- a stateless local query algorithm driven by a per-vertex random tape.

Plus planted/uniform instance generators, a goodness audit, the HGR1 file
format, and a CSV benchmark harness.
"""

from __future__ import annotations

from .core import (
    BITSET_CAP_BITS,
    MAX_K,
    UNSET,
    Coloring,
    KGraph,
    ProbeCounter,
    VerifyResult,
    combinations_colex,
    is_edge,
    neighborhood_nonempty,
    rank_subset,
    unrank_subset,
    verify_coloring,
)
from .errors import (
    CapacityError,
    ContractViolation,
    GenerationError,
    HgrParseError,
    UnsatisfiableError,
)
from .tape import (
    BLOCKS,
    SHARED,
    RandomTape,
    block_seed,
    derive_seed,
    tape_word,
    tape_words,
)
from .generators import (
    GadgetSpec,
    PlantedSpec,
    build_kll_gadget,
    count_crossing_sets,
    embed_union,
    planted_coloring_sides,
    sample_planted,
    sample_uniform_2colorable_rejection,
)
from .patterns import (
    GoodnessParams,
    GoodnessReport,
    KllCopy,
    audit_goodness,
    certify_copy,
    count_kll_copies,
    enumerate_kll_copies,
    find_kll_exhaustive,
    forced_degree,
    spans_kll,
)
from .engines import (
    ColorResult,
    OracleAnswer,
    OracleConfig,
    collect_lca_coloring,
    collect_oracle_coloring,
    color_deterministic,
    color_exhaustive_lexfirst,
    lca_query,
    oracle_query,
    verify_sweep,
)
from .search import is_two_colorable, lexfirst_proper_coloring
from .hgr import read_instance, read_metadata, write_instance
from .bench import CSV_COLUMNS, ExperimentResult, ExperimentSpec, Record, run_experiment

__version__ = "0.1.0"

__all__ = [
    "BITSET_CAP_BITS",
    "BLOCKS",
    "CSV_COLUMNS",
    "CapacityError",
    "ColorResult",
    "Coloring",
    "ContractViolation",
    "ExperimentResult",
    "ExperimentSpec",
    "GadgetSpec",
    "GenerationError",
    "GoodnessParams",
    "GoodnessReport",
    "HgrParseError",
    "KGraph",
    "KllCopy",
    "MAX_K",
    "OracleAnswer",
    "OracleConfig",
    "PlantedSpec",
    "ProbeCounter",
    "RandomTape",
    "Record",
    "SHARED",
    "UNSET",
    "UnsatisfiableError",
    "VerifyResult",
    "audit_goodness",
    "block_seed",
    "build_kll_gadget",
    "certify_copy",
    "collect_lca_coloring",
    "collect_oracle_coloring",
    "color_deterministic",
    "color_exhaustive_lexfirst",
    "combinations_colex",
    "count_crossing_sets",
    "count_kll_copies",
    "derive_seed",
    "embed_union",
    "enumerate_kll_copies",
    "find_kll_exhaustive",
    "forced_degree",
    "is_edge",
    "is_two_colorable",
    "lca_query",
    "lexfirst_proper_coloring",
    "neighborhood_nonempty",
    "oracle_query",
    "planted_coloring_sides",
    "rank_subset",
    "read_instance",
    "read_metadata",
    "run_experiment",
    "sample_planted",
    "sample_uniform_2colorable_rejection",
    "spans_kll",
    "tape_word",
    "tape_words",
    "unrank_subset",
    "verify_coloring",
    "verify_sweep",
    "write_instance",
]
