"""Hereditarily finite sets coded as well-founded extensional digraphs.

Digraph operations, Mostowski collapse, a first-order language with Tarski
truth sets, the definability operator and finite constructible levels, and
Cantor normal form ordinals.
"""

from .assembly import assemble, func_digraph, pair, pair_close_bounded, union_digraph
from .coding import decode_list, encode_list, pair_nat, unpair_nat
from .construct import (
    DefCertificate,
    def_certificate,
    def_enumerate,
    def_of,
    defined_subset,
    element_definition,
    l_level,
    l_levels,
    subset_definition,
)
from .digraph import (
    EMPTY_DIGRAPH,
    Digraph,
    DigraphClass,
    bij_image,
    cone,
    eln,
    encode_natset,
    encode_numeral,
    format_digraph,
    multi_restrict,
    pack,
    parse_digraph,
    slice_digraph,
    validate,
    vertex,
)
from .errors import WfesetsError
from .formula import (
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Mem,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Param,
    Valuation,
    Var,
    degodelize,
    eliminate_params,
    godelize,
    parse,
    relativize,
    to_text,
    translate_interp,
)
from .hfset import (
    EMPTY,
    HfSet,
    ack_index,
    collapse,
    encode_set,
    format_hfset,
    from_ack,
    mostowski,
    parse_hfset,
    rank,
    transitive_closure,
    v_level,
)
from .iso import brute_force_isomorphism, canonicalize, find_isomorphism, hom_map, inh, isomorphic
from .ordinal import (
    CnfOrdinal,
    FiniteOrder,
    cnf_arith,
    cnf_cmp,
    collapse_wellorder,
    format_ordinal,
    parse_ordinal,
    power_order,
    product_order,
    sum_order,
)
from .truth import build_tts, check_tts, count_tts, models, models_interp_bounded, satisfying_set

__all__ = [
    "And",
    "CnfOrdinal",
    "Const",
    "DefCertificate",
    "Digraph",
    "DigraphClass",
    "EMPTY",
    "EMPTY_DIGRAPH",
    "Eq",
    "Exists",
    "Forall",
    "FiniteOrder",
    "Formula",
    "HfSet",
    "Iff",
    "Implies",
    "Mem",
    "Not",
    "Or",
    "Param",
    "Valuation",
    "Var",
    "WfesetsError",
    "ack_index",
    "assemble",
    "bij_image",
    "brute_force_isomorphism",
    "build_tts",
    "canonicalize",
    "check_tts",
    "cnf_arith",
    "cnf_cmp",
    "collapse",
    "collapse_wellorder",
    "cone",
    "count_tts",
    "decode_list",
    "def_certificate",
    "def_enumerate",
    "def_of",
    "defined_subset",
    "degodelize",
    "element_definition",
    "eliminate_params",
    "eln",
    "encode_list",
    "encode_natset",
    "encode_numeral",
    "encode_set",
    "find_isomorphism",
    "format_digraph",
    "format_hfset",
    "format_ordinal",
    "from_ack",
    "func_digraph",
    "godelize",
    "hom_map",
    "inh",
    "isomorphic",
    "l_level",
    "l_levels",
    "models",
    "models_interp_bounded",
    "mostowski",
    "multi_restrict",
    "pack",
    "pair",
    "pair_close_bounded",
    "pair_nat",
    "parse",
    "parse_digraph",
    "parse_hfset",
    "parse_ordinal",
    "power_order",
    "product_order",
    "rank",
    "relativize",
    "satisfying_set",
    "slice_digraph",
    "subset_definition",
    "sum_order",
    "to_text",
    "transitive_closure",
    "translate_interp",
    "union_digraph",
    "unpair_nat",
    "v_level",
    "validate",
    "vertex",
]

__version__ = "0.1.0"
