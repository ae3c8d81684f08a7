"""Half-rate additive codes over GF(4) as directed graphs."""

from __future__ import annotations

from .canon import automorphism_order, certificate, code_canonical_form, equivalent
from .code import (
    AdditiveCode,
    BudgetExceeded,
    WeightDistribution,
    code_from_strings,
    dual,
    format_code_text,
    is_formally_self_dual,
    is_self_dual,
    min_distance,
    parse_code_text,
    weight_distribution,
)
from .constructions import (
    CirculantSeed,
    bordered_circulant_code,
    circulant_code,
    qr_code,
    qr_seed,
    search_best,
)
from .gf4 import GF4Vector
from .graphform import Digraph, ExceptionalCodeError, graph_code, to_graph_form

__all__ = [
    "AdditiveCode",
    "BudgetExceeded",
    "CirculantSeed",
    "Digraph",
    "ExceptionalCodeError",
    "GF4Vector",
    "WeightDistribution",
    "automorphism_order",
    "bordered_circulant_code",
    "certificate",
    "circulant_code",
    "code_canonical_form",
    "code_from_strings",
    "dual",
    "equivalent",
    "format_code_text",
    "graph_code",
    "is_formally_self_dual",
    "is_self_dual",
    "min_distance",
    "parse_code_text",
    "qr_code",
    "qr_seed",
    "search_best",
    "to_graph_form",
    "weight_distribution",
]
