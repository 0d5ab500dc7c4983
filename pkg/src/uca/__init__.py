"""Unit circular-arc models: equivalence, minimal and minimum representations, and hardness tooling."""

from .core import (
    Arc,
    ExtremeSeq,
    PcaModel,
    UcaDescriptor,
    align,
    are_equivalent,
    canonical_word,
    classify,
    dump_model,
    extreme_sequence,
    make_model,
    parse_model,
    realize,
    reverse,
    shift,
)
from .errors import UcaError
from .hardness import (
    McwInstance,
    build_grid,
    max_cycle_weight,
    model_from_mcw,
    reduce_3partition,
    solve_mcw,
)
from .minrep import brute_force_minimal, minimal_length, minimal_model, recognize_uca
from .separation import feasibility, sep_closed_form, sep_walk
from .structure import co_components, join, minimum_model, recombine
from .synthetic import build_synthetic, export_graph, layout, model_from_synthetic, unroll

__all__ = [
    "Arc",
    "ExtremeSeq",
    "McwInstance",
    "PcaModel",
    "UcaDescriptor",
    "UcaError",
    "align",
    "are_equivalent",
    "brute_force_minimal",
    "build_grid",
    "build_synthetic",
    "canonical_word",
    "classify",
    "co_components",
    "dump_model",
    "export_graph",
    "extreme_sequence",
    "feasibility",
    "join",
    "layout",
    "make_model",
    "max_cycle_weight",
    "minimal_length",
    "minimal_model",
    "minimum_model",
    "model_from_mcw",
    "model_from_synthetic",
    "parse_model",
    "realize",
    "recognize_uca",
    "recombine",
    "reduce_3partition",
    "reverse",
    "sep_closed_form",
    "sep_walk",
    "shift",
    "solve_mcw",
    "unroll",
]
