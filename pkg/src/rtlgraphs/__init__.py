"""Trace rewriting systems with level-regular contexts and their automatic graphs."""

from .errors import (AlphabetError, BudgetExceeded, DomainMismatch, InvariantViolation, ParseError,
                     ReachabilityNotAutomatic, RtlError, UnknownLabel)
from .fologic import compile_formula, decide, holds, parse_formula, witness
from .rtl import (AutomaticPresentation, RtlRule, RtlSystem, brute_force_edges, bounded_bfs,
                  compile_system, compiled_edges, merge_relation, successors)
from .syncrel import SyncRelation
from .tracelang import LevelRegLang, RecTraceLang, foata_dfa, foata_encoding, is_trace_closed
from .traces import DependenceAlphabet, Trace, foata_normalize, trace_equiv
from .unfolding import ConcurrentAutomaton, EventStructure, unfold_rtl, unfold_rtl_rec

__version__ = "0.1.0"

__all__ = [
    "AlphabetError", "BudgetExceeded", "DomainMismatch", "InvariantViolation", "ParseError",
    "ReachabilityNotAutomatic", "RtlError", "UnknownLabel", "compile_formula", "decide", "holds",
    "parse_formula", "witness", "AutomaticPresentation", "RtlRule", "RtlSystem", "brute_force_edges",
    "bounded_bfs", "compile_system", "compiled_edges", "merge_relation", "successors", "SyncRelation",
    "LevelRegLang", "RecTraceLang", "foata_dfa", "foata_encoding", "is_trace_closed",
    "DependenceAlphabet", "Trace", "foata_normalize", "trace_equiv", "ConcurrentAutomaton",
    "EventStructure", "unfold_rtl", "unfold_rtl_rec",
]
