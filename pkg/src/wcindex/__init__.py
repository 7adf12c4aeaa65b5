"""Text indexes for patterns with wildcards and variable length gaps."""
from .errors import BudgetError, IndexFormatError, PatternError, ResourceError, WildcardIndexError
from .indexes import (FALLBACK, SPECIAL, Index, IndexVariant, OccurrenceSet, Variant, build_index,
                      vlg_expand)
from .oracle import OracleResult, oracle_match
from .persist import load_index, save_index
from .search import QueryStats
from .text import GapPattern, IndexedText, Occurrence, SubstringRef, parse_pattern, render_pattern
from .wildcard_tree import WildcardTree, build_wildcard_tree, wildcard_tree_search

__all__ = [
    "BudgetError", "FALLBACK", "GapPattern", "Index", "IndexFormatError", "IndexVariant",
    "IndexedText", "Occurrence", "OccurrenceSet", "OracleResult", "PatternError", "QueryStats",
    "ResourceError", "SPECIAL", "SubstringRef", "Variant", "WildcardIndexError", "WildcardTree",
    "build_index", "build_wildcard_tree", "load_index", "oracle_match", "parse_pattern",
    "render_pattern", "save_index", "vlg_expand", "wildcard_tree_search",
]
