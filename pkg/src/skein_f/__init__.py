"""Exact skein-theoretic evaluation of a three-variable invariant of colored links."""

from .catalog import Catalog, CatalogEntry, CatalogError, ingest, load
from .coloring import Coloration, PartitionType, all_set_partitions, type_of
from .diagram import Diagram, PDError, braid_closure, mirror, parse_pd
from .invariants import compare_pair, conjecture_residual, f_multiset, jones, jones_bracket, sigma
from .ratfun import RatFun, from_text, parse_expression
from .skein import Evaluator, eval_unlink

__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "Coloration",
    "Diagram",
    "Evaluator",
    "PDError",
    "PartitionType",
    "RatFun",
    "all_set_partitions",
    "braid_closure",
    "compare_pair",
    "conjecture_residual",
    "eval_unlink",
    "f_multiset",
    "from_text",
    "ingest",
    "jones",
    "jones_bracket",
    "load",
    "mirror",
    "parse_expression",
    "parse_pd",
    "sigma",
    "type_of",
]

__version__ = "0.1.0"
