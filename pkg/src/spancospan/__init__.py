"""Open graphs as cospans, spans of cospans as 2-cells, and DPO rewriting.

Modules: ``graph`` (finite multigraphs, limits, colimits, search),
``cospan`` (open graphs and 2-cells), ``rewrite`` (double-pushout
rewriting), ``laws`` (counterexamples and law suites), ``workspace`` and
``cli`` (files and the command line).
"""
from .cospan import (
    OpenGraph,
    TwoCell,
    associator,
    check_interchange,
    compose_cospans,
    hcompose,
    identity_cospan,
    identity_twocell,
    iso_class_equal,
    left_unitor,
    open_graph,
    right_unitor,
    vcompose,
)
from .errors import ParseError, SpanCospanError, ValidationError
from .graph import (
    FinGraph,
    GraphHom,
    coequalizer,
    coproduct,
    enumerate_homs,
    iso_search,
    pullback,
    pushout,
)
from .laws import bool_counterexample, set_counterexample
from .rewrite import (
    Grammar,
    InterfaceProduction,
    Production,
    derivation_to_twocell,
    derive,
    find_matches,
    io_derive,
    language,
    pushout_complement,
    twocell_to_derivation,
)
from .workspace import Workspace, load, save

__all__ = [
    "FinGraph", "GraphHom", "coproduct", "coequalizer", "pushout", "pullback", "enumerate_homs", "iso_search",
    "OpenGraph", "TwoCell", "open_graph", "identity_cospan", "compose_cospans", "identity_twocell",
    "vcompose", "hcompose", "iso_class_equal", "associator", "left_unitor", "right_unitor", "check_interchange",
    "Production", "InterfaceProduction", "Grammar", "find_matches", "pushout_complement", "derive", "io_derive",
    "derivation_to_twocell", "twocell_to_derivation", "language",
    "set_counterexample", "bool_counterexample",
    "Workspace", "load", "save",
    "SpanCospanError", "ParseError", "ValidationError",
]
