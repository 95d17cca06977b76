"""Context-sensitive reachability via an indexing graph and conventional reachability indexes."""

from .graph import (EPS, Edge, Label, LabelKind, ParseError, ProgramValidGraph,
                    StructuralError, ValidationReport, edge_sets, parse_graph,
                    validate, write_graph)
from .indexing import IndexingGraphView, IndexVertex, Side
from .oracle import Tabulator, cfl_closure, cyk_derives, derives, tabulation_query
from .query import QuerySession, WitnessPath, cs_query, cs_query_path, expand_summary
from .summary import SummaryEdge, SummaryEdgeSet, compute_summaries

__version__ = "0.1.0"
