"""Hypergraph transversal toolkit: exact solvers, extremal-bound certification,
a generator/recognizer for the recursively built family of tight instances,
and the open-neighborhood route to total domination."""

__version__ = "0.1.0"

from .hypergraph import Hypergraph, Transversal, ZeroEdgeError  # noqa: F401
