"""Gflow search and verification on labeled open graphs.

A labeled open graph assigns each vertex a measurement plane (XY, XZ or
YZ).  In this pipeline gadget roots are YZ, everything else XY (gadget
tops are excluded from the vertex set); the verifier nevertheless
implements all three planes.  The search produces a maximally delayed
layering: correction sets are solved layer by layer as GF(2) systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .diagram import ZxDiagram
from .gf2 import solve

__all__ = [
    "LabeledOpenGraph",
    "GFlow",
    "odd_neighborhood",
    "find_gflow",
    "verify_gflow",
    "extend_gflow_insertion",
    "labeled_graph_of",
]


@dataclass
class LabeledOpenGraph:
    """Vertices, undirected edges, ordered boundaries and plane labels."""

    vertices: tuple[int, ...]
    edges: frozenset[frozenset[int]]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    labels: dict[int, str]  # XY / XZ / YZ for non-output vertices

    def __post_init__(self):
        self._adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            self._adj[u].add(v)
            self._adj[v].add(u)

    def neighbors(self, v: int) -> set[int]:
        return self._adj[v]


@dataclass
class GFlow:
    """Correction-set map plus a level order (lower level measured earlier)."""

    g: dict[int, frozenset[int]]
    order: dict[int, int]


def odd_neighborhood(graph: LabeledOpenGraph, s: Iterable[int]) -> set[int]:
    """Vertices adjacent to an odd number of members of s."""
    count: dict[int, int] = {}
    for v in s:
        for w in graph.neighbors(v):
            count[w] = count.get(w, 0) + 1
    return {w for w, c in count.items() if c % 2 == 1}


def labeled_graph_of(d: ZxDiagram) -> LabeledOpenGraph:
    """View a graph-like diagram as a labeled open graph.

    Gadget tops are dropped; their roots are labeled YZ.  Every other
    non-output spider is an XY measurement.
    """
    gadgets = d.find_gadgets()
    tops = {g.top for g in gadgets}
    roots = {g.root for g in gadgets}
    verts = tuple(v for v in d.spiders() if v not in tops)
    vset = set(verts)
    edges = frozenset(
        frozenset((u, v)) for u, v in d.edges() if u in vset and v in vset
    )
    outs = tuple(d.outputs)
    labels = {}
    for v in verts:
        if v in outs:
            continue
        labels[v] = "YZ" if v in roots else "XY"
    return LabeledOpenGraph(verts, edges, tuple(d.inputs), outs, labels)


def find_gflow(graph: LabeledOpenGraph) -> Optional[GFlow]:
    """Maximally delayed gflow, or None if the graph has no gflow.

    Layer 0 holds the outputs; each subsequent layer holds every remaining
    vertex whose correction set can be solved over the already-layered,
    non-input vertices.  Levels are flipped at the end so that lower level
    means measured earlier.
    """
    vertices = list(graph.vertices)
    outs = set(graph.outputs)
    ins = set(graph.inputs)
    layer = {v: 0 for v in outs}
    processed = set(outs)
    corr: dict[int, frozenset[int]] = {}
    k = 0
    while len(processed) < len(vertices):
        k += 1
        solved: dict[int, frozenset[int]] = {}
        cols = sorted(processed - ins)
        pending = [v for v in vertices if v not in processed]
        for v in pending:
            s = _solve_correction(graph, v, cols, set(pending))
            if s is not None:
                solved[v] = s
        if not solved:
            return None
        for v, s in solved.items():
            layer[v] = k
            corr[v] = s
        processed |= set(solved)
    top = max(layer.values())
    order = {v: top - l for v, l in layer.items()}
    return GFlow(corr, order)


def _solve_correction(
    graph: LabeledOpenGraph, v: int, cols: list[int], pending: set[int]
) -> Optional[frozenset[int]]:
    lab = graph.labels[v]
    include_self = lab in ("XZ", "YZ")
    if include_self and v in graph.inputs:
        return None
    col_list = [c for c in cols if c != v]
    forbidden = sorted((pending - {v}))
    rows = forbidden + [v]
    a = np.zeros((len(rows), len(col_list)), dtype=np.uint8)
    b = np.zeros(len(rows), dtype=np.uint8)
    for i, u in enumerate(rows):
        nbrs = graph.neighbors(u)
        for j, c in enumerate(col_list):
            if c in nbrs:
                a[i, j] = 1
        if include_self and v in nbrs:
            b[i] ^= 1
    # row for v itself: XY and XZ need v in Odd(g(v)); YZ needs v not in Odd
    if lab in ("XY", "XZ"):
        b[-1] ^= 1
    x = solve(a, b)
    if x is None:
        return None
    s = {col_list[j] for j in range(len(col_list)) if x[j]}
    if include_self:
        s.add(v)
    return frozenset(s)


def verify_gflow(graph: LabeledOpenGraph, f: GFlow) -> bool:
    """Check all five gflow conditions for every non-output vertex."""
    outs = set(graph.outputs)
    ins = set(graph.inputs)
    order = f.order
    for v in graph.vertices:
        if v in outs:
            continue
        if v not in f.g or v not in order:
            return False
        s = f.g[v]
        if s & ins:
            return False
        odd = odd_neighborhood(graph, s)
        for w in s | odd:
            if w != v and not order[v] < order.get(w, -1):
                return False
        lab = graph.labels[v]
        if lab == "XY":
            if v in s or v not in odd:
                return False
        elif lab == "XZ":
            if v not in s or v not in odd:
                return False
        elif lab == "YZ":
            if v not in s or v in odd:
                return False
        else:
            return False
    return True


def extend_gflow_insertion(
    graph: LabeledOpenGraph, f: GFlow, new_vertex: int, legs: set[int]
) -> GFlow:
    """Extend a verified gflow over a freshly inserted YZ vertex on outputs.

    The new vertex corrects itself and is ordered after every non-output
    but before all outputs; existing correction sets are untouched.
    ``graph`` must already contain the new vertex and its leg edges.
    """
    outs = set(graph.outputs)
    if not set(legs) <= outs:
        raise ValueError("inserted gadget legs must all be outputs")
    g2 = dict(f.g)
    g2[new_vertex] = frozenset({new_vertex})
    order2 = {v: 2 * l for v, l in f.order.items()}
    non_out = [v for v in f.order if v not in outs]
    out_levels = [f.order[v] for v in f.order if v in outs]
    top = 2 * min(out_levels) - 1 if out_levels else 1
    if non_out and top <= max(2 * f.order[v] for v in non_out):
        raise ValueError("order levels do not separate outputs")
    order2[new_vertex] = top
    return GFlow(g2, order2)
