"""Partial mixed graphs with per-endpoint edge marks.

A graph here is one of four classes: DAG, CPDAG, MAG or PAG.  Each edge
carries a mark (tail, arrowhead or circle) at each endpoint, so a directed
edge X -> Y is (tail at X, arrow at Y), a bidirected edge X <-> Y is
(arrow, arrow), a non-directed edge X o-o Y is (circle, circle) and a
partially directed edge X o-> Y is (circle, arrow).  CPDAG undirected
edges are stored as (circle, circle); tail-tail and tail-circle edges are
rejected everywhere because selection variables are out of scope.

Graphs are immutable after construction and all operations are pure
functions, so everything in this package is safe for concurrent reads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

from .errors import (
    AlmostDirectedCycleError,
    ClassMismatchError,
    DirectedCycleError,
    DuplicateEdgeError,
    MarkNotAllowedError,
    UnknownNodeError,
)

Node = str
NodeSet = frozenset


class Mark(Enum):
    """Edge mark at one endpoint: tail, arrowhead or circle (unknown)."""

    TAIL = "-"
    ARROW = ">"
    CIRCLE = "o"


class GraphClass(Enum):
    DAG = "dag"
    CPDAG = "cpdag"
    MAG = "mag"
    PAG = "pag"


# Mark pairs allowed per class, as unordered {frozenset of (mark_a, mark_b)}.
_DIRECTED = frozenset({(Mark.TAIL, Mark.ARROW), (Mark.ARROW, Mark.TAIL)})
_BIDIRECTED = frozenset({(Mark.ARROW, Mark.ARROW)})
_NONDIRECTED = frozenset({(Mark.CIRCLE, Mark.CIRCLE)})
_PARTIAL = frozenset({(Mark.CIRCLE, Mark.ARROW), (Mark.ARROW, Mark.CIRCLE)})

_ALLOWED_MARKS = {
    GraphClass.DAG: _DIRECTED,
    GraphClass.CPDAG: _DIRECTED | _NONDIRECTED,
    GraphClass.MAG: _DIRECTED | _BIDIRECTED,
    GraphClass.PAG: _DIRECTED | _BIDIRECTED | _NONDIRECTED | _PARTIAL,
}


@dataclass(frozen=True)
class Edge:
    """One edge with a mark at each endpoint.

    Endpoints are stored in lexicographic order so that the same edge
    written in either direction compares equal.
    """

    a: Node
    b: Node
    mark_a: Mark
    mark_b: Mark

    def __post_init__(self):
        if self.a == self.b:
            raise MarkNotAllowedError(f"self loop at {self.a}")
        if self.a > self.b:
            a, b, ma, mb = self.b, self.a, self.mark_b, self.mark_a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
            object.__setattr__(self, "mark_a", ma)
            object.__setattr__(self, "mark_b", mb)

    @staticmethod
    def directed(tail: Node, head: Node) -> "Edge":
        """tail -> head"""
        return Edge(tail, head, Mark.TAIL, Mark.ARROW)

    @staticmethod
    def bidirected(a: Node, b: Node) -> "Edge":
        """a <-> b"""
        return Edge(a, b, Mark.ARROW, Mark.ARROW)

    @staticmethod
    def undirected(a: Node, b: Node) -> "Edge":
        """a o-o b (also the storage for CPDAG undirected edges)"""
        return Edge(a, b, Mark.CIRCLE, Mark.CIRCLE)

    @staticmethod
    def partial(circle: Node, head: Node) -> "Edge":
        """circle o-> head"""
        return Edge(circle, head, Mark.CIRCLE, Mark.ARROW)

    def mark_at(self, node: Node) -> Mark:
        if node == self.a:
            return self.mark_a
        if node == self.b:
            return self.mark_b
        raise UnknownNodeError(f"{node} is not an endpoint of {self.a}-{self.b}")

    def other(self, node: Node) -> Node:
        return self.b if node == self.a else self.a

    def is_directed(self) -> bool:
        return {self.mark_a, self.mark_b} == {Mark.TAIL, Mark.ARROW}

    def is_bidirected(self) -> bool:
        return self.mark_a is Mark.ARROW and self.mark_b is Mark.ARROW

    def tail_node(self) -> Node:
        """Source of a directed edge."""
        if not self.is_directed():
            raise MarkNotAllowedError(f"{self} is not a directed edge")
        return self.a if self.mark_a is Mark.TAIL else self.b


@dataclass(frozen=True)
class Graph:
    """Immutable partial mixed graph with a class tag.

    Construction checks structural invariants only (distinct node names,
    known endpoints, one edge per pair, class mark vocabulary).  The
    class-level invariants that need graph algorithms (acyclicity,
    ancestrality, maximality, equivalence-class round trips) are enforced
    by :func:`build_graph`.

    Node order is the declaration order and is used to sort every
    set-valued output deterministically.
    """

    graph_class: GraphClass
    nodes: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if len(set(self.nodes)) != len(self.nodes):
            dup = sorted({n for n in self.nodes if self.nodes.count(n) > 1})
            raise DuplicateEdgeError(f"duplicate node declaration: {', '.join(dup)}")
        known = set(self.nodes)
        allowed = _ALLOWED_MARKS[self.graph_class]
        seen_pairs = set()
        for e in self.edges:
            if e.a not in known or e.b not in known:
                raise UnknownNodeError(f"edge endpoint not declared: {e.a}-{e.b}")
            if (e.a, e.b) in seen_pairs:
                raise DuplicateEdgeError(f"more than one edge between {e.a} and {e.b}")
            seen_pairs.add((e.a, e.b))
            if (e.mark_a, e.mark_b) not in allowed:
                raise MarkNotAllowedError(
                    f"edge {e.a} {_edge_glyph(e)} {e.b} not allowed in a {self.graph_class.value}"
                )

    @cached_property
    def node_index(self) -> dict:
        return {n: i for i, n in enumerate(self.nodes)}

    @cached_property
    def _adjacency(self) -> dict:
        adj = {n: {} for n in self.nodes}
        for e in self.edges:
            adj[e.a][e.b] = e
            adj[e.b][e.a] = e
        return adj

    def neighbors(self, node: Node) -> frozenset:
        self._require(node)
        return frozenset(self._adjacency[node])

    def adjacent(self, a: Node, b: Node) -> bool:
        return b in self._adjacency[a]

    def edge_between(self, a: Node, b: Node):
        return self._adjacency[a].get(b)

    def mark_at(self, near: Node, far: Node) -> Mark:
        """Mark at the `near` endpoint of the edge near-far."""
        e = self._adjacency[near].get(far)
        if e is None:
            raise UnknownNodeError(f"no edge between {near} and {far}")
        return e.mark_at(near)

    def sort_nodes(self, nodes: Iterable[Node]) -> tuple:
        """Sort by declaration order (the deterministic reporting order)."""
        return tuple(sorted(nodes, key=self.node_index.__getitem__))

    def _require(self, *nodes: Node):
        for n in nodes:
            if n not in self.node_index:
                raise UnknownNodeError(f"unknown node: {n}")


def _edge_glyph(e: Edge) -> str:
    left = {Mark.TAIL: "-", Mark.ARROW: "<", Mark.CIRCLE: "o"}[e.mark_a]
    right = {Mark.TAIL: "-", Mark.ARROW: ">", Mark.CIRCLE: "o"}[e.mark_b]
    return f"{left}-{right}"


def _as_set(g: Graph, nodes) -> frozenset:
    s = frozenset([nodes]) if isinstance(nodes, str) else frozenset(nodes)
    g._require(*s)
    return s


def parents(g: Graph, s) -> frozenset:
    """Nodes W with a directed edge W -> v into some v in `s`."""
    s = _as_set(g, s)
    out = set()
    for v in s:
        for w, e in g._adjacency[v].items():
            if e.mark_at(w) is Mark.TAIL and e.mark_at(v) is Mark.ARROW:
                out.add(w)
    return frozenset(out)


def children(g: Graph, s) -> frozenset:
    """Nodes W with a directed edge v -> W out of some v in `s`."""
    s = _as_set(g, s)
    out = set()
    for v in s:
        for w, e in g._adjacency[v].items():
            if e.mark_at(v) is Mark.TAIL and e.mark_at(w) is Mark.ARROW:
                out.add(w)
    return frozenset(out)


def _directed_closure(g: Graph, s: frozenset, reverse: bool = False) -> frozenset:
    """Reachability along directed edges only; includes `s` itself."""
    seen = set(s)
    stack = list(s)
    while stack:
        v = stack.pop()
        for w, e in g._adjacency[v].items():
            if w in seen:
                continue
            near, far = (w, v) if reverse else (v, w)
            if e.mark_at(near) is Mark.TAIL and e.mark_at(far) is Mark.ARROW:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def descendants(g: Graph, s) -> frozenset:
    """Directed-edge reachability from `s`, including `s`.  DAG/MAG only."""
    if g.graph_class not in (GraphClass.DAG, GraphClass.MAG):
        raise ClassMismatchError("descendants is defined for DAGs and MAGs only")
    return _directed_closure(g, _as_set(g, s))


def ancestors(g: Graph, s) -> frozenset:
    """Directed-edge reachability into `s`, including `s`.  DAG/MAG only."""
    if g.graph_class not in (GraphClass.DAG, GraphClass.MAG):
        raise ClassMismatchError("ancestors is defined for DAGs and MAGs only")
    return _directed_closure(g, _as_set(g, s), reverse=True)


def possible_descendants(g: Graph, s) -> frozenset:
    """Possibly-directed-path reachability from `s`, including `s`.

    A path is possibly directed when no edge on it has an arrowhead at the
    endpoint nearer the start, so the traversal follows any edge whose
    near-side mark is not an arrow.
    """
    s = _as_set(g, s)
    seen = set(s)
    stack = list(s)
    while stack:
        v = stack.pop()
        for w, e in g._adjacency[v].items():
            if w not in seen and e.mark_at(v) is not Mark.ARROW:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def possible_ancestors(g: Graph, s) -> frozenset:
    """Nodes with a possibly directed path into `s`, including `s`."""
    s = _as_set(g, s)
    seen = set(s)
    stack = list(s)
    while stack:
        v = stack.pop()
        for w, e in g._adjacency[v].items():
            if w not in seen and e.mark_at(w) is not Mark.ARROW:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def _find_directed_cycle(g: Graph):
    """Return a node list forming a directed cycle, or None."""
    color = {n: 0 for n in g.nodes}  # 0 unvisited, 1 on stack, 2 done
    parent = {}
    for root in g.nodes:
        if color[root]:
            continue
        stack = [(root, iter(g.sort_nodes(children(g, [root]))))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(g.sort_nodes(children(g, [w])))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return None


def _find_almost_directed_cycle(g: Graph):
    """Return a directed path A..B with B <-> A present, or None."""
    for e in sorted(g.edges, key=lambda e: (g.node_index[e.a], g.node_index[e.b])):
        if not e.is_bidirected():
            continue
        for src, dst in ((e.a, e.b), (e.b, e.a)):
            path = _shortest_directed_path(g, src, dst)
            if path and len(path) > 1:
                return path
    return None


def _shortest_directed_path(g: Graph, src: Node, dst: Node):
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for w in g.sort_nodes(children(g, [v])):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def validate_graph(g: Graph, **caps) -> None:
    """Check the class invariants that go beyond mark vocabulary.

    DAG: no directed cycles.  MAG: ancestral and maximal.  CPDAG and PAG:
    validated by the equivalence-class round trip (enumerate members and
    require their mark union to reproduce the input).  Raises the specific
    error naming the violated invariant, with a witness where one exists.
    """
    if g.graph_class is GraphClass.DAG:
        cycle = _find_directed_cycle(g)
        if cycle:
            raise DirectedCycleError(cycle)
    elif g.graph_class is GraphClass.MAG:
        validate_ancestral(g)
        from .paths import require_maximal

        require_maximal(g)
    elif g.graph_class is GraphClass.CPDAG:
        from .mec import enumerate_dags

        enumerate_dags(g, **caps)
    elif g.graph_class is GraphClass.PAG:
        from .mec import enumerate_mags

        enumerate_mags(g, **caps)


def validate_ancestral(g: Graph) -> None:
    """Raise unless the graph has no directed and no almost directed cycle."""
    cycle = _find_directed_cycle(g)
    if cycle:
        raise DirectedCycleError(cycle)
    almost = _find_almost_directed_cycle(g)
    if almost:
        raise AlmostDirectedCycleError(almost)


def build_graph(graph_class: GraphClass, nodes, edges, **caps) -> Graph:
    """Construct and fully validate a graph of the given class.

    `nodes` fixes the declaration order; `edges` is any iterable of
    :class:`Edge`.  Returns the validated immutable graph or raises the
    error naming the violated class invariant.
    """
    g = Graph(graph_class, tuple(nodes), frozenset(edges))
    validate_graph(g, **caps)
    return g
