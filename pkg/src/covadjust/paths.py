"""Paths, definite status, blocking and m-separation.

A path is a sequence of distinct nodes in which successive nodes are
adjacent.  An interior node is a collider when both incident path edges
have arrowheads at it; it is a definite non-collider when some incident
path edge has a tail at it, or both marks at it are circles and its path
neighbours are non-adjacent (unshielded).  A path is of definite status
when every interior node is one or the other.

A definite status path is m-connecting given Z when no definite
non-collider on it is in Z and every collider on it has a descendant in
Z; otherwise Z blocks it.  The collider condition uses directed-edge
reachability in every graph class (circles never count), following the
standard definite-status m-separation for partial graphs.

`m_connected` ships two implementations that are cross-checked in the
test suite: exhaustive enumeration over definite status paths (the
definition) and a reachability search over (previous node, current node)
states honouring the same local rules.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import (
    EmptyXOrYError,
    EndpointInZError,
    NotDefiniteStatusError,
    SetsNotDisjointError,
    SizeCapExceededError,
    UnknownNodeError,
)
from .graphs import Graph, Mark, _as_set, _directed_closure

DEFAULT_NODE_CAP = 15
DEFAULT_PATH_CAP = 10**6


class NodePathStatus(Enum):
    COLLIDER = "collider"
    DEFINITE_NON_COLLIDER = "definite-non-collider"
    NOT_DEFINITE = "not-definite"
    ENDPOINT = "endpoint"


@dataclass(frozen=True)
class Path:
    """A concrete path in a graph: at least two distinct adjacent nodes."""

    graph: Graph
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) < 2:
            raise UnknownNodeError("a path has at least two nodes")
        if len(set(self.nodes)) != len(self.nodes):
            raise UnknownNodeError(f"path nodes are not distinct: {self.nodes}")
        for a, b in zip(self.nodes, self.nodes[1:]):
            if not self.graph.adjacent(a, b):
                raise UnknownNodeError(f"{a} and {b} are not adjacent")

    def __len__(self):
        return len(self.nodes) - 1  # length = number of edges

    def reversed(self) -> "Path":
        return Path(self.graph, self.nodes[::-1])


@dataclass(frozen=True)
class PathKind:
    possibly_causal: bool
    causal: bool
    proper_wrt_x: bool
    definite_status: bool


def _triple_status(g: Graph, left, mid, right) -> NodePathStatus:
    m_left = g.mark_at(mid, left)
    m_right = g.mark_at(mid, right)
    if m_left is Mark.ARROW and m_right is Mark.ARROW:
        return NodePathStatus.COLLIDER
    if m_left is Mark.TAIL or m_right is Mark.TAIL:
        return NodePathStatus.DEFINITE_NON_COLLIDER
    if m_left is Mark.CIRCLE and m_right is Mark.CIRCLE and not g.adjacent(left, right):
        return NodePathStatus.DEFINITE_NON_COLLIDER
    return NodePathStatus.NOT_DEFINITE


def status_at(p: Path, i: int) -> NodePathStatus:
    """Status of the node at position `i`, which must be interior."""
    if not 0 < i < len(p.nodes) - 1:
        raise IndexError(f"position {i} is not interior on a path of {len(p.nodes)} nodes")
    return _triple_status(p.graph, p.nodes[i - 1], p.nodes[i], p.nodes[i + 1])


def classify(p: Path, x=()) -> PathKind:
    """Classify a path: (possibly) causal, proper with respect to `x`, definite status."""
    g = p.graph
    x = _as_set(g, x) if x else frozenset()
    possibly_causal = True
    causal = True
    for a, b in zip(p.nodes, p.nodes[1:]):
        if g.mark_at(a, b) is Mark.ARROW:
            possibly_causal = False
        if not (g.mark_at(a, b) is Mark.TAIL and g.mark_at(b, a) is Mark.ARROW):
            causal = False
    proper = bool(x) and p.nodes[0] in x and not any(n in x for n in p.nodes[1:])
    definite = all(
        status_at(p, i) is not NodePathStatus.NOT_DEFINITE for i in range(1, len(p.nodes) - 1)
    )
    return PathKind(possibly_causal, causal, proper, definite)


def _check_caps(g: Graph, max_nodes):
    cap = DEFAULT_NODE_CAP if max_nodes is None else max_nodes
    if len(g.nodes) > cap:
        raise SizeCapExceededError(f"{len(g.nodes)} nodes exceeds the cap of {cap}")


def enumerate_paths(
    g: Graph,
    x,
    y,
    *,
    possibly_causal=None,
    causal=None,
    proper=None,
    definite_status=None,
    max_nodes=None,
    max_paths=None,
):
    """All simple paths from a node of `x` to a node of `y` matching the mask.

    Each filter flag is True (require), False (forbid) or None (ignore).
    Paths come out in lexicographic order of node declaration indices.
    Exceeding a cap raises, never truncates.
    """
    x = _as_set(g, x)
    y = _as_set(g, y)
    if not x or not y:
        raise EmptyXOrYError("x and y must be non-empty")
    if x & y:
        raise SetsNotDisjointError(f"x and y overlap: {sorted(x & y)}")
    _check_caps(g, max_nodes)
    path_cap = DEFAULT_PATH_CAP if max_paths is None else max_paths

    found = []

    def matches(p: Path) -> bool:
        kind = classify(p, x)
        for want, have in (
            (possibly_causal, kind.possibly_causal),
            (causal, kind.causal),
            (proper, kind.proper_wrt_x),
            (definite_status, kind.definite_status),
        ):
            if want is not None and have is not want:
                return False
        return True

    def extend(path):
        cur = path[-1]
        if cur in y:
            p = Path(g, tuple(path))
            if matches(p):
                found.append(p)
                if len(found) > path_cap:
                    raise SizeCapExceededError(f"more than {path_cap} paths")
        for nxt in g.sort_nodes(g.neighbors(cur)):
            if nxt in path:
                continue
            # prefix-final constraints prune exactly
            if proper is True and nxt in x:
                continue
            if causal is True and not (
                g.mark_at(cur, nxt) is Mark.TAIL and g.mark_at(nxt, cur) is Mark.ARROW
            ):
                continue
            if possibly_causal is True and g.mark_at(cur, nxt) is Mark.ARROW:
                continue
            if (
                definite_status is True
                and len(path) >= 2
                and _triple_status(g, path[-2], cur, nxt) is NodePathStatus.NOT_DEFINITE
            ):
                continue
            path.append(nxt)
            extend(path)
            path.pop()

    for start in g.sort_nodes(x):
        extend([start])
    return found


def blocks(g: Graph, p: Path, z) -> bool:
    """Whether `z` blocks the definite status path `p`."""
    z = _as_set(g, z)
    if p.nodes[0] in z or p.nodes[-1] in z:
        raise EndpointInZError("path endpoints may not be conditioned on")
    an_z = _directed_closure(g, z, reverse=True)
    for i in range(1, len(p.nodes) - 1):
        status = status_at(p, i)
        v = p.nodes[i]
        if status is NodePathStatus.NOT_DEFINITE:
            raise NotDefiniteStatusError(f"{v} is not of definite status on {p.nodes}")
        if status is NodePathStatus.DEFINITE_NON_COLLIDER and v in z:
            return True
        if status is NodePathStatus.COLLIDER and v not in an_z:
            return True
    return False


def _triple_open(g: Graph, left, mid, right, z, an_z) -> bool:
    status = _triple_status(g, left, mid, right)
    if status is NodePathStatus.COLLIDER:
        return mid in an_z
    if status is NodePathStatus.DEFINITE_NON_COLLIDER:
        return mid not in z
    return False


def _validate_disjoint(g, x, y, z):
    x = _as_set(g, x)
    y = _as_set(g, y)
    z = _as_set(g, z)
    if not x or not y:
        raise EmptyXOrYError("x and y must be non-empty")
    for a, b in ((x, y), (x, z), (y, z)):
        if a & b:
            raise SetsNotDisjointError(f"sets overlap: {sorted(a & b)}")
    return x, y, z


def _m_connected_reachability(g: Graph, x, y, z) -> bool:
    """Search over (previous, current) states with the local open rules."""
    an_z = _directed_closure(g, z, reverse=True)
    seen = set()
    queue = deque()
    for s in g.sort_nodes(x):
        for w in g.sort_nodes(g.neighbors(s)):
            if w in y:
                return True
            queue.append((s, w))
            seen.add((s, w))
    while queue:
        u, v = queue.popleft()
        for w in g.sort_nodes(g.neighbors(v)):
            if w == u or (v, w) in seen:
                continue
            if not _triple_open(g, u, v, w, z, an_z):
                continue
            if w in y:
                return True
            seen.add((v, w))
            queue.append((v, w))
    return False


def _m_connected_enumeration(g: Graph, x, y, z, max_nodes=None, max_paths=None) -> bool:
    for p in enumerate_paths(
        g, x, y, definite_status=True, max_nodes=max_nodes, max_paths=max_paths
    ):
        if not blocks(g, p, z):
            return True
    return False


def m_connected(g: Graph, x, y, z=(), *, method="reachability", max_nodes=None, max_paths=None) -> bool:
    """Whether some definite status path between `x` and `y` is open given `z`.

    `method` selects the implementation: "reachability" (default) or
    "enumeration".  The two agree on all four graph classes and are
    cross-checked in the test suite.
    """
    x, y, z = _validate_disjoint(g, x, y, z)
    if method == "reachability":
        return _m_connected_reachability(g, x, y, z)
    if method == "enumeration":
        return _m_connected_enumeration(g, x, y, z, max_nodes=max_nodes, max_paths=max_paths)
    raise ValueError(f"unknown method: {method}")


def m_separated(g: Graph, x, y, z=(), **kwargs) -> bool:
    return not m_connected(g, x, y, z, **kwargs)


def find_open_definite_path(
    g: Graph, x, y, z, *, proper=False, require_non_causal=False, skip_first=None
):
    """Shortest open definite status path from `x` to `y` given `z`, or None.

    With `proper`, nodes of `x` may appear only in first position.  With
    `require_non_causal`, the path must carry an arrowhead back towards its
    start somewhere.  `skip_first(start, first)` exempts first edges from
    the search.  Interior statuses and blocking are decided by the local
    triple rules, so prefix pruning is exact; breadth-first search with
    declaration-ordered expansion makes the result deterministic
    (shortest, then lexicographic).
    """
    x = _as_set(g, x)
    y = _as_set(g, y)
    z = _as_set(g, z)
    an_z = _directed_closure(g, z, reverse=True)
    queue = deque()
    for s in g.sort_nodes(x):
        queue.append(((s,), False))
    while queue:
        path, non_causal = queue.popleft()
        cur = path[-1]
        if cur in y and len(path) >= 2 and (non_causal or not require_non_causal):
            return path
        for nxt in g.sort_nodes(g.neighbors(cur)):
            if nxt in path:
                continue
            if proper and nxt in x:
                continue
            if len(path) == 1 and skip_first is not None and skip_first(cur, nxt):
                continue
            if len(path) >= 2 and not _triple_open(g, path[-2], cur, nxt, z, an_z):
                continue
            queue.append((path + (nxt,), non_causal or g.mark_at(cur, nxt) is Mark.ARROW))
    return None


def separating_sets(g: Graph, a, b, *, method="reachability"):
    """All subsets of V minus {a, b} that m-separate `a` from `b`."""
    rest = [n for n in g.nodes if n not in (a, b)]
    out = []
    for r in range(len(rest) + 1):
        for z in itertools.combinations(rest, r):
            if not m_connected(g, [a], [b], z, method=method):
                out.append(frozenset(z))
    return out


def require_maximal(g: Graph) -> None:
    """Raise unless every non-adjacent pair can be m-separated by some subset."""
    from .errors import NotMaximalError

    for i, a in enumerate(g.nodes):
        for b in g.nodes[i + 1 :]:
            if g.adjacent(a, b):
                continue
            rest = [n for n in g.nodes if n not in (a, b)]
            if not any(
                not _m_connected_reachability(g, frozenset([a]), frozenset([b]), frozenset(zc))
                for r in range(len(rest) + 1)
                for zc in itertools.combinations(rest, r)
            ):
                raise NotMaximalError((a, b))
