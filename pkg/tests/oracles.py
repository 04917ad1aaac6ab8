"""Independent reference implementations and random-instance generators.

Everything here exists to cross-check the library through a different
route than the one under test: moralization instead of path blocking,
explicit path sums instead of matrix inverses, exhaustive orientation
sweeps instead of class-aware enumeration.
"""

import itertools

from covadjust.errors import GraphError
from covadjust.graphs import Edge, Graph, GraphClass, Mark, _find_directed_cycle, validate_ancestral
from covadjust.mec import _mark_union, separation_fingerprint, unshielded_colliders


def directed_pairs(g):
    """(tail, head) for every directed edge, read off the raw marks."""
    out = []
    for e in g.edges:
        if e.mark_a is Mark.TAIL and e.mark_b is Mark.ARROW:
            out.append((e.a, e.b))
        elif e.mark_b is Mark.TAIL and e.mark_a is Mark.ARROW:
            out.append((e.b, e.a))
    return out


def moral_d_separated(dag, x, y, z):
    """Textbook d-separation oracle: ancestral subgraph, moralize, then
    undirected connectivity avoiding z."""
    x, y, z = set(x), set(y), set(z)
    arrows = directed_pairs(dag)
    anc = set(x | y | z)
    changed = True
    while changed:
        changed = False
        for tail, head in arrows:
            if head in anc and tail not in anc:
                anc.add(tail)
                changed = True
    und = {n: set() for n in anc}
    parents_of = {n: set() for n in anc}
    for tail, head in arrows:
        if tail in anc and head in anc:
            und[tail].add(head)
            und[head].add(tail)
            parents_of[head].add(tail)
    for ps in parents_of.values():
        for p1, p2 in itertools.combinations(sorted(ps), 2):
            und[p1].add(p2)
            und[p2].add(p1)
    stack = list(x)
    seen = set(x)
    while stack:
        v = stack.pop()
        if v in y:
            return False
        for w in und.get(v, ()):
            if w not in seen and w not in z:
                seen.add(w)
                stack.append(w)
    return True


def path_sum_total_effect(sem, x, y):
    """Total effects as explicit sums of edge-coefficient products over
    directed paths, after severing the edges into the intervened nodes."""
    g = sem.graph
    idx = g.node_index
    children = {n: [] for n in g.nodes}
    for tail, head in directed_pairs(g):
        if head not in x:
            children[tail].append(head)
    totals = []
    for s in sorted(x, key=idx.__getitem__):
        acc = 0.0
        stack = [(s, 1.0)]
        while stack:
            v, prod = stack.pop()
            if v == y:
                acc += prod
                continue
            for w in children[v]:
                stack.append((w, prod * sem.coeffs[idx[v], idx[w]]))
        totals.append(acc)
    return totals


def is_subsequence(sub, seq):
    it = iter(seq)
    return all(s in it for s in sub)


def concat_paths(p, q):
    """Concatenate two node sequences sharing an endpoint; cut at the
    first revisit and splice so the result is again a path."""
    assert p[-1] == q[0]
    out = []
    for v in list(p) + list(q[1:]):
        if v in out:
            out = out[: out.index(v) + 1]
        else:
            out.append(v)
    return tuple(out)


def random_dag(rng, n, p, prefix="N"):
    """Random DAG: random topological order, independent edges."""
    names = tuple(f"{prefix}{i}" for i in range(n))
    order = list(names)
    rng.shuffle(order)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append(Edge.directed(order[i], order[j]))
    return Graph(GraphClass.DAG, names, frozenset(edges))


def cpdag_of(dag):
    """The CPDAG of a DAG by exhaustive orientation sweep: all acyclic
    same-skeleton orientations with the same unshielded colliders."""
    pairs = sorted((e.a, e.b) for e in dag.edges)
    target = unshielded_colliders(dag)
    members = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        edges = [
            Edge.directed(a, b) if bit == 0 else Edge.directed(b, a)
            for bit, (a, b) in zip(bits, pairs)
        ]
        g = Graph(GraphClass.DAG, dag.nodes, frozenset(edges))
        if _find_directed_cycle(g) is None and unshielded_colliders(g) == target:
            members.append(g)
    return _mark_union(members, GraphClass.CPDAG, dag.nodes)


def mag_class_of(mag):
    """All valid MAGs Markov equivalent to `mag`, by exhaustive sweep over
    the three orientations of every skeleton edge."""
    pairs = sorted((e.a, e.b) for e in mag.edges)
    target_uc = unshielded_colliders(mag)
    target_fp = separation_fingerprint(mag)
    members = []
    for combo in itertools.product(("ab", "ba", "bi"), repeat=len(pairs)):
        edges = []
        for state, (a, b) in zip(combo, pairs):
            if state == "ab":
                edges.append(Edge.directed(a, b))
            elif state == "ba":
                edges.append(Edge.directed(b, a))
            else:
                edges.append(Edge.bidirected(a, b))
        g = Graph(GraphClass.MAG, mag.nodes, frozenset(edges))
        if unshielded_colliders(g) != target_uc:
            continue
        try:
            validate_ancestral(g)
        except GraphError:
            continue
        if separation_fingerprint(g) == target_fp:
            members.append(g)
    return members


def pag_of(mag):
    """The PAG of a MAG: mark union over its whole equivalence class."""
    return _mark_union(mag_class_of(mag), GraphClass.PAG, mag.nodes)


def small_queries(nodes, max_xy=2, max_z=None):
    """All disjoint (X, Y, Z) over `nodes` with |X|, |Y| bounded."""
    nodes = list(nodes)
    for kx in range(1, max_xy + 1):
        for x in itertools.combinations(nodes, kx):
            rest1 = [n for n in nodes if n not in x]
            for ky in range(1, max_xy + 1):
                for y in itertools.combinations(rest1, ky):
                    rest2 = [n for n in rest1 if n not in y]
                    top = len(rest2) if max_z is None else min(max_z, len(rest2))
                    for kz in range(top + 1):
                        for z in itertools.combinations(rest2, kz):
                            yield frozenset(x), frozenset(y), frozenset(z)
