import itertools
import random

import pytest

import covadjust as ca
from covadjust.errors import (
    EmptyXOrYError,
    EndpointInZError,
    NotDefiniteStatusError,
    SetsNotDisjointError,
    SizeCapExceededError,
)
from covadjust.graphs import Edge, Graph, GraphClass
from covadjust.paths import NodePathStatus, Path

from oracles import (
    concat_paths,
    cpdag_of,
    is_subsequence,
    mag_class_of,
    moral_d_separated,
    pag_of,
    random_dag,
    small_queries,
)


def path(g, *nodes):
    return Path(g, nodes)


def test_status_collider():
    g = ca.parse_graph("graph dag { X -> V Y -> V }")
    assert ca.status_at(path(g, "X", "V", "Y"), 1) is NodePathStatus.COLLIDER


def test_status_unshielded_circles_is_definite_non_collider():
    g = ca.parse_graph("graph pag { X o-o V V o-o Y }")
    assert ca.status_at(path(g, "X", "V", "Y"), 1) is NodePathStatus.DEFINITE_NON_COLLIDER


def test_status_shielded_circles_is_not_definite():
    g = ca.parse_graph("graph pag { X o-o V V o-o Y X o-o Y }")
    assert ca.status_at(path(g, "X", "V", "Y"), 1) is NodePathStatus.NOT_DEFINITE


def test_status_tail_is_definite_non_collider():
    g = ca.parse_graph("graph dag { V -> X V -> Y }")
    assert ca.status_at(path(g, "X", "V", "Y"), 1) is NodePathStatus.DEFINITE_NON_COLLIDER


def test_status_endpoint_raises():
    g = ca.parse_graph("graph dag { X -> Y }")
    with pytest.raises(IndexError):
        ca.status_at(path(g, "X", "Y"), 0)


def test_classify_figure4a_non_causal(corpus):
    g = corpus("fig4a").graph
    kind = ca.classify(path(g, "X", "V4", "V3", "Y"), {"X"})
    assert not kind.possibly_causal
    assert not kind.causal
    assert kind.proper_wrt_x
    assert kind.definite_status


def test_classify_single_edge_causal():
    g = ca.parse_graph("graph dag { X -> Y }")
    kind = ca.classify(path(g, "X", "Y"), {"X"})
    assert kind.causal and kind.possibly_causal and kind.definite_status


def test_classify_figure1a_backdoor_path(corpus):
    g = corpus("fig1a").graph
    kind = ca.classify(path(g, "X", "Z", "Y"), {"X"})
    assert not kind.possibly_causal
    assert kind.definite_status


def test_classify_causal_implies_possibly_causal():
    rng = random.Random(3)
    for _ in range(10):
        g = random_dag(rng, 5, 0.5)
        for p in ca.enumerate_paths(g, {g.nodes[0]}, {g.nodes[-1]}):
            kind = ca.classify(p, {g.nodes[0]})
            assert not kind.causal or kind.possibly_causal


def test_enumerate_paths_figure1a_subsequences(corpus):
    g = corpus("fig1a").graph
    found = ca.enumerate_paths(g, {"X"}, {"Y"}, proper=True, definite_status=True,
                               possibly_causal=False)
    assert found
    for p in found:
        assert is_subsequence(("X", "Z", "Y"), p.nodes) or is_subsequence(
            ("X", "A", "B", "Y"), p.nodes
        )


def test_enumerate_paths_two_node_graph_has_no_non_causal():
    g = ca.parse_graph("graph dag { X -> Y }")
    assert ca.enumerate_paths(g, {"X"}, {"Y"}, possibly_causal=False) == []


def test_enumerate_paths_figure4b_exactly_three(corpus):
    g = corpus("fig4b").graph
    found = ca.enumerate_paths(g, {"X"}, {"Y"}, proper=True, definite_status=True,
                               possibly_causal=False)
    assert [p.nodes for p in found] == [
        ("X", "V3", "V4", "Y"),
        ("X", "V3", "Y"),
        ("X", "V4", "V3", "Y"),
    ]


def test_enumerate_paths_validates_sets():
    g = ca.parse_graph("graph dag { X -> Y }")
    with pytest.raises(SetsNotDisjointError):
        ca.enumerate_paths(g, {"X"}, {"X"})
    with pytest.raises(EmptyXOrYError):
        ca.enumerate_paths(g, set(), {"Y"})


def test_size_caps_are_hard_errors():
    nodes = [f"N{i}" for i in range(16)]
    g = Graph(GraphClass.DAG, tuple(nodes), frozenset())
    with pytest.raises(SizeCapExceededError):
        ca.enumerate_paths(g, {"N0"}, {"N1"})
    small = ca.parse_graph("graph dag { X -> Y }")
    with pytest.raises(SizeCapExceededError):
        ca.enumerate_paths(small, {"X"}, {"Y"}, max_paths=0)


def test_blocks_conditioned_non_collider():
    g = ca.parse_graph("graph dag { Z -> X Z -> Y }")
    assert ca.blocks(g, path(g, "X", "Z", "Y"), {"Z"})
    assert not ca.blocks(g, path(g, "X", "Z", "Y"), set())


def test_blocks_unconditioned_collider():
    g = ca.parse_graph("graph dag { X -> C Y -> C }")
    assert ca.blocks(g, path(g, "X", "C", "Y"), set())
    assert not ca.blocks(g, path(g, "X", "C", "Y"), {"C"})


def test_blocks_figure4a_any_set_containing_v3(corpus):
    g = corpus("fig4a").graph
    p = path(g, "X", "V4", "V3", "Y")
    assert ca.blocks(g, p, {"V3"})
    assert ca.blocks(g, p, {"V1", "V3"})


def test_blocks_collider_open_via_descendant():
    g = ca.parse_graph("graph dag { X -> C Y -> C C -> D }")
    assert not ca.blocks(g, path(g, "X", "C", "Y"), {"D"})


def test_blocks_errors():
    shielded = ca.parse_graph("graph pag { X o-o V V o-o Y X o-o Y }")
    with pytest.raises(NotDefiniteStatusError):
        ca.blocks(shielded, path(shielded, "X", "V", "Y"), set())
    g = ca.parse_graph("graph dag { Z -> X Z -> Y }")
    with pytest.raises(EndpointInZError):
        ca.blocks(g, path(g, "X", "Z", "Y"), {"X"})


def test_m_connected_trivial_cases():
    g = ca.parse_graph("graph dag { X -> Y }")
    assert ca.m_connected(g, {"X"}, {"Y"})
    collider = ca.parse_graph("graph dag { X -> C Y -> C }")
    assert not ca.m_connected(collider, {"X"}, {"Y"})
    assert ca.m_connected(collider, {"X"}, {"Y"}, {"C"})
    with pytest.raises(SetsNotDisjointError):
        ca.m_connected(g, {"X"}, {"Y"}, {"X"})


def test_m_connected_methods_and_oracle_agree_on_random_dags():
    rng = random.Random(9)
    for _ in range(25):
        g = random_dag(rng, rng.randint(3, 6), 0.45)
        for x, y, z in small_queries(g.nodes, max_xy=1):
            reach = ca.m_connected(g, x, y, z, method="reachability")
            enum = ca.m_connected(g, x, y, z, method="enumeration")
            moral = not moral_d_separated(g, x, y, z)
            assert reach == enum == moral


def test_m_connected_methods_agree_exhaustively_on_three_node_classes():
    names = ("A", "B", "C")
    pairs = list(itertools.combinations(names, 2))
    states = (None, "ab", "ba", "bi", "oo", "oa", "ao")
    marks = {
        "ab": Edge.directed, "ba": lambda a, b: Edge.directed(b, a),
        "bi": Edge.bidirected, "oo": Edge.undirected,
        "oa": Edge.partial, "ao": lambda a, b: Edge.partial(b, a),
    }
    checked = 0
    for combo in itertools.product(states, repeat=3):
        edges = [marks[s](a, b) for s, (a, b) in zip(combo, pairs) if s]
        g = Graph(GraphClass.PAG, names, frozenset(edges))
        for x, y, z in small_queries(names, max_xy=1):
            assert ca.m_connected(g, x, y, z, method="reachability") == ca.m_connected(
                g, x, y, z, method="enumeration"
            )
            checked += 1
    assert checked > 1000


def test_m_connected_methods_agree_on_random_cpdags_and_pags():
    rng = random.Random(12)
    for _ in range(12):
        c = cpdag_of(random_dag(rng, rng.randint(3, 6), 0.4))
        for x, y, z in small_queries(c.nodes, max_xy=1):
            assert ca.m_connected(c, x, y, z, method="reachability") == ca.m_connected(
                c, x, y, z, method="enumeration"
            )
    for _ in range(8):
        d = random_dag(rng, rng.randint(3, 5), 0.5)
        observed = [n for n in d.nodes if rng.random() < 0.8] or list(d.nodes[:2])
        m = ca.latent_project(d, observed)
        p = pag_of(m)
        for x, y, z in small_queries(p.nodes, max_xy=1):
            assert ca.m_connected(p, x, y, z, method="reachability") == ca.m_connected(
                p, x, y, z, method="enumeration"
            )


def test_separating_sets_brute_force(corpus):
    g = corpus("fig3c").graph  # V1 -> X -> V2 -> Y, X -> Y
    seps = ca.separating_sets(g, "V1", "Y")
    assert frozenset({"X"}) in seps
    assert frozenset() not in seps
    full = ca.parse_graph("graph dag { A -> B }")
    assert ca.separating_sets(full, "A", "B") == []


def test_possible_ancestors_mirrors_possible_descendants(corpus):
    g = corpus("fig4a").graph
    for v in g.nodes:
        for w in g.nodes:
            assert (w in ca.possible_descendants(g, {v})) == (
                v in ca.possible_ancestors(g, {w})
            )


def test_figure3c_has_no_proper_definite_non_causal_paths(corpus):
    g = corpus("fig3c").graph
    found = ca.enumerate_paths(g, {"X"}, {"Y"}, proper=True, definite_status=True,
                               possibly_causal=False)
    assert found == []


def test_unshielded_paths_are_definite_status():
    rng = random.Random(21)
    for _ in range(10):
        d = random_dag(rng, 5, 0.5)
        observed = list(d.nodes[:4])
        m = ca.latent_project(d, observed)
        for members in [mag_class_of(m)[:3]]:
            for g in members:
                for p in ca.enumerate_paths(g, {g.nodes[0]}, {g.nodes[-1]}):
                    shielded = any(
                        g.adjacent(p.nodes[i - 1], p.nodes[i + 1])
                        for i in range(1, len(p.nodes) - 1)
                    )
                    if not shielded:
                        assert ca.classify(p).definite_status


def test_blocking_monotone_for_collider_free_paths(corpus):
    g = corpus("fig1a").graph
    p = path(g, "X", "Z", "Y")  # no colliders on it
    rest = [n for n in g.nodes if n not in p.nodes]
    for r in range(len(rest) + 1):
        for z in itertools.combinations(rest, r):
            if ca.blocks(g, p, set(z) | {"Z"}):
                assert ca.blocks(g, p, set(z) | {"Z"} | {rest[0]})


def test_classify_definite_status_invariant_under_reversal(corpus):
    for name in ("fig1a", "fig4a", "fig4b"):
        g = corpus(name).graph
        for p in ca.enumerate_paths(g, {"X"}, {"Y"}):
            assert ca.classify(p).definite_status == ca.classify(p.reversed()).definite_status


def test_concatenation_with_loop_removal():
    g = corpus_graph = ca.parse_graph("graph dag { A -> B B -> C A -> C C -> D }")
    p = ("A", "B", "C", "D")
    assert concat_paths(p[:3], p[2:]) == p
    # loop gets cut at the first revisit
    assert concat_paths(("A", "B", "C"), ("C", "A", "B"))[0] == "A"
    joined = concat_paths(("D", "C", "A"), ("A", "B", "C"))
    assert joined == ("D", "C")
    Path(g, joined)  # still a valid path
