import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from flexigraph import _backend, graphs
from flexigraph.automorphisms import find_automorphism, small_aut
from flexigraph.errors import Acyclic, MultiEdge, NotACycleCover, NotFourValent, TooLarge
from flexigraph.graphs import LabeledGraph, certify_graph, edge_girth_profile, girth, split


def from_nx(g):
    g = nx.convert_node_labels_to_integers(g)
    return LabeledGraph.from_edges(g.number_of_nodes(), g.edges())


def cycle(n):
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def octahedron():
    # 0,1,2 = triangle; 3,4,5 = opposite vertices of 0,1,2
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
             (0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)]
    cycles = [[0, 1, 2], [3, 4, 5], [0, 4, 2, 3, 1, 5]]
    return LabeledGraph.from_edges(6, edges), cycles


def test_multi_edge_rejected():
    with pytest.raises(MultiEdge):
        LabeledGraph(3, [(0, 1), (1, 0)])
    with pytest.raises(MultiEdge):
        LabeledGraph(3, [(1, 1)])


def test_girth_examples():
    assert girth(cycle(4)) == 4
    assert girth(from_nx(nx.petersen_graph())) == 5
    with pytest.raises(Acyclic):
        girth(from_nx(nx.path_graph(5)))


def test_girth_cycle_counts_examples():
    assert set(edge_girth_profile(cycle(4)).values()) == {1}
    k4 = from_nx(nx.complete_graph(4))
    assert girth(k4) == 3
    assert set(edge_girth_profile(k4).values()) == {2}
    # Petersen: 12 pentagons, 5 edges each, 15 edges -> 4 per edge
    assert set(edge_girth_profile(from_nx(nx.petersen_graph())).values()) == {4}


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 14), st.integers(0, 2**31 - 1))
def test_girth_against_networkx(n, seed):
    g = nx.gnm_random_graph(n, n + 3, seed=seed)
    lg = from_nx(g)
    expect = nx.girth(g)
    if expect == float("inf"):
        with pytest.raises(Acyclic):
            girth(lg)
    else:
        assert girth(lg) == expect


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 12), st.integers(0, 2**31 - 1))
def test_girth_counts_against_brute_force(n, seed):
    g = nx.gnm_random_graph(n, n + 4, seed=seed)
    lg = from_nx(g)
    gv = nx.girth(g)
    if gv == float("inf"):
        return
    counts = {e: 0 for e in lg.edges}
    for c in nx.simple_cycles(g.to_undirected(), length_bound=gv):
        if len(c) == gv:
            for k in range(gv):
                u, v = c[k], c[(k + 1) % gv]
                counts[(min(u, v), max(u, v))] += 1
    assert edge_girth_profile(lg, gv) == counts


@pytest.mark.skipif(_backend.name != "cython", reason="compiled backend not built")
def test_graph_kernels_backend_parity():
    lg = from_nx(nx.random_regular_graph(3, 60, seed=4))
    ip, ix = lg.csr()
    from flexigraph import _ckernels, _pykernels
    assert _ckernels.girth(ip, ix) == _pykernels.girth(ip, ix)
    gv = _pykernels.girth(ip, ix)
    assert list(_ckernels.girth_cycle_counts(ip, ix, lg.edges, gv)) == \
        list(_pykernels.girth_cycle_counts(ip, ix, lg.edges, gv))


def test_split_octahedron():
    g, cycles = octahedron()
    sp = split(g, cycles)
    assert sp.graph.n == 12 and sp.graph.is_regular(3)
    assert len(sp.graph.edges) == 3 * g.n
    assert len(sp.matching_edges) == g.n and len(sp.cycle_class_edges) == len(g.edges)
    assert girth(sp.graph) == 3


def test_split_errors():
    g, cycles = octahedron()
    with pytest.raises(NotACycleCover):
        split(g, cycles[:2])
    with pytest.raises(NotACycleCover):
        split(g, [[0, 1, 2], [3, 4, 5], [0, 4, 2, 3, 1, 5], [0, 1, 2]])
    with pytest.raises(NotFourValent):
        split(from_nx(nx.petersen_graph()), [])


def _brute_aut_order(g):
    edges = set(g.edges)
    return sum(1 for p in itertools.permutations(range(g.n))
               if all((min(p[u], p[v]), max(p[u], p[v])) in edges for u, v in edges))


def test_small_aut_examples():
    assert small_aut(cycle(3)).order == 6
    cube = from_nx(nx.hypercube_graph(3))
    assert small_aut(cube).order == _brute_aut_order(cube) == 48
    assert small_aut(from_nx(nx.petersen_graph())).order == 120
    with pytest.raises(TooLarge):
        small_aut(cube, max_n=4)


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 7), st.integers(0, 2**31 - 1))
def test_small_aut_against_brute_force(n, seed):
    g = from_nx(nx.gnm_random_graph(n, n + 1, seed=seed))
    res = small_aut(g)
    assert res.order == _brute_aut_order(g)
    es = set(g.edges)
    for p in res.generators:
        assert {(min(p[u], p[v]), max(p[u], p[v])) for u, v in es} == es


def test_find_automorphism():
    g = from_nx(nx.petersen_graph())
    p = find_automorphism(g, [0], [7])
    assert p is not None and p[0] == 7


def test_prism_is_not_flexible():
    prism = from_nx(nx.circular_ladder_graph(3))
    cert = certify_graph(prism)
    assert cert.verdict == "FAIL"
    assert cert.is_cubic and cert.vertex_transitive


def test_delta2_split_classes(build2):
    d = build2.delta.graph
    sp = build2.split
    assert len(sp.matching_edges) == d.n
    assert len(sp.cycle_class_edges) == len(d.edges)


def test_gamma2_certificate(build2):
    c = build2.certificate
    assert c.verdict == "PASS"
    assert (c.n, c.girth, c.cycle_lengths, c.stabilizer_order) == (64, 4, [4], 4)
    assert c.full_aut_edge_orbits == 2 and c.full_aut_order >= 4 * c.n
    prof = edge_girth_profile(build2.split.graph)
    match = {prof[e] for e in build2.split.matching_edges}
    cyc = {prof[e] for e in build2.split.cycle_class_edges}
    assert len(match) == 1 and len(cyc) == 1 and match != cyc


@pytest.mark.slow
def test_gamma2_aut_order_against_networkx(build2):
    g = nx.Graph(build2.split.graph.edges)
    count = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(g, g).isomorphisms_iter())
    assert count == build2.certificate.full_aut_order == 4096


def test_gamma2_checker_entry_point(build2):
    cert = certify_graph(build2.split.graph)
    assert cert.verdict == "PASS" and cert.full_aut_edge_orbits == 2


def test_gamma3_certificate(build3):
    c = build3.certificate
    assert c.verdict == "PASS"
    assert (c.n, c.girth, c.delta_girth, c.cycle_lengths) == (5832, 6, 6, [6])
    assert c.edge_class_counts == [2916, 5832]
    assert c.stabilizer_order == 4
    assert c.n <= c.vertex_bound
