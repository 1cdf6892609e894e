import random

import pytest

import catalign as ca
from catalign.finset import (
    CapExceeded,
    Edge,
    FinDiagram,
    FinFn,
    FinSetObj,
    LazySetObj,
    SetCone,
    brute_force_limit,
    colimit,
    fn_from_callable,
    limit,
    limit_adjoint,
)


def test_limit_single_node():
    d = FinDiagram([FinSetObj(("a", "b"))], [])
    result = limit(d)
    assert result.obj.elements == (("a",), ("b",))


def test_limit_empty_diagram_is_terminal():
    assert limit(FinDiagram([], [])).obj.elements == ((),)


def test_limit_cospan_matches_agreeing_pairs():
    # the Bob-row agreement cospan: four matching pairs, as in the worked data
    ab = FinSetObj(("b1", "b2", "b3"))
    bc = FinSetObj(("b1x", "b2x", "b1y", "b2y"))
    hub = FinSetObj(("b1", "b2", "b3"))
    left = FinFn(ab, hub, {"b1": "b1", "b2": "b2", "b3": "b3"})
    right = FinFn(bc, hub, {"b1x": "b1", "b2x": "b2", "b1y": "b1", "b2y": "b2"})
    d = FinDiagram([ab, hub, bc], [Edge(0, 1, left), Edge(2, 1, right)])
    result = limit(d)
    assert len(result.obj) == 4
    for ab_v, hub_v, bc_v in result.obj:
        assert left(ab_v) == hub_v == right(bc_v)


def test_colimit_disjoint_singletons():
    d = FinDiagram([FinSetObj(("x",)), FinSetObj(("y",))], [])
    assert len(colimit(d).obj) == 2


def test_colimit_identity_edge_glues():
    a = FinSetObj(("x",))
    d = FinDiagram([a, a], [Edge(0, 1, FinFn(a, a, {"x": "x"}))])
    assert len(colimit(d).obj) == 1


def test_colimit_classes_partition():
    rng = random.Random(3)
    for _ in range(50):
        nodes = [
            FinSetObj(tuple(f"n{k}e{i}" for i in range(rng.randint(1, 4))))
            for k in range(rng.randint(1, 3))
        ]
        edges = []
        for _ in range(rng.randint(0, 3)):
            a, b = rng.randrange(len(nodes)), rng.randrange(len(nodes))
            edges.append(
                Edge(a, b, fn_from_callable(
                    nodes[a], nodes[b],
                    lambda x, b=b: rng.choice(nodes[b].elements),
                ))
            )
        d = FinDiagram(nodes, edges)
        result = colimit(d)
        members = [m for cls in result.obj for m in cls]
        assert sorted(members) == sorted(
            (v, x) for v, node in enumerate(nodes) for x in node
        )
        # injections are jointly surjective onto classes
        hit = set()
        for v in range(len(nodes)):
            inj = result.injection(v)
            hit.update(inj(x) for x in nodes[v])
        assert hit == set(result.obj.elements)


def test_limit_adjoint_of_projection_cone_is_bijective():
    d = FinDiagram(
        [FinSetObj(("a", "b")), FinSetObj(("x", "y"))],
        [],
    )
    lim = limit(d)
    cone = SetCone(lim.obj, d, [lim.projection(0), lim.projection(1)])
    assert ca.classify(limit_adjoint(cone)) == "bijective"


def test_limit_adjoint_rejects_non_cone():
    a = FinSetObj(("x", "y"))
    b = FinSetObj(("u", "v"))
    d = FinDiagram([a, b], [Edge(0, 1, FinFn(a, b, {"x": "u", "y": "v"}))])
    bad = SetCone(a, d, [FinFn(a, a, {"x": "x", "y": "y"}),
                         FinFn(a, b, {"x": "v", "y": "u"})])
    with pytest.raises(Exception):
        limit_adjoint(bad)


def test_classify():
    a = FinSetObj((1, 2))
    assert ca.classify(FinFn(a, a, {1: 1, 2: 2})) == "bijective"
    four = FinSetObj((1, 2, 3, 4))
    two = FinSetObj(("x", "y"))
    onto = FinFn(four, two, {1: "x", 2: "y", 3: "x", 4: "y"})
    assert ca.classify(onto) == "surjective_only"
    assert ca.classify(FinFn(a, two, {1: "x", 2: "x"})) == "neither"
    assert ca.classify(FinFn(two, four, {"x": 1, "y": 2})) == "injective_only"


def random_diagram(rng, max_nodes=4, max_elements=6):
    nodes = [
        FinSetObj(tuple(f"n{k}e{i}" for i in range(rng.randint(1, max_elements))))
        for k in range(rng.randint(1, max_nodes))
    ]
    edges = []
    for _ in range(rng.randint(0, 2 * len(nodes))):
        a, b = rng.randrange(len(nodes)), rng.randrange(len(nodes))
        mapping = {x: rng.choice(nodes[b].elements) for x in nodes[a]}
        edges.append(Edge(a, b, FinFn(nodes[a], nodes[b], mapping)))
    return FinDiagram(nodes, edges)


def test_limit_agrees_with_brute_force_oracle():
    rng = random.Random(17)
    for _ in range(100):
        d = random_diagram(rng)
        assert set(limit(d).obj.elements) == set(brute_force_limit(d).elements)


def test_limit_unchanged_by_composite_edges():
    rng = random.Random(23)
    for _ in range(50):
        d = random_diagram(rng)
        base = set(limit(d).obj.elements)
        extra = list(d.edges)
        for e in d.edges:
            for e2 in d.edges:
                if e.dst == e2.src:
                    extra.append(Edge(e.src, e2.dst, e2.fn.compose(e.fn)))
        assert set(limit(FinDiagram(d.nodes, extra)).obj.elements) == base


def test_limit_cap():
    big = FinSetObj(tuple(range(40)))
    d = FinDiagram([big, big, big], [])
    with pytest.raises(CapExceeded):
        limit(d, cap=1000)


def test_lazy_node_determined_by_inbound_edge():
    a = FinSetObj(("x", "y"))
    lazy = LazySetObj(lambda v: v in ("X", "Y"))
    d = FinDiagram([a, lazy], [Edge(0, 1, str.upper)])
    result = limit(d)
    assert result.obj.elements == (("x", "X"), ("y", "Y"))


def test_lazy_node_consistency_across_edges():
    a = FinSetObj(("x", "y"))
    b = FinSetObj(("X", "Z"))
    lazy = LazySetObj(lambda v: True)
    d = FinDiagram(
        [a, b, lazy],
        [Edge(0, 2, str.upper), Edge(1, 2, lambda v: v)],
    )
    result = limit(d)
    # only x/X agree through the lazy hub
    assert result.obj.elements == (("x", "X", "X"),)
