import itertools
import random

import catalign as ca
from catalign.truncation import STAR, compose_pointed, identity_pointed

from conftest import all_segments, hom_table


def example_segment_18(boolean):
    # (xxx)(oo)(xxxx)(ooooo)(xxx)(o)
    return ca.segment_from_patches(boolean, [3, 2, 4, 5, 3, 1], "101010")


def test_truncation_boolean_example(boolean):
    s = example_segment_18(boolean)
    assert ca.truncate(s, "1").indices == (1, 2, 3, 6, 7, 8, 9, 15, 16, 17)
    assert ca.truncate(s, "0").indices == tuple(range(1, 19))


def test_truncation_chain_example(chain3):
    s = ca.segment_from_patches(chain3, [3, 2, 4, 5, 3, 1], "102010")
    assert ca.truncate(s, "2").indices == (6, 7, 8, 9)
    assert ca.truncate(s, "1").indices == (1, 2, 3, 6, 7, 8, 9, 15, 16, 17)
    assert ca.truncate(s, "0").indices == tuple(range(1, 19))


def flexibility_morphism(boolean):
    # 18-node segment inserted into a 22-node one, per the worked example
    src = ca.segment_from_patches(boolean, [3, 2, 4, 5, 3, 1], "101100")
    dst = ca.segment_from_patches(boolean, [4, 1, 4, 4, 5, 3, 1], "1101100")
    f1 = (1, 2, 3, 6, 7, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22)
    m = ca.morphism_from_f1(f1, src, dst)
    assert m is not None
    return m


def test_pointed_map_sends_inserted_indices_to_star(boolean):
    m = flexibility_morphism(boolean)
    pm = ca.truncate_morphism(m, "1")
    assert pm(4) is STAR and pm(5) is STAR
    assert pm(1) == 1 and pm(10) == 6 and pm(14) == 10


def test_identity_morphism_gives_identity_pointed_map(boolean):
    s = example_segment_18(boolean)
    pm = ca.truncate_morphism(ca.identity(s), "1")
    assert pm == identity_pointed(ca.truncate(s, "1"))


def test_quasi_homologous_morphisms_restrict(boolean):
    # f1 = id: the pointed map is the partial identity onto the smaller set
    src = ca.segment_from_patches(boolean, [2, 3], "11")
    dst = ca.segment_from_patches(boolean, [2, 3], "10")
    m = ca.quasi_homologous_morphism(src, dst)
    pm = ca.truncate_morphism(m, "1")
    dst_tr = ca.truncate(dst, "1")
    src_tr = ca.truncate(src, "1")
    assert set(dst_tr.indices) <= set(src_tr.indices)
    for j in dst_tr.indices:
        assert pm(j) == j


def test_truncation_monotone_in_level(chain3):
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 10)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
        topology, patch, prev = [], 1, 0
        for bound in cuts + [n]:
            topology.extend([patch] * (bound - prev))
            patch += 1
            prev = bound
        colors = tuple(rng.choice(chain3.elements) for _ in range(max(topology)))
        s = ca.Segment(chain3, tuple(topology), colors)
        for b, b2 in itertools.permutations(chain3.elements, 2):
            if chain3.leq(b, b2):
                assert set(ca.truncate(s, b2).indices) <= set(
                    ca.truncate(s, b).indices
                )


def test_contravariant_functor_law_exhaustive_small(boolean):
    segs = all_segments(boolean, 3)
    homs = hom_table(segs)
    for (a, b), ms in homs.items():
        outs = [(c, ms2) for (b2, c), ms2 in homs.items() if b2 == b]
        for f in ms:
            tf = ca.truncate_morphism(f, "1")
            for c, ms2 in outs:
                for g in ms2:
                    tg = ca.truncate_morphism(g, "1")
                    assert ca.truncate_morphism(ca.compose(g, f), "1") == \
                        compose_pointed(tf, tg)
