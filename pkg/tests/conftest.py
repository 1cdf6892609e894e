import itertools

import pytest

import catalign as ca

SEQUENCES = {
    "a": "ACCGACTG",  # Anne
    "b": "ACATCTG",   # Bob
    "c": "ACCGTCA",   # Craig
    "d": "ACTACTG",   # Doug
}

HUBS = ((8, "a"), (8, "b"), (8, "c"), (8, "d"), (7, "d"))


@pytest.fixture(scope="session")
def boolean():
    return ca.boolean_preorder()


@pytest.fixture(scope="session")
def chain3():
    return ca.chain_preorder(3)


@pytest.fixture(scope="session")
def alphabet():
    return ca.dna_alphabet()


@pytest.fixture(scope="session")
def setup4():
    return ca.standard_setup(("a", "b", "c", "d"))


@pytest.fixture(scope="session")
def pairwise():
    return ca.align_all_pairs(SEQUENCES)


@pytest.fixture(scope="session")
def functor(setup4, alphabet, pairwise):
    return ca.build_from_pairwise(
        setup4, alphabet, pairwise, ca.BuildPolicy(hubs=HUBS)
    )


@pytest.fixture(scope="session")
def seg(setup4):
    def make(colors, n=8):
        return ca.trivial_segment(setup4.omega, n, colors)

    return make


def all_segments(preorder, max_n):
    """Every segment over the pre-order with domain size up to max_n."""
    out = [ca.Segment(preorder, (), ())]
    for n in range(1, max_n + 1):
        cut_sets = itertools.chain.from_iterable(
            itertools.combinations(range(1, n), k) for k in range(n)
        )
        for cuts in cut_sets:
            topology, patch, prev = [], 1, 0
            for bound in list(cuts) + [n]:
                topology.extend([patch] * (bound - prev))
                patch += 1
                prev = bound
            for colors in itertools.product(preorder.elements, repeat=max(topology)):
                out.append(ca.Segment(preorder, tuple(topology), colors))
    return out


def hom_table(segments):
    homs = {}
    for a in segments:
        for b in segments:
            if a.n1 <= b.n1:
                ms = ca.enumerate_morphisms(a, b)
                if ms:
                    homs[(a, b)] = ms
    return homs
