import itertools
import random

import pytest

import catalign as ca
from catalign.environment import iter_words
from catalign.finset import CapExceeded
from catalign.segments import SegmentError

from conftest import all_segments, hom_table

EPS = ca.EPSILON


def inclusion_morphism(boolean):
    # 11-node segment included in a 15-node one, whitening the tail patch
    src = ca.segment_from_patches(boolean, [3, 2, 4, 2], "1011")
    dst = ca.segment_from_patches(boolean, [5, 3, 4, 1, 2], "10110")
    return ca.morphism_from_f1((1, 2, 3, 6, 7, 9, 10, 11, 12, 14, 15), src, dst)


def gap_insertion_morphism(boolean):
    src = ca.segment_from_patches(boolean, [3, 2, 4, 2], "1011")
    dst = ca.segment_from_patches(boolean, [3, 3, 6, 3], "1011")
    return ca.morphism_from_f1((1, 2, 3, 4, 5, 7, 8, 11, 12, 14, 15), src, dst)


def test_word_image_whitening_inclusion(boolean, alphabet):
    m = inclusion_morphism(boolean)
    assert m is not None
    w = ca.word(m.src, "1", alphabet, ("A", "G", EPS, "T", "C", "A", "A", "G", "C"))
    assert w.display() == f"(AG{EPS})(TCAA)(GC)"
    image = ca.word_image(m, w)
    assert image.display() == f"(AG{EPS}{EPS}{EPS})(TCAA)({EPS})"


def test_word_image_gap_insertion(boolean, alphabet):
    m = gap_insertion_morphism(boolean)
    assert m is not None
    w = ca.word(m.src, "1", alphabet, ("G", "A", "C", "A", "T", "T", "C", "C", "T"))
    assert w.display() == "(GAC)(ATTC)(CT)"
    image = ca.word_image(m, w)
    assert image.display() == f"(GAC)(AT{EPS}{EPS}TC)({EPS}CT)"


def test_word_image_identity(boolean, alphabet):
    s = ca.segment_from_patches(boolean, [2, 2], "10")
    w = ca.word(s, "1", alphabet, "AC")
    assert ca.word_image(ca.identity(s), w) == w


def test_unmapped_positions_read_the_basepoint(boolean, alphabet):
    segs = all_segments(boolean, 3)
    homs = hom_table(segs)
    rng = random.Random(5)
    pairs = [i for i in homs.items()]
    for _ in range(200):
        (a, b), ms = rng.choice(pairs)
        m = rng.choice(ms)
        tr = ca.truncate(a, "1")
        letters = tuple(rng.choice(alphabet.symbols) for _ in tr.indices)
        w = ca.Word(a, "1", alphabet, letters)
        image = ca.word_image(m, w)
        pm = ca.truncate_morphism(m, "1")
        for j, letter in zip(image.truncation.indices, image.letters):
            if pm(j) is ca.STAR:
                assert letter == alphabet.basepoint


def test_word_functor_law_on_composable_pairs(boolean, alphabet):
    segs = all_segments(boolean, 3)
    homs = hom_table(segs)
    rng = random.Random(13)
    pairs = [i for i in homs.items()]
    for _ in range(200):
        (a, b), ms = rng.choice(pairs)
        outs = [(c, ms2) for (b2, c), ms2 in homs.items() if b2 == b]
        if not outs:
            continue
        f = rng.choice(ms)
        c, ms2 = rng.choice(outs)
        g = rng.choice(ms2)
        tr = ca.truncate(a, "1")
        w = ca.Word(a, "1", alphabet,
                    tuple(rng.choice(alphabet.symbols) for _ in tr.indices))
        assert ca.word_image(ca.compose(g, f), w) == ca.word_image(g, ca.word_image(f, w))


def test_restriction_law_for_quasi_homologous(boolean, alphabet):
    src = ca.segment_from_patches(boolean, [2, 3], "11")
    dst = ca.segment_from_patches(boolean, [2, 3], "01")
    m = ca.quasi_homologous_morphism(src, dst)
    w = ca.word(src, "1", alphabet, "ACGTC")
    image = ca.word_image(m, w)
    table = w.table()
    assert all(image.table()[j] == table[j] for j in image.truncation.indices)


def test_enumerate_words_counts(boolean, alphabet):
    s = ca.segment_from_patches(boolean, [2, 3], "10")
    assert len(list(ca.enumerate_words(s, "1", alphabet))) == 25
    empty = ca.segment_from_patches(boolean, [2], "0")
    assert len(list(ca.enumerate_words(empty, "1", alphabet))) == 1
    with pytest.raises(CapExceeded):
        list(ca.enumerate_words(ca.trivial_segment(boolean, 10, "1"), "1",
                                alphabet, cap=100))
    lazy = itertools.islice(iter_words(ca.trivial_segment(boolean, 10, "1"),
                                       "1", alphabet), 3)
    assert len(list(lazy)) == 3


def test_environment_membership_of_listed_words(boolean, alphabet):
    # the 12-position truncation of the 18-node example admits these words
    s = ca.segment_from_patches(boolean, [3, 2, 4, 5, 3, 1], "101100")
    for text in ("AG" + EPS + "TCAATAGG" + EPS,
                 "GT" + EPS + EPS + EPS + EPS + "CAGTAC",
                 "TAAGATCAGTTT"):
        w = ca.word(s, "1", alphabet, text)
        assert w.letters == tuple(text)
    with pytest.raises(SegmentError):
        ca.word(s, "1", alphabet, "TOO SHORT")


def test_aligned_tuple_and_projection(setup4, alphabet):
    seg = ca.trivial_segment(setup4.omega, 8, "[1100]")
    level = setup4.level()
    x = ca.aligned_tuple(setup4.spec, seg, level, alphabet,
                         {"a": "ACCGACTG", "b": "A" + EPS + "CATCTG"})
    assert ca.project(x, "a").text() == "ACCGACTG"
    assert ca.project(x, "c").letters == ()
    with pytest.raises(Exception):
        ca.project(x, "z")


def test_aligned_tuple_requires_rows_for_truncated_components(setup4, alphabet):
    seg = ca.trivial_segment(setup4.omega, 8, "[1100]")
    with pytest.raises(SegmentError):
        ca.aligned_tuple(setup4.spec, seg, setup4.level(), alphabet,
                         {"a": "ACCGACTG"})


def test_aligned_image_identity_and_insertion(setup4, alphabet):
    seg8 = ca.trivial_segment(setup4.omega, 8, "[1100]")
    seg9 = ca.trivial_segment(setup4.omega, 9, "[1100]")
    level = setup4.level()
    x = ca.aligned_tuple(setup4.spec, seg8, level, alphabet,
                         {"a": "ACCGACTG", "b": "A" + EPS + "CATCTG"})
    assert ca.aligned_image(ca.identity(seg8), x) == x
    for k, m in enumerate(ca.enumerate_morphisms(seg8, seg9), start=1):
        y = ca.aligned_image(m, x)
        top = ca.project(y, "a").text()
        assert len(top) == 9 and top[k - 1] == EPS
        assert top.replace(EPS, "") == "ACCGACTG".replace(EPS, "")


def test_aligned_image_color_drop(setup4, alphabet):
    src = ca.trivial_segment(setup4.omega, 8, "[1110]")
    dst = ca.trivial_segment(setup4.omega, 8, "[1010]")
    m = ca.quasi_homologous_morphism(src, dst)
    level = setup4.level()
    x = ca.aligned_tuple(setup4.spec, src, level, alphabet,
                         {"a": "ACCGACTG", "b": "ACAT" + EPS + "CTG",
                          "c": "ACCGTC" + EPS + "A"})
    y = ca.aligned_image(m, x)
    assert ca.project(y, "a").text() == "ACCGACTG"
    assert ca.project(y, "b").letters == ()
    assert ca.project(y, "c").text() == "ACCGTC" + EPS + "A"


def test_projection_naturality_sampled(setup4, alphabet):
    seg8 = ca.trivial_segment(setup4.omega, 8, "[1100]")
    seg9 = ca.trivial_segment(setup4.omega, 9, "[1100]")
    level = setup4.level()
    x = ca.aligned_tuple(setup4.spec, seg8, level, alphabet,
                         {"a": "ACCGACTG", "b": "ACA" + EPS + "TCTG"})
    for m in ca.enumerate_morphisms(seg8, seg9):
        for i in setup4.spec.indices:
            f_i = setup4.spec.map_for(i)
            lhs = ca.project(ca.aligned_image(m, x), i)
            rhs = ca.word_image(ca.push_colors_morphism(f_i, m), ca.project(x, i))
            assert lhs == rhs
