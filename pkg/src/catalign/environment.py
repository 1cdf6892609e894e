"""Pointed alphabets, words over truncations, and aligned word tuples.

A word assigns an alphabet symbol to every truncated position of a segment;
morphisms act by reindexing, writing the basepoint at positions with no
preimage (gap insertion).  An alignment specification is a family of
order-preserving maps out of a common color set, one per named individual;
the aligned environment pairs one word per individual over the recolored
segment, at the recolored level.
"""

import itertools
from dataclasses import dataclass, field

from .preorder import MonotoneMap, Preorder
from .segments import (
    Segment,
    SegmentError,
    SegmentMorphism,
    push_colors,
    push_colors_morphism,
)
from .truncation import STAR, truncate, truncate_morphism
from .finset import CapExceeded

DEFAULT_WORD_CAP = 1_000_000


@dataclass(frozen=True)
class PointedAlphabet:
    symbols: tuple[str, ...]
    basepoint: str

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbols")
        if self.basepoint not in self.symbols:
            raise ValueError("basepoint must be one of the symbols")

    def __contains__(self, s):
        return s in self.symbols


def dna_alphabet(epsilon: str = "ε") -> PointedAlphabet:
    return PointedAlphabet(("A", "C", "G", "T", epsilon), epsilon)


@dataclass(frozen=True)
class Word:
    """Letters on the truncated positions of a segment, stored sparsely.

    ``letters[k]`` is the symbol at the k-th truncated position (ascending).
    """

    segment: Segment
    level: str
    alphabet: PointedAlphabet
    letters: tuple[str, ...]
    _hash: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        tr = truncate(self.segment, self.level)
        if len(self.letters) != len(tr):
            raise SegmentError(
                f"word has {len(self.letters)} letters but the truncation has {len(tr)}"
            )
        for s in self.letters:
            if s not in self.alphabet:
                raise SegmentError(f"letter {s!r} not in the alphabet")
        object.__setattr__(
            self,
            "_hash",
            hash((self.segment, self.level, self.alphabet, self.letters)),
        )

    @property
    def truncation(self):
        return truncate(self.segment, self.level)

    def at(self, pos: int) -> str:
        tr = self.truncation.indices
        return self.letters[tr.index(pos)]

    def table(self) -> dict[int, str]:
        return dict(zip(self.truncation.indices, self.letters))

    def display(self) -> str:
        """Patch-bracketed rendering; patches with no truncated position are omitted."""
        table = self.table()
        out = []
        for fiber in self.segment.patches():
            chunk = "".join(table[p] for p in fiber if p in table)
            if chunk:
                out.append("(" + chunk + ")")
        return "".join(out)

    def text(self) -> str:
        return "".join(self.letters)

    def __hash__(self):
        return self._hash


def word(segment: Segment, level: str, alphabet: PointedAlphabet, text) -> Word:
    """Word from a string (or iterable) covering exactly the truncated positions."""
    return Word(segment, level, alphabet, tuple(text))


def word_image(m: SegmentMorphism, w: Word) -> Word:
    """Push a word along a morphism: copy mapped letters, basepoint elsewhere."""
    if w.segment != m.src:
        raise SegmentError("word does not live on the morphism's source")
    pointed = truncate_morphism(m, w.level)
    table = w.table()
    letters = []
    for j in pointed.dom_indices.indices:
        i = pointed(j)
        letters.append(w.alphabet.basepoint if i is STAR else table[i])
    return Word(m.dst, w.level, w.alphabet, tuple(letters))


def enumerate_words(segment: Segment, level: str, alphabet: PointedAlphabet,
                    cap: int = DEFAULT_WORD_CAP):
    """Lexicographic iterator over all words; full materialization is capped."""
    size = len(truncate(segment, level))
    total = len(alphabet.symbols) ** size
    if total > cap:
        raise CapExceeded(
            f"{total} words exceed the cap of {cap}; iterate lazily instead"
        )
    for combo in itertools.product(alphabet.symbols, repeat=size):
        yield Word(segment, level, alphabet, combo)


def iter_words(segment: Segment, level: str, alphabet: PointedAlphabet):
    """Uncapped lazy iterator (same order as enumerate_words)."""
    size = len(truncate(segment, level))
    for combo in itertools.product(alphabet.symbols, repeat=size):
        yield Word(segment, level, alphabet, combo)


@dataclass(frozen=True)
class AlignmentSpec:
    """A named family of order-preserving maps out of a common color set."""

    indices: tuple[str, ...]
    maps: tuple[MonotoneMap, ...]
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.indices) != len(self.maps):
            raise ValueError("one map per index is required")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("duplicate indices")
        doms = {m.dom for m in self.maps}
        if len(doms) > 1:
            raise ValueError("all maps must share the same domain")
        object.__setattr__(self, "_pos", {i: k for k, i in enumerate(self.indices)})

    @property
    def domain(self) -> Preorder:
        return self.maps[0].dom

    def position(self, index: str) -> int:
        try:
            return self._pos[index]
        except KeyError:
            raise ValueError(f"unknown index {index!r}") from None

    def map_for(self, index: str) -> MonotoneMap:
        return self.maps[self.position(index)]

    def level_for(self, index: str, level: str) -> str:
        return self.map_for(index)(level)

    def __hash__(self):
        return hash((self.indices, self.maps))


@dataclass(frozen=True)
class AlignedTuple:
    """One word per individual, over the recolored segment at the recolored level."""

    spec: AlignmentSpec
    segment: Segment
    level: str
    words: tuple[Word, ...]
    _hash: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.words) != len(self.spec.indices):
            raise SegmentError("one word per index is required")
        for i, w in zip(self.spec.indices, self.words):
            f = self.spec.map_for(i)
            if w.segment != push_colors(f, self.segment):
                raise SegmentError(f"component {i!r} lives on the wrong segment")
            if w.level != f(self.level):
                raise SegmentError(f"component {i!r} has the wrong level")
        object.__setattr__(
            self, "_hash", hash((self.spec, self.segment, self.level, self.words))
        )

    def display(self) -> str:
        return "; ".join(
            f"{i}:{w.display() or '()'}" for i, w in zip(self.spec.indices, self.words)
        )

    def __hash__(self):
        return self._hash


def project(x: AlignedTuple, index: str) -> Word:
    """The component at one index (the natural projection of the product)."""
    return x.words[x.spec.position(index)]


def aligned_image(m: SegmentMorphism, x: AlignedTuple) -> AlignedTuple:
    """Push every component along the recolored morphism."""
    if x.segment != m.src:
        raise SegmentError("tuple does not live on the morphism's source")
    words = tuple(
        word_image(push_colors_morphism(x.spec.map_for(i), m), w)
        for i, w in zip(x.spec.indices, x.words)
    )
    return AlignedTuple(x.spec, m.dst, x.level, words)


def aligned_tuple(spec: AlignmentSpec, segment: Segment, level: str,
                  alphabet: PointedAlphabet, rows: dict[str, str]) -> AlignedTuple:
    """Build a tuple from display rows; omitted components must be untruncated."""
    words = []
    for i in spec.indices:
        f = spec.map_for(i)
        seg_i = push_colors(f, segment)
        level_i = f(level)
        size = len(truncate(seg_i, level_i))
        if i in rows:
            row = tuple(rows[i])
            if len(row) != size:
                raise SegmentError(
                    f"row for {i!r} has {len(row)} letters, truncation has {size}"
                )
            words.append(Word(seg_i, level_i, alphabet, row))
        else:
            if size != 0:
                raise SegmentError(
                    f"component {i!r} is truncated to {size} positions but has no row"
                )
            words.append(Word(seg_i, level_i, alphabet, ()))
    return AlignedTuple(spec, segment, level, tuple(words))
