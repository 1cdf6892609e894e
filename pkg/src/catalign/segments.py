"""Segments over a pre-ordered set and their morphisms.

A segment is a monotone surjection t:[n1] -> [n0] (the topology, grouping
positions into patches) plus a color per patch.  Positions and patches are
1-based, matching the convention [n] = {1,...,n} used throughout.

A morphism (f1, f0) pairs an injective monotone reindexing of positions
with a monotone map of patches such that the square with the topologies
commutes and colors do not increase along f0.  Because topologies are
surjective, f0 is determined by f1, so morphisms are built from f1 alone.
"""

import itertools
from dataclasses import dataclass, field

from .preorder import MonotoneMap, Preorder


class SegmentError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    preorder: Preorder
    topology: tuple[int, ...]
    colors: tuple[str, ...]
    _hash: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n0 = len(self.colors)
        prev = 1
        for pos, patch in enumerate(self.topology, start=1):
            if patch not in (prev, prev + 1):
                raise SegmentError(
                    f"topology not a monotone surjection at position {pos}"
                )
            prev = patch
        if self.topology:
            if prev != n0:
                raise SegmentError("topology does not cover all patches")
            if self.topology[0] != 1:
                raise SegmentError("topology must start at patch 1")
        elif n0 != 0:
            raise SegmentError("empty domain allows no patches")
        for c in self.colors:
            if c not in self.preorder:
                raise SegmentError(f"color {c!r} not in the ambient pre-order")
        object.__setattr__(self, "_hash", hash((self.preorder, self.topology, self.colors)))

    @property
    def n1(self) -> int:
        return len(self.topology)

    @property
    def n0(self) -> int:
        return len(self.colors)

    def patch_of(self, pos: int) -> int:
        return self.topology[pos - 1]

    def color_at(self, pos: int) -> str:
        return self.colors[self.topology[pos - 1] - 1]

    def patches(self) -> list[tuple[int, ...]]:
        """Fibers of the topology, as tuples of positions, in patch order."""
        fibers = [[] for _ in range(self.n0)]
        for pos, patch in enumerate(self.topology, start=1):
            fibers[patch - 1].append(pos)
        return [tuple(f) for f in fibers]

    def display(self) -> str:
        """Bracket notation, e.g. "(••)(◦◦◦)(••)" over the Boolean pre-order."""
        boolean = self.preorder.elements == ("0", "1")
        out = []
        for patch, fiber in enumerate(self.patches(), start=1):
            c = self.colors[patch - 1]
            if boolean:
                mark = "•" if c == "1" else "◦"
            else:
                mark = c
            out.append("(" + mark * len(fiber) + ")")
        return "".join(out)

    def __hash__(self):
        return self._hash


def trivial_segment(preorder: Preorder, n: int, color: str) -> Segment:
    """The segment (!_[n], color): one patch holding all n positions.

    With n = 0 this is the initial segment of type [0] -o [0].
    """
    if n < 0:
        raise SegmentError("domain size must be non-negative")
    if n == 0:
        return Segment(preorder, (), ())
    if color not in preorder:
        raise SegmentError(f"color {color!r} not in the ambient pre-order")
    return Segment(preorder, (1,) * n, (color,))


def segment_from_patches(preorder: Preorder, patch_sizes, colors) -> Segment:
    """Segment with the given patch sizes and one color per patch."""
    topology = []
    for patch, size in enumerate(patch_sizes, start=1):
        if size < 1:
            raise SegmentError("patch sizes must be positive")
        topology.extend([patch] * size)
    return Segment(preorder, tuple(topology), tuple(colors))


@dataclass(frozen=True)
class SegmentMorphism:
    src: Segment
    dst: Segment
    f1: tuple[int, ...]
    f0: tuple[int, ...]
    _hash: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        src, dst = self.src, self.dst
        if src.preorder != dst.preorder:
            raise SegmentError("segments live over different pre-orders")
        if len(self.f1) != src.n1 or len(self.f0) != src.n0:
            raise SegmentError("component maps have the wrong arity")
        prev = 0
        for i, j in enumerate(self.f1, start=1):
            if not (prev < j <= dst.n1):
                raise SegmentError(f"f1 not an order-preserving injection at {i}")
            prev = j
        prev = 1
        for p, q in enumerate(self.f0, start=1):
            if not (1 <= q <= dst.n0) or q < prev:
                raise SegmentError(f"f0 not monotone at patch {p}")
            prev = q
        for i in range(1, src.n1 + 1):
            if self.f0[src.patch_of(i) - 1] != dst.patch_of(self.f1[i - 1]):
                raise SegmentError(f"square does not commute at position {i}")
        omega = src.preorder
        for p in range(1, src.n0 + 1):
            if not omega.leq(dst.colors[self.f0[p - 1] - 1], src.colors[p - 1]):
                raise SegmentError(f"colors do not decrease at patch {p}")
        object.__setattr__(
            self, "_hash", hash((self.src, self.dst, self.f1, self.f0))
        )

    def apply1(self, pos: int) -> int:
        return self.f1[pos - 1]

    def __hash__(self):
        return self._hash


def identity(s: Segment) -> SegmentMorphism:
    return SegmentMorphism(s, s, tuple(range(1, s.n1 + 1)), tuple(range(1, s.n0 + 1)))


def compose(g: SegmentMorphism, f: SegmentMorphism) -> SegmentMorphism:
    """g after f; endpoints must match."""
    if f.dst != g.src:
        raise SegmentError("morphisms are not composable")
    f1 = tuple(g.f1[j - 1] for j in f.f1)
    f0 = tuple(g.f0[q - 1] for q in f.f0)
    return SegmentMorphism(f.src, g.dst, f1, f0)


def induce_f0(f1, src: Segment, dst: Segment):
    """The unique f0 completing the square for f1, or None.

    Surjectivity of the source topology makes f0 unique when it exists: each
    patch takes the common image patch of its fiber.  Returns None when a
    fiber straddles two target patches or the color condition fails.
    """
    f0 = [0] * src.n0
    for pos in range(1, src.n1 + 1):
        patch = src.patch_of(pos)
        target = dst.patch_of(f1[pos - 1])
        if f0[patch - 1] == 0:
            f0[patch - 1] = target
        elif f0[patch - 1] != target:
            return None
    omega = src.preorder
    for p in range(1, src.n0 + 1):
        if not omega.leq(dst.colors[f0[p - 1] - 1], src.colors[p - 1]):
            return None
    return tuple(f0)


def morphism_from_f1(f1, src: Segment, dst: Segment):
    """Morphism with the given position map, or None when no f0 exists."""
    f1 = tuple(f1)
    if len(f1) != src.n1:
        raise SegmentError("f1 has the wrong arity")
    f0 = induce_f0(f1, src, dst)
    if f0 is None:
        return None
    return SegmentMorphism(src, dst, f1, f0)


def enumerate_morphisms(src: Segment, dst: Segment) -> list[SegmentMorphism]:
    """All morphisms src -> dst, in lexicographic f1 order.

    Iterates injective monotone f1 as combinations of target positions; each
    candidate either induces its unique f0 or is discarded.  The order is the
    canonical one used for limit tuples downstream.
    """
    if src.preorder != dst.preorder:
        raise SegmentError("segments live over different pre-orders")
    if src.n1 > dst.n1:
        return []
    out = []
    for combo in itertools.combinations(range(1, dst.n1 + 1), src.n1):
        m = morphism_from_f1(combo, src, dst)
        if m is not None:
            out.append(m)
    return out


def quasi_homologous_morphism(src: Segment, dst: Segment):
    """The unique morphism with f1 = id when it exists, else None."""
    if src.preorder != dst.preorder:
        raise SegmentError("segments live over different pre-orders")
    if src.n1 != dst.n1:
        raise SegmentError("segments do not share their domain")
    return morphism_from_f1(tuple(range(1, src.n1 + 1)), src, dst)


def is_homologous(a: Segment, b: Segment) -> bool:
    return a.topology == b.topology


def is_quasi_homologous(a: Segment, b: Segment) -> bool:
    return a.n1 == b.n1


def push_colors(f: MonotoneMap, s: Segment) -> Segment:
    """Recolor a segment through an order-preserving map; topology unchanged."""
    if s.preorder != f.dom:
        raise SegmentError("segment colors do not live in the map's domain")
    return Segment(f.cod, s.topology, tuple(f(c) for c in s.colors))


def push_colors_morphism(f: MonotoneMap, m: SegmentMorphism) -> SegmentMorphism:
    """Recolor both endpoints; the pair (f1, f0) is unchanged and stays valid."""
    return SegmentMorphism(push_colors(f, m.src), push_colors(f, m.dst), m.f1, m.f0)
