"""Truncation of segments and its pointed-set action on morphisms.

Tr_b keeps the positions whose patch color is at least b.  On quasi-
homologous morphisms it is just an inclusion of index sets; on arbitrary
morphisms it becomes a basepoint-preserving map after adjoining a formal
point to each index set: codomain positions with no preimage go to the
point.  Truncation sets keep the original position labels of their ambient
segment, never renumbered.
"""

from dataclasses import dataclass, field

from .segments import Segment, SegmentError, SegmentMorphism


class _Star:
    """The formal basepoint adjoined to every truncation set."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "★"


STAR = _Star()


@dataclass(frozen=True)
class TruncationSet:
    segment: Segment
    level: str
    indices: tuple[int, ...]

    def __contains__(self, pos):
        return pos in set(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


def truncate(s: Segment, b: str) -> TruncationSet:
    """The positions of s whose color is at least b, in ascending order."""
    if b not in s.preorder:
        raise SegmentError(f"level {b!r} not in the ambient pre-order")
    idx = tuple(
        pos for pos in range(1, s.n1 + 1) if s.preorder.leq(b, s.color_at(pos))
    )
    return TruncationSet(s, b, idx)


@dataclass(frozen=True)
class PointedIndexMap:
    """Basepoint-preserving map from the target truncation to the source one.

    ``mapping[j]`` is either the unique i with j = f1(i) and i truncated in
    the source, or STAR.  Stored over the *destination* indices because the
    construction is contravariant.
    """

    dom_indices: TruncationSet
    cod_indices: TruncationSet
    mapping: tuple[tuple[int, object], ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.mapping))

    def __call__(self, j):
        if j is STAR:
            return STAR
        return self._table[j]

    def __hash__(self):
        return hash((self.dom_indices, self.cod_indices, self.mapping))


def truncate_morphism(m: SegmentMorphism, b: str) -> PointedIndexMap:
    """The pointed map Tr*_b(m) from Tr_b(dst) to Tr_b(src).

    Well-defined because a position whose image is truncated is itself
    truncated (colors only decrease along morphisms).
    """
    src_tr = truncate(m.src, b)
    dst_tr = truncate(m.dst, b)
    src_set = set(src_tr.indices)
    preimage = {m.apply1(i): i for i in range(1, m.src.n1 + 1)}
    mapping = []
    for j in dst_tr.indices:
        i = preimage.get(j)
        mapping.append((j, i if i is not None and i in src_set else STAR))
    return PointedIndexMap(dst_tr, src_tr, tuple(mapping))


def compose_pointed(second: PointedIndexMap, first: PointedIndexMap) -> PointedIndexMap:
    """second after first, as basepoint-preserving maps."""
    if first.cod_indices != second.dom_indices:
        raise SegmentError("pointed maps are not composable")
    mapping = tuple((j, second(first(j))) for j in first.dom_indices.indices)
    return PointedIndexMap(first.dom_indices, second.cod_indices, mapping)


def identity_pointed(tr: TruncationSet) -> PointedIndexMap:
    return PointedIndexMap(tr, tr, tuple((j, j) for j in tr.indices))
