"""Cones of segments, their truncation colimit arrows, and chromology checks.

A cone here is an apex segment with legs into every node of a finite
diagram of segments.  Applying truncation at a level b turns the cone
inside out: each node contributes its truncated index set, edges become
inclusions, and the glued classes map back into the apex truncation.  The
cone is exactly b-distributive when that map is a bijection and b-injective
when it is injective.  A chromology is a family of such cones, indexed by
domain size, within the quasi-homologous subcategory.
"""

from dataclasses import dataclass, field

from .finset import (
    CapExceeded,
    DEFAULT_CAP,
    Edge,
    FinDiagram,
    FinFn,
    FinSetObj,
    SetCone,
    classify,
    colimit,
    limit_adjoint,
)
from .segments import Segment, SegmentError, SegmentMorphism, compose
from .truncation import truncate


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class SegCone:
    apex: Segment
    nodes: tuple[Segment, ...]
    edges: tuple[tuple[int, int, SegmentMorphism], ...]
    legs: tuple[SegmentMorphism, ...]

    def __post_init__(self):
        if len(self.legs) != len(self.nodes):
            raise ConeError("one leg per node is required")
        for k, leg in enumerate(self.legs):
            if leg.src != self.apex or leg.dst != self.nodes[k]:
                raise ConeError(f"leg {k} does not go from the apex to node {k}")
        for a, b, g in self.edges:
            if not (0 <= a < len(self.nodes) and 0 <= b < len(self.nodes)):
                raise ConeError("edge endpoints out of range")
            if g.src != self.nodes[a] or g.dst != self.nodes[b]:
                raise ConeError("edge morphism endpoints do not match its nodes")
            if compose(g, self.legs[a]) != self.legs[b]:
                raise ConeError(f"cone condition fails along edge {a} -> {b}")

    def is_quasi_homologous(self) -> bool:
        """True when every leg and edge keeps positions fixed (f1 = identity)."""
        n1 = self.apex.n1
        ident = tuple(range(1, n1 + 1))
        if any(node.n1 != n1 for node in self.nodes):
            return False
        if any(leg.f1 != ident for leg in self.legs):
            return False
        return all(g.f1 == ident for _, _, g in self.edges)


def wide_span(apex: Segment, legs) -> SegCone:
    """Cone over a finite discrete diagram: just a family of legs."""
    legs = tuple(legs)
    return SegCone(apex, tuple(leg.dst for leg in legs), (), legs)


def truncation_diagram(cone: SegCone, b: str) -> FinDiagram:
    """Truncate every node; each edge reverses into an inclusion of index sets."""
    nodes = [FinSetObj(truncate(node, b).indices) for node in cone.nodes]
    edges = []
    for a, c, g in cone.edges:
        # a morphism node_a -> node_c shrinks truncations: Tr(node_c) <= Tr(node_a)
        edges.append(Edge(c, a, FinFn(nodes[c], nodes[a], {j: j for j in nodes[c]})))
    return FinDiagram(nodes, edges)


def canonical_arrow(cone: SegCone, b: str):
    """The glued-classes-to-apex map whose behavior classifies the cone.

    Only defined for quasi-homologous cones, where every truncation embeds
    in the apex index set with its original labels.
    """
    if not cone.is_quasi_homologous():
        raise ConeError("canonical arrow needs a quasi-homologous cone")
    diagram = truncation_diagram(cone, b)
    colim = colimit(diagram)
    apex_tr = FinSetObj(truncate(cone.apex, b).indices)
    mapping = {}
    for cls in colim.obj:
        positions = {j for _, j in cls}
        if len(positions) != 1:
            raise ConeError("colimit class mixes distinct apex positions")
        mapping[cls] = positions.pop()
    return FinFn(colim.obj, apex_tr, mapping), colim


def is_exactly_distributive(cone: SegCone, b: str) -> bool:
    arrow, _ = canonical_arrow(cone, b)
    return classify(arrow) == "bijective"


def is_injective(cone: SegCone, b: str) -> bool:
    arrow, _ = canonical_arrow(cone, b)
    return classify(arrow) in ("bijective", "injective_only")


@dataclass(frozen=True)
class Chromology:
    preorder: object
    cones_by_domain: tuple[tuple[int, tuple[SegCone, ...]], ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table = {}
        for n, cones in self.cones_by_domain:
            for cone in cones:
                if cone.apex.n1 != n:
                    raise ConeError(f"cone filed under {n} has apex domain {cone.apex.n1}")
                if not cone.is_quasi_homologous():
                    raise ConeError("chromology cones must be quasi-homologous")
            table[n] = tuple(cones)
        object.__setattr__(self, "_table", table)

    def cones(self, n: int) -> tuple[SegCone, ...]:
        return self._table.get(n, ())

    def all_cones(self):
        for n in sorted(self._table):
            yield from self._table[n]


def chromology(preorder, cones) -> Chromology:
    by_n: dict[int, list] = {}
    for cone in cones:
        by_n.setdefault(cone.apex.n1, []).append(cone)
    return Chromology(preorder, tuple((n, tuple(by_n[n])) for n in sorted(by_n)))


@dataclass
class FunctorTable:
    """A finite functor presented by explicit image sets and arrow functions.

    ``orientation`` is "covariant" (images of a cone form a cone again) or
    "contravariant" (they form a cocone and the colimit adjoint is tested).
    """

    images: dict  # Segment -> FinSetObj
    arrows: dict  # SegmentMorphism -> FinFn
    orientation: str = "covariant"

    def image(self, segment: Segment) -> FinSetObj:
        try:
            return self.images[segment]
        except KeyError:
            raise ConeError(f"no image supplied for {segment.display()}") from None

    def arrow(self, m: SegmentMorphism) -> FinFn:
        try:
            return self.arrows[m]
        except KeyError:
            raise ConeError("no function supplied for a cone morphism") from None


def environment_table(cones, b: str, alphabet, cap: int = DEFAULT_CAP) -> FunctorTable:
    """Materialize the word functor on every segment and morphism of the cones."""
    from .environment import iter_words, word_image

    segments: set[Segment] = set()
    morphisms: set[SegmentMorphism] = set()
    for cone in cones:
        segments.add(cone.apex)
        segments.update(cone.nodes)
        morphisms.update(cone.legs)
        morphisms.update(g for _, _, g in cone.edges)
    images = {}
    budget = cap
    for s in sorted(segments, key=lambda s: (s.n1, s.topology, s.colors)):
        size = len(alphabet.symbols) ** len(truncate(s, b))
        if size > budget:
            raise CapExceeded("environment images exceed the cap")
        images[s] = FinSetObj(tuple(iter_words(s, b, alphabet)))
    arrows = {
        m: FinFn(
            images[m.src],
            images[m.dst],
            {w: word_image(m, w) for w in images[m.src]},
        )
        for m in morphisms
    }
    return FunctorTable(images, arrows, "covariant")


@dataclass
class ConeCheck:
    cone: SegCone
    classification: str
    passed: bool
    method: str  # "direct" or "structural"


@dataclass
class PedigradReport:
    mode: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for k, c in enumerate(self.checks):
            status = "pass" if c.passed else "FAIL"
            out.append(
                f"cone {k}: {status} ({c.classification}, {c.method}) apex {c.cone.apex.display()}"
            )
        return out


def _wanted(mode: str) -> tuple[str, ...]:
    if mode == "bij":
        return ("bijective",)
    if mode == "surj":
        return ("bijective", "surjective_only")
    raise ConeError(f"unknown pedigrad mode {mode!r}")


def verify_pedigrad(table: FunctorTable, chrom: Chromology, mode: str,
                    cap: int = DEFAULT_CAP) -> PedigradReport:
    """Check that every chromology cone lands in the requested class of cones.

    Covariant functors are checked through the limit adjoint of the image
    cone; when the image sets blow past the cap, the classification falls
    back to the structural one given by the truncation colimit arrow (the
    content of the two pedigrad theorems) and is marked "structural".
    """
    wanted = _wanted(mode)
    checks = []
    for cone in chrom.all_cones():
        try:
            if table.orientation == "covariant":
                diagram = FinDiagram(
                    [table.image(node) for node in cone.nodes],
                    [
                        Edge(a, c, table.arrow(g))
                        for a, c, g in cone.edges
                    ],
                )
                set_cone = SetCone(
                    table.image(cone.apex),
                    diagram,
                    [table.arrow(leg) for leg in cone.legs],
                )
                cls = classify(limit_adjoint(set_cone, cap=cap))
            else:
                # contravariant images form a cocone; test its colimit adjoint
                diagram = FinDiagram(
                    [table.image(node) for node in cone.nodes],
                    [Edge(c, a, table.arrow(g)) for a, c, g in cone.edges],
                )
                colim = colimit(diagram)
                apex = table.image(cone.apex)
                legs = [table.arrow(leg) for leg in cone.legs]
                mapping = {}
                ok = True
                for cls_members in colim.obj:
                    images = {legs[v](x) for v, x in cls_members}
                    if len(images) != 1:
                        ok = False
                        break
                    mapping[cls_members] = images.pop()
                if not ok:
                    checks.append(ConeCheck(cone, "ill-defined", False, "direct"))
                    continue
                cls = classify(FinFn(colim.obj, apex, mapping))
            checks.append(ConeCheck(cone, cls, cls in wanted, "direct"))
        except CapExceeded:
            level = _common_level(table)
            arrow, _ = canonical_arrow(cone, level)
            cls = classify(arrow)
            checks.append(ConeCheck(cone, cls, cls in wanted, "structural"))
    return PedigradReport(mode, checks)


def _common_level(table: FunctorTable) -> str:
    levels = {w.level for obj in table.images.values() for w in obj}
    if len(levels) != 1:
        raise ConeError("cannot infer a single truncation level from the table")
    return levels.pop()
