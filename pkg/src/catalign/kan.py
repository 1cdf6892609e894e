"""Comma categories and the objectwise right Kan extension of an alignment
functor, with forward and inverse evaluation of its unit.

The value at a query segment tau is the limit, over the category of all
morphisms from tau into base objects, of the functor's images.  The comma
graph decomposes into connected components, so the value is presented as a
product of component limits; full-environment hub nodes are determined by
their inbound edges and single-hub components are dropped with a warning
(their factor is a full function space and never constrains anything).
"""

import itertools
from dataclasses import dataclass, field

from .alignment_functor import BaseCategory, SeqAlignFunctor
from .environment import Word, project, word_image
from .finset import (
    CapExceeded,
    DEFAULT_CAP,
    Edge,
    FinDiagram,
    FinSetObj,
    LazySetObj,
    limit,
)
from .segments import (
    Segment,
    SegmentError,
    SegmentMorphism,
    compose,
    enumerate_morphisms,
    push_colors,
    push_colors_morphism,
)
from .truncation import STAR, truncate, truncate_morphism
from .chromology import SegCone


class KanError(ValueError):
    pass


@dataclass(frozen=True)
class CommaObject:
    base_index: int
    morphism: SegmentMorphism  # tau -> base object


@dataclass(frozen=True)
class CommaCategory:
    tau: Segment
    base: BaseCategory
    objects: tuple[CommaObject, ...]
    arrows: tuple[tuple[int, int, SegmentMorphism], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {(o.base_index, o.morphism): k for k, o in enumerate(self.objects)}
        )

    def __len__(self):
        return len(self.objects)

    def locate(self, base_index: int, morphism: SegmentMorphism) -> int:
        try:
            return self._index[(base_index, morphism)]
        except KeyError:
            raise KanError("no such comma object") from None


def comma(tau: Segment, base: BaseCategory) -> CommaCategory:
    """All morphisms from tau into base objects, with triangle-commuting arrows.

    Objects are ordered by (base object order, f1 lexicographic); both the
    object list and the arrow list are complete finite enumerations.
    """
    if base.objects and tau.preorder != base.objects[0].preorder:
        raise SegmentError("query segment lives over a different pre-order")
    objects = []
    for bi, obj in enumerate(base.objects):
        for m in enumerate_morphisms(tau, obj):
            objects.append(CommaObject(bi, m))
    arrows = []
    for oi, o1 in enumerate(objects):
        for oj, o2 in enumerate(objects):
            if oi == oj:
                continue
            for g in base.homs(o1.base_index, o2.base_index):
                if compose(g, o1.morphism) == o2.morphism:
                    arrows.append((oi, oj, g))
    return CommaCategory(tau, base, tuple(objects), tuple(arrows))


def comma_cone(cc: CommaCategory) -> SegCone:
    """The comma category pictured as a cone of segments under tau."""
    nodes = tuple(cc.base.objects[o.base_index] for o in cc.objects)
    legs = tuple(o.morphism for o in cc.objects)
    edges = tuple((a, b, g) for a, b, g in cc.arrows)
    return SegCone(cc.tau, nodes, edges, legs)


@dataclass
class RanComponent:
    object_indices: tuple[int, ...]
    solutions: tuple[tuple, ...]  # values aligned with object_indices

    @property
    def size(self) -> int:
        return len(self.solutions)

    @property
    def terminal(self) -> bool:
        return len(self.solutions) == 1


@dataclass
class RanEvaluation:
    """The Kan extension value at one segment, as a product of components.

    ``retained`` lists the comma objects appearing in elements, in order;
    elements are tuples of image values aligned with it.  ``dropped`` lists
    the single-hub comma objects whose full-environment factor was elided.
    """

    functor: SeqAlignFunctor
    tau: Segment
    comma: CommaCategory
    retained: tuple[int, ...]
    dropped: tuple[int, ...]
    components: list

    def __post_init__(self):
        self._pos = {oi: k for k, oi in enumerate(self.retained)}

    @property
    def cardinality(self) -> int:
        total = 1
        for comp in self.components:
            total *= comp.size
        return total

    def position(self, comma_index: int) -> int:
        try:
            return self._pos[comma_index]
        except KeyError:
            raise KanError(f"comma object {comma_index} is not retained") from None

    def component_of(self, comma_index: int):
        for comp in self.components:
            if comma_index in comp.object_indices:
                return comp
        raise KanError(f"comma object {comma_index} is not retained")

    def factors(self) -> list[dict]:
        out = []
        for comp in self.components:
            out.append(
                {
                    "objects": [
                        self.functor.base.objects[
                            self.comma.objects[oi].base_index
                        ].display()
                        for oi in comp.object_indices
                    ],
                    "size": comp.size,
                    "terminal": comp.terminal,
                }
            )
        return out

    def factor_summary(self) -> str:
        parts = []
        for comp in self.components:
            parts.append(str(comp.size))
        return " x ".join(parts) if parts else "1"

    def elements(self, cap: int = DEFAULT_CAP):
        """Iterator over full tuples aligned with ``retained``."""
        if self.cardinality > cap:
            raise CapExceeded(
                f"Kan extension value has {self.cardinality} elements, cap is {cap}"
            )
        comps = self.components
        for combo in itertools.product(*(c.solutions for c in comps)):
            values = [None] * len(self.retained)
            for comp, sol in zip(comps, combo):
                for oi, v in zip(comp.object_indices, sol):
                    values[self._pos[oi]] = v
            yield tuple(values)

    def element_from_components(self, assignment: dict) -> tuple:
        """Build (and validate) an element from per-comma-object values."""
        values = [None] * len(self.retained)
        for comp in self.components:
            sol = tuple(assignment[oi] for oi in comp.object_indices)
            if sol not in comp.solutions:
                raise KanError(
                    "assignment is not a solution of its comma component"
                )
            for oi, v in zip(comp.object_indices, sol):
                values[self._pos[oi]] = v
        return tuple(values)

    def value_at(self, element: tuple, comma_index: int):
        return element[self.position(comma_index)]


def ran_eval(functor: SeqAlignFunctor, tau: Segment,
             cap: int = DEFAULT_CAP) -> RanEvaluation:
    """Evaluate the right Kan extension of the functor at tau."""
    cc = comma(tau, functor.base)
    graph = FinDiagram(
        [None] * len(cc.objects),
        [Edge(a, b, None) for a, b, _ in cc.arrows],
    )
    components = graph.components()
    dropped = []
    solved = []
    for comp_nodes in components:
        if len(comp_nodes) == 1 and functor.is_hub(
            cc.objects[comp_nodes[0]].base_index
        ):
            dropped.append(comp_nodes[0])
            continue
        local = {oi: k for k, oi in enumerate(comp_nodes)}
        nodes = []
        for oi in comp_nodes:
            img = functor.image(cc.objects[oi].base_index)
            if functor.is_hub(cc.objects[oi].base_index):
                nodes.append(LazySetObj(img.__contains__, "full environment"))
            else:
                nodes.append(FinSetObj(tuple(img)))
        edges = [
            Edge(local[a], local[b], functor.arrow_function(g))
            for a, b, g in cc.arrows
            if a in local and b in local
        ]
        result = limit(FinDiagram(nodes, edges), cap=cap)
        solved.append(RanComponent(tuple(comp_nodes), tuple(result.obj.elements)))
    retained = tuple(sorted(oi for comp in solved for oi in comp.object_indices))
    return RanEvaluation(functor, tau, cc, retained, tuple(dropped), solved)


@dataclass
class RanMorphism:
    """The image of a segment morphism under the Kan extension: a
    reindexing projection between two evaluations."""

    h: SegmentMorphism
    source: RanEvaluation  # at h.src
    target: RanEvaluation  # at h.dst
    index_map: dict  # retained target comma index -> source comma index (or None)

    def __call__(self, element: tuple) -> tuple:
        values = []
        for oj in self.target.retained:
            oi = self.index_map[oj]
            if oi is None:
                raise KanError(
                    "component determined only by a dropped full-environment factor"
                )
            values.append(self.source.value_at(element, oi))
        return tuple(values)

    def preimage_count(self, element: tuple) -> int:
        """Number of represented source elements mapping to a target element.

        Components only constrained through a dropped full-environment
        factor are always satisfiable and contribute no constraint."""
        required = {}
        for oj in self.target.retained:
            oi = self.index_map[oj]
            if oi is not None:
                required[oi] = self.target.value_at(element, oj)
        count = 1
        for comp in self.source.components:
            touched = [k for k, oi in enumerate(comp.object_indices) if oi in required]
            if not touched:
                count *= comp.size
                continue
            matching = sum(
                1
                for sol in comp.solutions
                if all(sol[k] == required[comp.object_indices[k]] for k in touched)
            )
            count *= matching
        return count

    def classify(self, cap: int = DEFAULT_CAP) -> str:
        """Classification of the represented map (dropped full factors elided)."""
        counts = [self.preimage_count(y) for y in self.target.elements(cap)]
        surjective = all(c >= 1 for c in counts)
        injective = all(c <= 1 for c in counts) and not any(
            self.index_map[oj] is None for oj in self.target.retained
        )
        if injective and surjective:
            return "bijective"
        if surjective:
            return "surjective_only"
        if injective:
            return "injective_only"
        return "neither"


def ran_on_morphism(functor: SeqAlignFunctor, h: SegmentMorphism,
                    cap: int = DEFAULT_CAP) -> RanMorphism:
    """The induced map Ran(h): value at h.src -> value at h.dst.

    Precomposition sends a comma object (v, f) of the target to (v, f . h)
    of the source; the induced map drops and reindexes tuple components.
    """
    source = ran_eval(functor, h.src, cap=cap)
    target = ran_eval(functor, h.dst, cap=cap)
    retained = set(source.retained)
    index_map = {}
    for oj in target.retained:
        o = target.comma.objects[oj]
        oi = source.comma.locate(o.base_index, compose(o.morphism, h))
        index_map[oj] = oi if oi in retained else None
    return RanMorphism(h, source, target, index_map)


def pushed_morphism(functor: SeqAlignFunctor, index: str, m: SegmentMorphism):
    return push_colors_morphism(functor.spec.map_for(index), m)


def unit_forward(functor: SeqAlignFunctor, index: str, tau: Segment, z: Word,
                 ev: RanEvaluation | None = None) -> dict:
    """The unit at z: one pushed word per retained comma object."""
    ev = ev or ran_eval(functor, tau)
    f = functor.spec.map_for(index)
    if z.segment != push_colors(f, tau) or z.level != f(functor.level):
        raise KanError("the word does not live in the projected environment of tau")
    return {
        oi: word_image(pushed_morphism(functor, index, ev.comma.objects[oi].morphism), z)
        for oi in ev.retained
    }


def projection_target(functor: SeqAlignFunctor, index: str, ev: RanEvaluation,
                      element: tuple) -> dict:
    """Componentwise projection of a Kan element at one individual."""
    return {
        oi: project(ev.value_at(element, oi), index) for oi in ev.retained
    }


def _merge_constraint(assign: dict, pointed, word: Word, basepoint: str):
    """Fold one comma component's equation into a partial word assignment.

    Returns the extended assignment or None on conflict."""
    table = word.table()
    out = dict(assign)
    for j in pointed.dom_indices.indices:
        src = pointed(j)
        letter = table[j]
        if src is STAR:
            if letter != basepoint:
                return None
        else:
            if out.get(src, letter) != letter:
                return None
            out[src] = letter
    return out


def unit_solve(functor: SeqAlignFunctor, index: str, tau: Segment, target: dict,
               ev: RanEvaluation | None = None,
               cap: int = DEFAULT_CAP) -> list[Word]:
    """All words whose unit image equals the target tuple.

    Every comma component pins the letters it reaches and forces the
    basepoint at unreached positions; leftover free positions range over
    the whole alphabet.  The empty list means no lift exists.
    """
    ev = ev or ran_eval(functor, tau)
    f = functor.spec.map_for(index)
    level_i = f(functor.level)
    tau_i = push_colors(f, tau)
    alphabet = functor.alphabet
    assign: dict | None = {}
    for oi in ev.retained:
        w = target[oi]
        m_i = pushed_morphism(functor, index, ev.comma.objects[oi].morphism)
        if w.segment != m_i.dst or w.level != level_i:
            raise KanError("target component lives in the wrong environment")
        assign = _merge_constraint(assign, truncate_morphism(m_i, level_i), w,
                                   alphabet.basepoint)
        if assign is None:
            return []
    positions = truncate(tau_i, level_i).indices
    free = [p for p in positions if p not in assign]
    if len(alphabet.symbols) ** len(free) > cap:
        raise CapExceeded("too many free positions to enumerate solutions")
    out = []
    for combo in itertools.product(alphabet.symbols, repeat=len(free)):
        table = dict(assign)
        table.update(zip(free, combo))
        out.append(Word(tau_i, level_i, alphabet, tuple(table[p] for p in positions)))
    return out


def functor_diagram_limit(functor: SeqAlignFunctor, segments, edge_pairs,
                          cap: int = DEFAULT_CAP):
    """Limit of the functor's images over an explicit diagram of base objects.

    ``edge_pairs`` are (src, dst) positions into ``segments``; each edge is
    the unique quasi-homologous morphism.  Hub images participate lazily.
    Returns (solutions, node order) with solutions aligned to ``segments``.
    """
    from .segments import quasi_homologous_morphism

    nodes = []
    for seg in segments:
        idx = functor.base.index_of(seg)
        img = functor.image(idx)
        if functor.is_hub(idx):
            nodes.append(LazySetObj(img.__contains__, "full environment"))
        else:
            nodes.append(FinSetObj(tuple(img)))
    edges = []
    for a, b in edge_pairs:
        g = quasi_homologous_morphism(segments[a], segments[b])
        if g is None:
            raise KanError("no quasi-homologous morphism along a declared edge")
        edges.append(Edge(a, b, functor.arrow_function(g)))
    result = limit(FinDiagram(nodes, edges), cap=cap)
    return tuple(result.obj.elements)
