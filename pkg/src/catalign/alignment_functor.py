"""The base category of segments and the alignment-table functor over it.

The base category gathers chosen segments; within one domain size the
morphisms are exactly the unique quasi-homologous ones, and nothing crosses
domain sizes unless declared as an extra arrow.  The functor assigns every
pair-colored segment its finite set of padded pairwise alignments (as
aligned word tuples) and every single-individual "hub" segment the full
aligned environment, kept lazy behind a membership predicate.
"""

import itertools
from dataclasses import dataclass, field

from .dp_align import EPSILON
from .environment import (
    AlignedTuple,
    AlignmentSpec,
    PointedAlphabet,
    aligned_image,
    aligned_tuple,
    iter_words,
    Word,
)
from .finset import CapExceeded
from .preorder import (
    Preorder,
    boolean_preorder,
    monotone_map,
    product,
    tuple_label,
)
from .segments import (
    Segment,
    SegmentError,
    SegmentMorphism,
    compose,
    enumerate_morphisms,
    push_colors,
    quasi_homologous_morphism,
    trivial_segment,
)
from .truncation import truncate


class FunctorError(ValueError):
    pass


@dataclass(frozen=True)
class StandardSetup:
    """Product color set with one projection per named individual."""

    names: tuple[str, ...]
    factor: Preorder
    omega: Preorder
    spec: AlignmentSpec

    def color(self, active, one: str = "1", zero: str = "0") -> str:
        active = set(active)
        unknown = active - set(self.names)
        if unknown:
            raise FunctorError(f"unknown individuals {sorted(unknown)}")
        return tuple_label(tuple(one if n in active else zero for n in self.names))

    def level(self, value: str = "1") -> str:
        return tuple_label((value,) * len(self.names))


def standard_setup(names, factor: Preorder | None = None) -> StandardSetup:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise FunctorError("duplicate individual names")
    factor = factor or boolean_preorder()
    omega, projections = product([factor] * len(names))
    spec = AlignmentSpec(names, tuple(projections))
    return StandardSetup(names, factor, omega, spec)


@dataclass(frozen=True)
class BaseCategory:
    """Segments grouped by domain size; quasi-homologous arrows within a
    group, plus any declared extra arrows."""

    objects: tuple[Segment, ...]
    extra_arrows: tuple[SegmentMorphism, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise FunctorError("duplicate base objects")
        omegas = {s.preorder for s in self.objects}
        if len(omegas) > 1:
            raise FunctorError("base objects live over different pre-orders")
        index = {s: k for k, s in enumerate(self.objects)}
        for m in self.extra_arrows:
            if m.src not in index or m.dst not in index:
                raise FunctorError("extra arrow endpoints must be base objects")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.objects)

    def index_of(self, segment: Segment) -> int:
        try:
            return self._index[segment]
        except KeyError:
            raise FunctorError(f"{segment.display()} is not a base object") from None

    def homs(self, i: int, j: int) -> tuple[SegmentMorphism, ...]:
        """All base morphisms objects[i] -> objects[j]."""
        out = []
        a, b = self.objects[i], self.objects[j]
        if a.n1 == b.n1:
            m = quasi_homologous_morphism(a, b)
            if m is not None:
                out.append(m)
        out.extend(m for m in self.extra_arrows if m.src == a and m.dst == b)
        return tuple(out)

    def arrows(self):
        """All non-identity arrows as (i, j, morphism)."""
        for i in range(len(self.objects)):
            for j in range(len(self.objects)):
                for m in self.homs(i, j):
                    if i == j and all(
                        m.f1[k] == k + 1 for k in range(len(m.f1))
                    ):
                        continue
                    yield i, j, m

    def validate(self) -> list[str]:
        report = []
        for i in range(len(self.objects)):
            for j in range(len(self.objects)):
                homs = self.homs(i, j)
                if self.objects[i].n1 == self.objects[j].n1 and len(homs) > 1:
                    report.append(
                        f"more than one quasi-homologous arrow between objects {i} and {j}"
                    )
        arrows = list(self.arrows())
        for i, j, f in arrows:
            for j2, k, g in arrows:
                if j2 != j:
                    continue
                if compose(g, f) not in self.homs(i, k):
                    report.append(
                        f"composite of arrows {i}->{j}->{k} is not a declared arrow"
                    )
        return report


@dataclass(frozen=True)
class FiniteImage:
    elements: tuple[AlignedTuple, ...]

    def __contains__(self, x):
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class HubImage:
    """The full aligned environment of a segment, as a membership predicate.

    Nothing is materialized unless explicitly enumerated under a cap; limit
    computations treat hub nodes as determined by their inbound edges.
    """

    spec: AlignmentSpec
    segment: Segment
    level: str
    alphabet: PointedAlphabet

    def __contains__(self, x) -> bool:
        if not isinstance(x, AlignedTuple):
            return False
        return (
            x.spec == self.spec
            and x.segment == self.segment
            and x.level == self.level
            and all(w.alphabet == self.alphabet for w in x.words)
        )

    def size(self) -> int:
        total = 1
        for i in self.spec.indices:
            f = self.spec.map_for(i)
            tr = truncate(push_colors(f, self.segment), f(self.level))
            total *= len(self.alphabet.symbols) ** len(tr)
        return total

    def enumerate(self, cap: int):
        if self.size() > cap:
            raise CapExceeded(f"hub image has {self.size()} elements, cap is {cap}")
        per_component = []
        for i in self.spec.indices:
            f = self.spec.map_for(i)
            seg_i = push_colors(f, self.segment)
            per_component.append(list(iter_words(seg_i, f(self.level), self.alphabet)))
        for combo in itertools.product(*per_component):
            yield AlignedTuple(self.spec, self.segment, self.level, tuple(combo))


@dataclass(frozen=True)
class SeqAlignFunctor:
    base: BaseCategory
    spec: AlignmentSpec
    level: str
    alphabet: PointedAlphabet
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.base.objects):
            raise FunctorError("one image per base object is required")

    def image(self, i: int):
        return self.images[i]

    def is_hub(self, i: int) -> bool:
        return isinstance(self.images[i], HubImage)

    def arrow_function(self, m: SegmentMorphism):
        return lambda x: aligned_image(m, x)

    def validate(self) -> list[str]:
        """Injectivity of the inclusion, naturality of every arrow, functor laws."""
        report = []
        for k, img in enumerate(self.images):
            seg = self.base.objects[k]
            if isinstance(img, HubImage):
                if img.segment != seg or img.level != self.level:
                    report.append(f"hub image {k} is not the environment of object {k}")
                continue
            seen = set()
            for x in img:
                if not isinstance(x, AlignedTuple) or x.segment != seg \
                        or x.level != self.level or x.spec != self.spec:
                    report.append(f"image {k} holds a value outside its environment")
                    break
                if x in seen:
                    report.append(f"image {k} repeats {x.display()}")
                    break
                seen.add(x)
        report.extend(self.base.validate())
        for i, j, m in self.base.arrows():
            src = self.images[i]
            if isinstance(src, HubImage):
                report.append(
                    f"arrow {i}->{j} leaves a lazy hub image and cannot be evaluated"
                )
                continue
            dst = self.images[j]
            for x in src:
                y = aligned_image(m, x)
                if y not in dst:
                    report.append(
                        f"naturality fails on arrow {i}->{j} at element {x.display()}"
                    )
                    break
        # composition closure is inherited from aligned_image being functorial;
        # spot-check declared composites anyway
        arrows = list(self.base.arrows())
        for i, j, f in arrows:
            if isinstance(self.images[i], HubImage):
                continue
            for j2, k, g in arrows:
                if j2 != j:
                    continue
                gf = compose(g, f)
                for x in self.images[i]:
                    if aligned_image(gf, x) != aligned_image(g, aligned_image(f, x)):
                        report.append(f"functor law fails on {i}->{j}->{k}")
                        break
                break
        return report


@dataclass(frozen=True)
class BuildPolicy:
    """Which alignment objects to create and which hubs get full environments.

    ``hubs`` lists (domain size, individual name); ``pair_objects`` is "all"
    or an explicit collection of (domain size, frozenset of two names).
    """

    hubs: tuple[tuple[int, str], ...]
    pair_objects: object = "all"

    def wants_pair(self, n: int, pair: frozenset) -> bool:
        if self.pair_objects == "all":
            return True
        return (n, pair) in {(k, frozenset(p)) for k, p in self.pair_objects}


def build_from_pairwise(setup: StandardSetup, alphabet: PointedAlphabet,
                        pairwise: dict, policy: BuildPolicy) -> SeqAlignFunctor:
    """Assemble the alignment functor from grouped pairwise alignments.

    Each (pair, padded length) gives a segment colored 1 exactly at the two
    individuals, holding the alignments with the first-named individual's
    row on top; each declared hub gets the full aligned environment.
    """
    level = setup.level()
    entries = []  # (segment, image)
    for (x, y), by_length in pairwise.items():
        pair = frozenset((x, y))
        for n, alignments in by_length.items():
            if not alignments or not policy.wants_pair(n, pair):
                continue
            seg = trivial_segment(setup.omega, n, setup.color(pair))
            elements = tuple(
                aligned_tuple(
                    setup.spec, seg, level, alphabet,
                    {x: al.top, y: al.bottom},
                )
                for al in alignments
            )
            entries.append((seg, FiniteImage(elements)))
    for n, name in policy.hubs:
        seg = trivial_segment(setup.omega, n, setup.color({name}))
        entries.append((seg, HubImage(setup.spec, seg, level, alphabet)))
    entries.sort(key=lambda e: (e[0].n1, e[0].colors, e[0].topology))
    base = BaseCategory(tuple(seg for seg, _ in entries))
    functor = SeqAlignFunctor(
        base, setup.spec, level, alphabet, tuple(img for _, img in entries)
    )
    problems = functor.validate()
    if problems:
        raise FunctorError("; ".join(problems))
    return functor


@dataclass(frozen=True)
class RecolorStep:
    """One extension step: a recolored duplicate of an existing object.

    With equal domain sizes the source image is reseated verbatim (possible
    whenever the recoloring keeps every component truncation unchanged).
    When the source is one position longer and a hub is supplied, the image
    holds the column-deleted compressions of the source elements, taken at
    the columns where every hub-visible component reads the gap symbol, and
    the new object is linked to the hub by every insertion morphism.
    """

    new_segment: Segment
    source: Segment | None = None
    hub: Segment | None = None


def _visible_indices(spec, segment, level):
    out = []
    for i in spec.indices:
        f = spec.map_for(i)
        if len(truncate(push_colors(f, segment), f(level))) > 0:
            out.append(i)
    return out


def _delete_column(x: AlignedTuple, k: int, new_segment: Segment) -> AlignedTuple:
    words = []
    for i, w in zip(x.spec.indices, x.words):
        f = x.spec.map_for(i)
        seg_i = push_colors(f, new_segment)
        if len(w.letters) == 0:
            words.append(Word(seg_i, w.level, w.alphabet, ()))
            continue
        if len(w.letters) != x.segment.n1:
            raise FunctorError("compression requires fully truncated components")
        letters = w.letters[: k - 1] + w.letters[k:]
        words.append(Word(seg_i, w.level, w.alphabet, letters))
    return AlignedTuple(x.spec, new_segment, x.level, tuple(words))


def extend_colors(functor: SeqAlignFunctor, plan) -> SeqAlignFunctor:
    """Apply recolor steps over an enlarged color chain; validates the result.

    The functor must already live over the enlarged pre-order (build it with
    the larger chain as factor); the steps only add recolored duplicates,
    full-environment hubs, and their linking arrows.
    """
    objects = list(functor.base.objects)
    images = list(functor.images)
    extra = list(functor.base.extra_arrows)
    for step in plan:
        if step.new_segment in objects:
            raise FunctorError("recolored duplicate already exists")
        if step.source is None:
            new_elements: tuple = ()
        else:
            src_idx = functor.base.index_of(step.source)
            src_img = functor.images[src_idx]
            if isinstance(src_img, HubImage):
                raise FunctorError("cannot duplicate a lazy hub image")
            if step.source.n1 == step.new_segment.n1:
                new_elements = tuple(
                    AlignedTuple(
                        x.spec,
                        step.new_segment,
                        x.level,
                        tuple(
                            Word(
                                push_colors(x.spec.map_for(i), step.new_segment),
                                w.level, w.alphabet, w.letters,
                            )
                            for i, w in zip(x.spec.indices, x.words)
                        ),
                    )
                    for x in src_img
                )
            elif step.source.n1 == step.new_segment.n1 + 1 and step.hub is not None:
                visible = _visible_indices(functor.spec, step.hub, functor.level)
                eps = functor.alphabet.basepoint
                collected = []
                for x in src_img:
                    rows = {i: x.words[x.spec.position(i)].letters for i in visible}
                    for k in range(1, step.source.n1 + 1):
                        if all(rows[i][k - 1] == eps for i in visible):
                            y = _delete_column(x, k, step.new_segment)
                            if y not in collected:
                                collected.append(y)
                new_elements = tuple(collected)
            else:
                raise FunctorError(
                    "a recolor step needs equal domains, or one extra position and a hub"
                )
        objects.append(step.new_segment)
        images.append(FiniteImage(new_elements))
        if step.hub is not None:
            if step.hub not in objects:
                objects.append(step.hub)
                images.append(
                    HubImage(functor.spec, step.hub, functor.level, functor.alphabet)
                )
            if step.hub.n1 != step.new_segment.n1:
                extra.extend(enumerate_morphisms(step.new_segment, step.hub))
    base = BaseCategory(tuple(objects), tuple(extra))
    out = SeqAlignFunctor(
        base, functor.spec, functor.level, functor.alphabet, tuple(images)
    )
    problems = out.validate()
    if problems:
        raise FunctorError("; ".join(problems))
    return out
