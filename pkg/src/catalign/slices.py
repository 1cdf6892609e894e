"""Slice pullbacks of an alignment functor and mechanism detection.

The i-slice at a segment pairs a Kan-extension element with a single word
whose unit image reproduces the element's i-th projections everywhere; it
selects the glued alignments that one individual's data can integrate.
Mechanism templates match the *shape* of the comma cone (insertion slots
and pushed colors, never letters): two single insertions flanking a length-1
block witness a duplication, three double insertions flanking and
interleaving a length-3 block witness an inversion.
"""

import itertools
from dataclasses import dataclass

from .alignment_functor import SeqAlignFunctor
from .environment import Word, project
from .finset import CapExceeded, DEFAULT_CAP
from .kan import (
    RanEvaluation,
    _merge_constraint,
    pushed_morphism,
    ran_eval,
)
from .segments import Segment, push_colors
from .truncation import truncate, truncate_morphism


@dataclass(frozen=True)
class SliceElement:
    index: str
    element: tuple  # Kan-extension element, aligned with the evaluation
    word: Word

    def __hash__(self):
        return hash((self.index, self.element, self.word))


def _component_constraint(functor, ev, index, comp, solution, level_i, basepoint):
    """Partial word assignment forced by one component solution, or None."""
    assign = {}
    for oi, value in zip(comp.object_indices, solution):
        w = project(value, index)
        m_i = pushed_morphism(functor, index, ev.comma.objects[oi].morphism)
        assign = _merge_constraint(
            assign, truncate_morphism(m_i, level_i), w, basepoint
        )
        if assign is None:
            return None
    return assign


@dataclass
class SliceEvaluation:
    """The i-slice at one segment, grouped by the forced partial word.

    Each group pairs a partial letter assignment with, per component, the
    solutions compatible with it; elements are the products, one per word
    completing the free positions.
    """

    functor: SeqAlignFunctor
    index: str
    evaluation: RanEvaluation
    groups: list  # (assign dict, list of per-component solution lists)

    def _words_for(self, assign, cap):
        f = self.functor.spec.map_for(self.index)
        level_i = f(self.functor.level)
        tau_i = push_colors(f, self.evaluation.tau)
        positions = truncate(tau_i, level_i).indices
        alphabet = self.functor.alphabet
        free = [p for p in positions if p not in assign]
        if len(alphabet.symbols) ** len(free) > cap:
            raise CapExceeded("too many free word positions")
        for combo in itertools.product(alphabet.symbols, repeat=len(free)):
            table = dict(assign)
            table.update(zip(free, combo))
            yield Word(tau_i, level_i, alphabet,
                       tuple(table[p] for p in positions))

    def elements(self, cap: int = DEFAULT_CAP) -> list[SliceElement]:
        out = []
        ev = self.evaluation
        pos = {oi: k for k, oi in enumerate(ev.retained)}
        for assign, per_component in self.groups:
            for z in self._words_for(assign, cap):
                for combo in itertools.product(*per_component):
                    values = [None] * len(ev.retained)
                    for comp, sol in zip(ev.components, combo):
                        for oi, v in zip(comp.object_indices, sol):
                            values[pos[oi]] = v
                    out.append(SliceElement(self.index, tuple(values), z))
                    if len(out) > cap:
                        raise CapExceeded("slice exceeds the cap")
        return out

    def support(self, cap: int = DEFAULT_CAP) -> set:
        """The distinct Kan elements admitting at least one lift."""
        out = set()
        ev = self.evaluation
        pos = {oi: k for k, oi in enumerate(ev.retained)}
        for assign, per_component in self.groups:
            for combo in itertools.product(*per_component):
                values = [None] * len(ev.retained)
                for comp, sol in zip(ev.components, combo):
                    for oi, v in zip(comp.object_indices, sol):
                        values[pos[oi]] = v
                out.add(tuple(values))
                if len(out) > cap:
                    raise CapExceeded("slice support exceeds the cap")
        return out

    @property
    def is_empty(self) -> bool:
        return not self.groups

    def lifts_of(self, element: tuple, cap: int = DEFAULT_CAP) -> list[Word]:
        """All words lifting one explicit Kan element (may be empty)."""
        from .kan import projection_target, unit_solve

        target = projection_target(self.functor, self.index, self.evaluation, element)
        return unit_solve(self.functor, self.index, self.evaluation.tau, target,
                          ev=self.evaluation, cap=cap)


def slice_eval(functor: SeqAlignFunctor, index: str, tau: Segment,
               ev: RanEvaluation | None = None,
               cap: int = DEFAULT_CAP) -> SliceEvaluation:
    """Evaluate the i-slice at tau without materializing the Kan value.

    Works component by component: each component solution either forces a
    partial word or conflicts; groups collect compatible combinations.
    """
    ev = ev or ran_eval(functor, tau, cap=cap)
    f = functor.spec.map_for(index)
    level_i = f(functor.level)
    basepoint = functor.alphabet.basepoint
    groups = [({}, [])]
    for comp in ev.components:
        buckets_per_group = []
        for assign, chosen in groups:
            buckets: dict = {}
            for sol in comp.solutions:
                forced = _component_constraint(
                    functor, ev, index, comp, sol, level_i, basepoint
                )
                if forced is None:
                    continue
                merged = dict(assign)
                ok = True
                for p, letter in forced.items():
                    if merged.get(p, letter) != letter:
                        ok = False
                        break
                    merged[p] = letter
                if not ok:
                    continue
                key = tuple(sorted(merged.items()))
                buckets.setdefault(key, []).append(sol)
            for key, sols in sorted(buckets.items()):
                buckets_per_group.append((dict(key), chosen + [sols]))
            if len(buckets_per_group) > cap:
                raise CapExceeded("slice grouping exceeds the cap")
        groups = buckets_per_group
        if not groups:
            break
    return SliceEvaluation(functor, index, ev, groups)


def wide_pullback(functor: SeqAlignFunctor, indices, tau: Segment,
                  cap: int = DEFAULT_CAP):
    """Kan elements lifting simultaneously for every index in the subset.

    Returns (support, witnesses) where witnesses maps each supported
    element to {index: lifting words}.  The empty subset returns all of the
    Kan value with empty witness sets.
    """
    indices = tuple(indices)
    ev = ran_eval(functor, tau, cap=cap)
    if not indices:
        return set(ev.elements(cap)), {}
    supports = []
    slices = {}
    for i in indices:
        sl = slice_eval(functor, i, tau, ev=ev, cap=cap)
        slices[i] = sl
        supports.append(sl.support(cap))
    common = set.intersection(*supports) if supports else set()
    witnesses = {
        x: {i: tuple(slices[i].lifts_of(x, cap)) for i in indices} for x in common
    }
    return common, witnesses


def pareto_subsets(functor: SeqAlignFunctor, tau: Segment,
                   cap: int = DEFAULT_CAP) -> list[dict]:
    """All (subset size, support size) outcomes on the Pareto frontier.

    The maximality objective is underdetermined, so every non-dominated
    pair is reported, largest subsets first."""
    names = functor.spec.indices
    rows = []
    for r in range(len(names) + 1):
        for combo in itertools.combinations(names, r):
            support, _ = wide_pullback(functor, combo, tau, cap=cap)
            rows.append({"indices": combo, "support": len(support)})
    frontier = []
    for row in rows:
        dominated = any(
            other is not row
            and len(other["indices"]) >= len(row["indices"])
            and other["support"] >= row["support"]
            and (
                len(other["indices"]) > len(row["indices"])
                or other["support"] > row["support"]
            )
            for other in rows
        )
        if not dominated:
            frontier.append(row)
    frontier.sort(key=lambda r: (-len(r["indices"]), -r["support"]))
    return frontier


@dataclass(frozen=True)
class MechanismTemplate:
    """A comma-cone leg pattern: per leg, the inserted-slot offsets.

    Offsets are relative to the block start in target coordinates; a leg
    matches a comma object when its pushed position map misses exactly the
    offset slots and those slots are truncated (visible) at the level."""

    kind: str
    leg_offsets: tuple[tuple[int, ...], ...]
    block_length: int


DUPLICATION = MechanismTemplate("duplication", ((0,), (1,)), 1)
INVERSION = MechanismTemplate("inversion", ((0, 1), (1, 3), (3, 4)), 3)


def custom_template(kind: str, leg_offsets, block_length: int) -> MechanismTemplate:
    return MechanismTemplate(kind, tuple(tuple(l) for l in leg_offsets), block_length)


@dataclass(frozen=True)
class MechanismFinding:
    kind: str
    block_start: int
    block_length: int
    comma_objects: tuple[int, ...]
    witness_element: tuple
    witness_word: Word
    partners: tuple[str, ...]


def _skip_set(m) -> tuple[int, ...]:
    image = set(m.f1)
    return tuple(j for j in range(1, m.dst.n1 + 1) if j not in image)


def _visible_partners(functor, segment, index):
    out = []
    for name in functor.spec.indices:
        if name == index:
            continue
        f = functor.spec.map_for(name)
        if len(truncate(push_colors(f, segment), f(functor.level))) > 0:
            out.append(name)
    return tuple(out)


def detect_mechanisms(functor: SeqAlignFunctor, index: str, tau: Segment,
                      templates=(DUPLICATION, INVERSION),
                      cap: int = DEFAULT_CAP) -> list[MechanismFinding]:
    """Match template shapes against the comma cone and test lift existence.

    A template instance binds one comma object per leg pattern (all
    distinct), anchored at a block start; the lift test runs the slice
    machinery restricted to the matched legs.  Matching looks only at
    insertion slots and pushed colors, never at letters.
    """
    ev = ran_eval(functor, tau, cap=cap)
    f = functor.spec.map_for(index)
    level_i = f(functor.level)
    basepoint = functor.alphabet.basepoint
    pushed = {}
    for oi in ev.retained:
        m_i = pushed_morphism(functor, index, ev.comma.objects[oi].morphism)
        skips = _skip_set(m_i)
        visible = all(
            m_i.dst.preorder.leq(level_i, m_i.dst.color_at(j)) for j in skips
        )
        pushed[oi] = (m_i, skips, visible)
    findings = []
    for template in templates:
        max_start = tau.n1 + max(max(l) for l in template.leg_offsets) + 1
        for start in range(1, max_start + 1):
            wanted = [
                tuple(start + o for o in leg) for leg in template.leg_offsets
            ]
            candidates = []
            for leg_skips in wanted:
                matches = [
                    oi
                    for oi, (m_i, skips, visible) in pushed.items()
                    if skips == leg_skips and visible
                ]
                candidates.append(matches)
            for combo in itertools.product(*candidates):
                if len(set(combo)) != len(combo):
                    continue
                finding = _test_lift(functor, ev, index, template, start, combo,
                                     level_i, basepoint, cap)
                if finding is not None:
                    findings.append(finding)
    return findings


def _test_lift(functor, ev, index, template, start, combo, level_i, basepoint, cap):
    matched = set(combo)
    groups = [({}, [])]
    pos_of = {oi: k for k, oi in enumerate(ev.retained)}
    for comp in ev.components:
        touched = [oi for oi in comp.object_indices if oi in matched]
        buckets_per_group = []
        for assign, chosen in groups:
            if not touched:
                buckets_per_group.append((assign, chosen + [list(comp.solutions)]))
                continue
            buckets: dict = {}
            for sol in comp.solutions:
                forced = {}
                ok = True
                for oi, value in zip(comp.object_indices, sol):
                    if oi not in matched:
                        continue
                    w = project(value, index)
                    m_i = pushed_morphism(
                        functor, index, ev.comma.objects[oi].morphism
                    )
                    forced = _merge_constraint(
                        forced, truncate_morphism(m_i, level_i), w, basepoint
                    )
                    if forced is None:
                        ok = False
                        break
                if not ok:
                    continue
                merged = dict(assign)
                clash = False
                for p, letter in forced.items():
                    if merged.get(p, letter) != letter:
                        clash = True
                        break
                    merged[p] = letter
                if clash:
                    continue
                key = tuple(sorted(merged.items()))
                buckets.setdefault(key, []).append(sol)
            for key, sols in sorted(buckets.items()):
                buckets_per_group.append((dict(key), chosen + [sols]))
        groups = buckets_per_group
        if not groups:
            return None
    assign, per_component = groups[0]
    f = functor.spec.map_for(index)
    tau_i = push_colors(f, ev.tau)
    positions = truncate(tau_i, level_i).indices
    free = [p for p in positions if p not in assign]
    table = dict(assign)
    for p in free:
        table[p] = functor.alphabet.symbols[0]
    word = Word(tau_i, level_i, functor.alphabet,
                tuple(table[p] for p in positions))
    values = [None] * len(ev.retained)
    for comp, sols in zip(ev.components, per_component):
        for oi, v in zip(comp.object_indices, sols[0]):
            values[pos_of[oi]] = v
    partners = set()
    for oi in combo:
        seg = functor.base.objects[ev.comma.objects[oi].base_index]
        partners.update(_visible_partners(functor, seg, index))
    return MechanismFinding(
        template.kind,
        start,
        template.block_length,
        tuple(combo),
        tuple(values),
        word,
        tuple(sorted(partners)),
    )
