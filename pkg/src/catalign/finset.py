"""Finite diagram engine: finite sets, limits, colimits, cone adjoints.

Diagrams are generating graphs of finite sets (limits and colimits over the
generated free category coincide with the edgewise solutions).  Limits are
solved by backtracking over node assignments, guarded by a configurable
candidate cap; colimits by union-find.  A node may be *lazy*: it carries a
membership predicate instead of an element list and its value in a limit
tuple is determined by any inbound edge, with cross-edge consistency
checked.  Lazy nodes with no inbound edge cannot be solved here; callers
drop them beforehand.
"""

import itertools
from dataclasses import dataclass, field

DEFAULT_CAP = 10_000_000


class CapExceeded(RuntimeError):
    """A computation would materialize more values than the configured cap."""


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class FinSetObj:
    elements: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for k, x in enumerate(self.elements):
            if x in index:
                raise DiagramError(f"duplicate element {x!r}")
            index[x] = k
        object.__setattr__(self, "_index", index)

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def position(self, x) -> int:
        return self._index[x]

    def __hash__(self):
        return hash(self.elements)


@dataclass(frozen=True)
class LazySetObj:
    """A set given by a membership predicate only."""

    contains: object
    description: str = "lazy set"

    def __contains__(self, x):
        return self.contains(x)


class FinFn:
    """A total function between finite sets, stored as a mapping table."""

    def __init__(self, dom: FinSetObj, cod, mapping):
        self.dom = dom
        self.cod = cod
        self.mapping = dict(mapping)
        for x in dom:
            if x not in self.mapping:
                raise DiagramError(f"function not total at {x!r}")
            if self.mapping[x] not in cod:
                raise DiagramError(f"image of {x!r} is outside the codomain")

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, other: "FinFn") -> "FinFn":
        """self after other."""
        return FinFn(other.dom, self.cod, {x: self(other(x)) for x in other.dom})

    def image(self):
        return set(self.mapping[x] for x in self.dom)


def fn_from_callable(dom: FinSetObj, cod, fn) -> FinFn:
    return FinFn(dom, cod, {x: fn(x) for x in dom})


def classify(f: FinFn) -> str:
    """Exact classification: bijective / surjective_only / injective_only / neither."""
    image = f.image()
    injective = len(image) == len(f.dom)
    surjective = isinstance(f.cod, FinSetObj) and len(image) == len(f.cod)
    if injective and surjective:
        return "bijective"
    if surjective:
        return "surjective_only"
    if injective:
        return "injective_only"
    return "neither"


def is_surjective(f: FinFn) -> bool:
    return classify(f) in ("bijective", "surjective_only")


def is_injective(f: FinFn) -> bool:
    return classify(f) in ("bijective", "injective_only")


@dataclass
class Edge:
    src: int
    dst: int
    fn: object  # FinFn or plain callable (pointwise, needed for lazy targets)

    def apply(self, x):
        return self.fn(x)


@dataclass
class FinDiagram:
    nodes: list
    edges: list

    def __post_init__(self):
        for e in self.edges:
            if not (0 <= e.src < len(self.nodes) and 0 <= e.dst < len(self.nodes)):
                raise DiagramError("edge endpoints out of range")

    def components(self) -> list[list[int]]:
        """Connected components of the underlying undirected graph, each
        sorted, ordered by least node."""
        n = len(self.nodes)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            ra, rb = find(e.src), find(e.dst)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        return [sorted(groups[r]) for r in sorted(groups)]


@dataclass
class LimitResult:
    obj: FinSetObj  # elements are tuples, one component per node in node order
    diagram: FinDiagram

    def projection(self, node: int) -> FinFn:
        cod = self.diagram.nodes[node]
        mapping = {t: t[node] for t in self.obj}
        if isinstance(cod, FinSetObj):
            return FinFn(self.obj, cod, mapping)
        values = []
        seen = set()
        for t in self.obj:
            if t[node] not in seen:
                seen.add(t[node])
                values.append(t[node])
        return FinFn(self.obj, FinSetObj(tuple(values)), mapping)


def _solve_order(diagram: FinDiagram) -> list[int]:
    """Assignment order: finite nodes most-constrained-first, each lazy node
    scheduled once one of its in-neighbors is placed."""
    n = len(diagram.nodes)
    finite = [i for i in range(n) if isinstance(diagram.nodes[i], FinSetObj)]
    lazies = [i for i in range(n) if not isinstance(diagram.nodes[i], FinSetObj)]
    for i in lazies:
        if not any(e.dst == i for e in diagram.edges):
            raise DiagramError(
                f"lazy node {i} has no inbound edge and cannot be determined"
            )
    placed = []
    placed_set = set()
    remaining = set(finite)
    while remaining:
        best = min(
            remaining,
            key=lambda v: (
                -sum(
                    1
                    for e in diagram.edges
                    if (e.src == v and e.dst in placed_set)
                    or (e.dst == v and e.src in placed_set)
                ),
                len(diagram.nodes[v]),
                v,
            ),
        )
        remaining.discard(best)
        placed.append(best)
        placed_set.add(best)
        for i in lazies:
            if i not in placed_set and any(
                e.dst == i and e.src in placed_set for e in diagram.edges
            ):
                placed.append(i)
                placed_set.add(i)
    for i in lazies:
        if i not in placed_set:
            placed.append(i)
            placed_set.add(i)
    return placed


def limit(diagram: FinDiagram, cap: int = DEFAULT_CAP) -> LimitResult:
    """All edge-consistent tuples, lexicographic in node element order.

    The empty diagram has the one-element limit (the empty tuple).  Raises
    CapExceeded when more than ``cap`` tuples would be materialized.
    """
    n = len(diagram.nodes)
    order = _solve_order(diagram)
    in_edges = {i: [] for i in range(n)}
    for e in diagram.edges:
        in_edges[e.dst].append(e)
    out_edges = {i: [] for i in range(n)}
    for e in diagram.edges:
        out_edges[e.src].append(e)
    solutions = []
    assignment = [None] * n
    assigned = [False] * n

    def consistent_here(v) -> bool:
        for e in in_edges[v]:
            if assigned[e.src] and e.apply(assignment[e.src]) != assignment[v]:
                return False
        for e in out_edges[v]:
            if assigned[e.dst] and e.apply(assignment[v]) != assignment[e.dst]:
                return False
        return True

    def rec(k):
        if k == len(order):
            solutions.append(tuple(assignment))
            if len(solutions) > cap:
                raise CapExceeded(f"limit exceeds cap of {cap} tuples")
            return
        v = order[k]
        node = diagram.nodes[v]
        if isinstance(node, FinSetObj):
            for x in node:
                assignment[v] = x
                assigned[v] = True
                if consistent_here(v):
                    rec(k + 1)
            assigned[v] = False
            assignment[v] = None
        else:
            source = next(e for e in in_edges[v] if assigned[e.src])
            x = source.apply(assignment[source.src])
            assignment[v] = x
            assigned[v] = True
            if x in node and consistent_here(v):
                rec(k + 1)
            assigned[v] = False
            assignment[v] = None

    rec(0)
    finite_nodes = [
        i for i in range(n) if isinstance(diagram.nodes[i], FinSetObj)
    ]
    solutions.sort(
        key=lambda t: tuple(diagram.nodes[i].position(t[i]) for i in finite_nodes)
    )
    return LimitResult(FinSetObj(tuple(solutions)), diagram)


@dataclass
class ColimitResult:
    obj: FinSetObj  # elements are tuples of (node, element) members, least first
    diagram: FinDiagram

    def injection(self, node: int) -> FinFn:
        table = {}
        for cls in self.obj:
            for v, x in cls:
                if v == node:
                    table[x] = cls
        return FinFn(self.diagram.nodes[node], self.obj, table)

    def class_of(self, node: int, x):
        for cls in self.obj:
            if (node, x) in cls:
                return cls
        raise DiagramError(f"({node}, {x!r}) is not in the colimit's carrier")


def colimit(diagram: FinDiagram) -> ColimitResult:
    """Disjoint union of the nodes, glued by x ~ f(x) per edge.

    Classes are tuples of their members sorted by (node, element position),
    so the least member is the canonical representative.
    """
    for node in diagram.nodes:
        if not isinstance(node, FinSetObj):
            raise DiagramError("colimit requires finite nodes")
    members = [
        (v, x) for v, node in enumerate(diagram.nodes) for x in node
    ]
    key = {m: k for k, m in enumerate(members)}
    parent = list(range(len(members)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for e in diagram.edges:
        for x in diagram.nodes[e.src]:
            union(key[(e.src, x)], key[(e.dst, e.apply(x))])
    groups = {}
    for k, m in enumerate(members):
        groups.setdefault(find(k), []).append(m)
    classes = tuple(tuple(groups[r]) for r in sorted(groups))
    return ColimitResult(FinSetObj(classes), diagram)


@dataclass
class SetCone:
    apex: FinSetObj
    diagram: FinDiagram
    legs: list  # one FinFn apex -> node per node

    def check(self) -> list[str]:
        report = []
        for k, e in enumerate(self.diagram.edges):
            for x in self.apex:
                if e.apply(self.legs[e.src](x)) != self.legs[e.dst](x):
                    report.append(f"cone condition fails at edge {k} on {x!r}")
                    break
        return report


def limit_adjoint(cone: SetCone, cap: int = DEFAULT_CAP) -> FinFn:
    """The canonical map apex -> limit(diagram) tupling the legs."""
    bad = cone.check()
    if bad:
        raise DiagramError("; ".join(bad))
    lim = limit(cone.diagram, cap=cap)
    mapping = {
        x: tuple(cone.legs[v](x) for v in range(len(cone.diagram.nodes)))
        for x in cone.apex
    }
    return FinFn(cone.apex, lim.obj, mapping)


def product_guard(sizes, cap: int = DEFAULT_CAP) -> int:
    """Product of sizes, raising CapExceeded past the cap."""
    total = 1
    for s in sizes:
        total *= max(s, 1)
        if total > cap:
            raise CapExceeded(f"candidate product exceeds cap of {cap}")
    return total


def brute_force_limit(diagram: FinDiagram, cap: int = DEFAULT_CAP) -> FinSetObj:
    """Oracle: filter the full Cartesian product by the edge equations."""
    sizes = [len(n) for n in diagram.nodes]
    product_guard(sizes, cap)
    out = []
    for t in itertools.product(*(node.elements for node in diagram.nodes)):
        if all(e.apply(t[e.src]) == t[e.dst] for e in diagram.edges):
            out.append(t)
    return FinSetObj(tuple(out))
