"""Finite pre-ordered sets, order-preserving maps, and finite products.

Pre-orders are stored transitively closed, so every ``leq`` query is a
table lookup.  Element labels are opaque strings with a fixed construction
order; products build tuple labels deterministically from their factors.
"""

import itertools
from dataclasses import dataclass, field


class PreorderError(ValueError):
    pass


@dataclass(frozen=True)
class Preorder:
    """A finite set of labels with a reflexive, transitive boolean relation."""

    elements: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise PreorderError("duplicate element labels")
        n = len(self.elements)
        if len(self.relation) != n or any(len(row) != n for row in self.relation):
            raise PreorderError("relation table must be square over the elements")
        for i in range(n):
            if not self.relation[i][i]:
                raise PreorderError(f"relation not reflexive at {self.elements[i]!r}")
        for i in range(n):
            for j in range(n):
                if not self.relation[i][j]:
                    continue
                for k in range(n):
                    if self.relation[j][k] and not self.relation[i][k]:
                        raise PreorderError(
                            "relation not transitive through "
                            f"{self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[k]!r}"
                        )
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    def __contains__(self, label):
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PreorderError(f"{label!r} is not an element of this pre-order") from None

    def leq(self, x: str, y: str) -> bool:
        return self.relation[self.index(x)][self.index(y)]

    def __hash__(self):
        return hash((self.elements, self.relation))


def preorder_from_pairs(elements, pairs) -> Preorder:
    """Build a pre-order from generating pairs, closing reflexively and transitively."""
    elements = tuple(elements)
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in pairs:
        if x not in idx or y not in idx:
            raise PreorderError(f"pair ({x!r}, {y!r}) mentions unknown elements")
        rel[idx[x]][idx[y]] = True
    # Floyd-Warshall style closure
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                row_k = rel[k]
                row_i = rel[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return Preorder(elements, tuple(tuple(row) for row in rel))


def boolean_preorder() -> Preorder:
    """The Boolean pre-ordered set {0 <= 1}."""
    return chain_preorder(2)


def chain_preorder(n: int) -> Preorder:
    """The chain 0 <= 1 <= ... <= n-1 with labels "0".."n-1"."""
    if n < 1:
        raise PreorderError("chain needs at least one element")
    labels = tuple(str(i) for i in range(n))
    return preorder_from_pairs(labels, [(str(i), str(i + 1)) for i in range(n - 1)])


def discrete_preorder(labels) -> Preorder:
    return preorder_from_pairs(tuple(labels), [])


def tuple_label(parts: tuple[str, ...]) -> str:
    """Canonical label for a product element: "[1100]" when every factor label
    is a single character, "[a,b,c]" otherwise."""
    if all(len(p) == 1 for p in parts):
        return "[" + "".join(parts) + "]"
    return "[" + ",".join(parts) + "]"


def split_tuple_label(label: str, arity: int) -> tuple[str, ...]:
    """Inverse of :func:`tuple_label` for a known arity."""
    if not (label.startswith("[") and label.endswith("]")):
        raise PreorderError(f"not a tuple label: {label!r}")
    body = label[1:-1]
    if "," in body:
        parts = tuple(body.split(","))
    else:
        parts = tuple(body)
    if len(parts) != arity:
        raise PreorderError(f"tuple label {label!r} does not have arity {arity}")
    return parts


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving function between two pre-orders.

    The mapping is stored as a tuple of (source, target) pairs in source
    element order so that maps are hashable values.
    """

    dom: Preorder
    cod: Preorder
    mapping: tuple[tuple[str, str], ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table = dict(self.mapping)
        missing = [x for x in self.dom.elements if x not in table]
        if missing:
            raise PreorderError(f"mapping is not total, missing {missing}")
        extra = [x for x in table if x not in self.dom]
        if extra:
            raise PreorderError(f"mapping mentions non-elements {extra}")
        for x, y in table.items():
            if y not in self.cod:
                raise PreorderError(f"image {y!r} of {x!r} is not in the codomain")
        object.__setattr__(self, "_table", table)

    def __call__(self, x: str) -> str:
        return self._table[self.dom.elements[self.dom.index(x)]]

    def __hash__(self):
        return hash((self.dom, self.cod, self.mapping))


def monotone_map(dom: Preorder, cod: Preorder, table) -> MonotoneMap:
    """Build a MonotoneMap from a dict-like table, keeping dom element order."""
    table = dict(table)
    return MonotoneMap(dom, cod, tuple((x, table[x]) for x in dom.elements))


def identity_map(p: Preorder) -> MonotoneMap:
    return monotone_map(p, p, {x: x for x in p.elements})


def compose_maps(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    if f.cod != g.dom:
        raise PreorderError("maps are not composable")
    return monotone_map(f.dom, g.cod, {x: g(f(x)) for x in f.dom.elements})


def validate_monotone(m: MonotoneMap) -> list[str]:
    """Empty report iff m is order-preserving; otherwise the violating pairs."""
    report = []
    for x in m.dom.elements:
        for y in m.dom.elements:
            if m.dom.leq(x, y) and not m.cod.leq(m(x), m(y)):
                report.append(f"{x!r} <= {y!r} but {m(x)!r} !<= {m(y)!r}")
    return report


def product(factors) -> tuple[Preorder, list[MonotoneMap]]:
    """Cartesian product of pre-orders with componentwise order and projections.

    Elements are tuples in factor order, ordered lexicographically in the
    factors' element orders; projection i extracts component i.
    """
    factors = list(factors)
    if not factors:
        raise PreorderError("product needs at least one factor")
    tuples = list(itertools.product(*(f.elements for f in factors)))
    labels = tuple(tuple_label(t) for t in tuples)
    n = len(tuples)
    rel = [
        tuple(
            all(f.leq(x, y) for f, x, y in zip(factors, tuples[i], tuples[j]))
            for j in range(n)
        )
        for i in range(n)
    ]
    prod = Preorder(labels, tuple(rel))
    projections = [
        monotone_map(prod, f, {labels[i]: tuples[i][k] for i in range(n)})
        for k, f in enumerate(factors)
    ]
    return prod, projections
