"""Pairwise dynamic-programming alignment with exhaustive optimal traceback.

Scoring follows the two table rules: a match copies the diagonal score; a
mismatch (or gap) takes min(p, q, r) + 1, where p is the diagonal, q the
cell above and r the cell to the left.  Global mode initializes the border
with incremented gap penalties; local zeroes both borders; semi-global
zeroes the first row only.

Traceback enumerates every path from the bottom-right corner whose moves
are locally justified: from a match cell only the diagonal move (the match
rule fixes the cell to p even when a gap score coincides); from a mismatch
cell any of diagonal/up/left whose source score is cell - 1; border moves
pay the border's own penalty.
"""

import itertools
from dataclasses import dataclass, field

EPSILON = "ε"


class AlignmentInputError(ValueError):
    pass


@dataclass(frozen=True)
class PairwiseAlignment:
    top: str
    bottom: str
    _hash: int = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.top) != len(self.bottom):
            raise AlignmentInputError("rows must have equal padded length")
        if any(a == EPSILON and b == EPSILON for a, b in zip(self.top, self.bottom)):
            raise AlignmentInputError("no column may be a double gap")
        object.__setattr__(self, "_hash", hash((self.top, self.bottom)))

    @property
    def length(self) -> int:
        return len(self.top)

    def strip(self) -> tuple[str, str]:
        return (
            self.top.replace(EPSILON, ""),
            self.bottom.replace(EPSILON, ""),
        )

    def rescore(self) -> int:
        """Column-by-column cost: 0 for a match, 1 for anything else."""
        return sum(1 for a, b in zip(self.top, self.bottom) if a != b)

    def __hash__(self):
        return self._hash


@dataclass
class ScoreTable:
    top: str      # column labels
    left: str     # row labels
    cells: list   # (len(left)+1) x (len(top)+1) integers
    mode: str

    def corner(self) -> int:
        return self.cells[len(self.left)][len(self.top)]

    def check(self) -> list[str]:
        """Re-derive every cell from the two rules; list the violations."""
        report = []
        row_pen, col_pen = _border_penalties(self.mode)
        for j in range(1, len(self.top) + 1):
            if self.cells[0][j] != self.cells[0][j - 1] + row_pen:
                report.append(f"first row broken at column {j}")
        for i in range(1, len(self.left) + 1):
            if self.cells[i][0] != self.cells[i - 1][0] + col_pen:
                report.append(f"first column broken at row {i}")
        for i in range(1, len(self.left) + 1):
            for j in range(1, len(self.top) + 1):
                p = self.cells[i - 1][j - 1]
                q = self.cells[i - 1][j]
                r = self.cells[i][j - 1]
                want = p if self.top[j - 1] == self.left[i - 1] else min(p, q, r) + 1
                if self.cells[i][j] != want:
                    report.append(f"cell ({i},{j}) should be {want}")
        return report


def _border_penalties(mode: str) -> tuple[int, int]:
    if mode == "global":
        return 1, 1
    if mode == "local":
        return 0, 0
    if mode == "semiglobal":
        return 0, 1
    raise AlignmentInputError(f"unknown mode {mode!r}")


def build_table(a: str, b: str, mode: str = "global") -> ScoreTable:
    """Score table for sequences a (columns) and b (rows)."""
    for seq in (a, b):
        if EPSILON in seq:
            raise AlignmentInputError("input sequences may not contain the gap symbol")
    row_pen, col_pen = _border_penalties(mode)
    m, n = len(b), len(a)
    cells = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(1, n + 1):
        cells[0][j] = cells[0][j - 1] + row_pen
    for i in range(1, m + 1):
        cells[i][0] = cells[i - 1][0] + col_pen
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            p = cells[i - 1][j - 1]
            q = cells[i - 1][j]
            r = cells[i][j - 1]
            cells[i][j] = p if a[j - 1] == b[i - 1] else min(p, q, r) + 1
    return ScoreTable(a, b, cells, mode)


def traceback_all(table: ScoreTable) -> list[PairwiseAlignment]:
    """Every locally justified optimal path, decoded to an alignment.

    Results are deduplicated and sorted by (length, top, bottom).
    """
    a, b, cells = table.top, table.left, table.cells
    row_pen, col_pen = _border_penalties(table.mode)
    out = set()

    def rec(i, j, top, bottom):
        if i == 0 and j == 0:
            out.add((top[::-1], bottom[::-1]))
            return
        if i > 0 and j > 0:
            p = cells[i - 1][j - 1]
            if a[j - 1] == b[i - 1]:
                if cells[i][j] == p:
                    rec(i - 1, j - 1, top + a[j - 1], bottom + b[i - 1])
                return  # the match rule justifies no other move
            if cells[i][j] == p + 1:
                rec(i - 1, j - 1, top + a[j - 1], bottom + b[i - 1])
        if i > 0:
            pen = 1 if j > 0 else col_pen
            if cells[i][j] == cells[i - 1][j] + pen:
                rec(i - 1, j, top + EPSILON, bottom + b[i - 1])
        if j > 0:
            pen = 1 if i > 0 else row_pen
            if cells[i][j] == cells[i][j - 1] + pen:
                rec(i, j - 1, top + a[j - 1], bottom + EPSILON)

    rec(len(b), len(a), "", "")
    alignments = [PairwiseAlignment(t, u) for t, u in out]
    alignments.sort(key=lambda al: (al.length, al.top, al.bottom))
    return alignments


def align_pair(a: str, b: str, mode: str = "global") -> list[PairwiseAlignment]:
    return traceback_all(build_table(a, b, mode))


def align_all_pairs(individuals: dict[str, str], mode: str = "global",
                    jobs: int = 1) -> dict[tuple[str, str], dict[int, list]]:
    """For each unordered pair (in name order), the alignments grouped by length."""
    if len(individuals) < 2:
        return {}
    names = list(individuals)
    pairs = list(itertools.combinations(names, 2))

    def solve(pair):
        x, y = pair
        grouped: dict[int, list] = {}
        for al in align_pair(individuals[x], individuals[y], mode):
            grouped.setdefault(al.length, []).append(al)
        return pair, grouped

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(solve, pairs))
    else:
        results = [solve(p) for p in pairs]
    return dict(results)


def levenshtein(a: str, b: str) -> int:
    """Independent recursive oracle for the global corner score."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if a[i - 1] == b[j - 1] else 1
        return min(d(i - 1, j - 1) + cost, d(i - 1, j) + 1, d(i, j - 1) + 1)

    return d(len(a), len(b))
