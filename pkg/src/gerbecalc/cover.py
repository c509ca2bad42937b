"""Open covers by vertex subsets: overlaps, nerve, contractibility diagnostics.

The open set U_i is the subcomplex induced on a vertex subset; the overlap of
several sets is the subcomplex induced on their intersection.  A p-cochain
"on an overlap" is supported on cells all of whose vertices lie inside it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .simplicial import SimplicialComplex, boundary_matrix


@dataclass(frozen=True)
class Cover:
    """A cover of a complex by vertex subsets.

    Valid covers list every vertex in at least one set and fit every cell of
    the complex inside at least one set, so that cochain data on overlaps can
    represent any local quantity.
    """

    complex: SimplicialComplex
    sets: tuple[frozenset[int], ...]
    _overlaps: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls, complex: SimplicialComplex, sets: Sequence[Iterable[int]]
    ) -> "Cover":
        fsets = tuple(frozenset(int(v) for v in s) for s in sets)
        if not fsets:
            raise InvalidInputError("a cover needs at least one set")
        vertices = complex.vertices
        for i, s in enumerate(fsets):
            unknown = s - vertices
            if unknown:
                raise InvalidInputError(
                    f"cover set {i} names unknown vertices {sorted(unknown)}"
                )
        missing = vertices - frozenset().union(*fsets)
        if missing:
            raise InvalidInputError(f"vertices {sorted(missing)} are not covered")
        for q in sorted(complex.simplices):
            for cell in complex.cells(q):
                if not any(s.issuperset(cell) for s in fsets):
                    raise InvalidInputError(f"cell {cell} lies in no cover set")
        return cls(complex, fsets)

    def _canonical(self, indices: Iterable[int]) -> tuple[int, ...]:
        t = tuple(int(i) for i in indices)
        if len(set(t)) != len(t):
            raise InvalidInputError(f"repeated cover index in {t}")
        for i in t:
            if not 0 <= i < len(self.sets):
                raise InvalidInputError(f"cover index {i} out of range")
        return tuple(sorted(t))

    def overlap_vertices(self, indices: Iterable[int]) -> frozenset[int]:
        key = self._canonical(indices)
        if not key:
            return self.complex.vertices
        out = self.sets[key[0]]
        for i in key[1:]:
            out = out & self.sets[i]
        return out

    def overlap(self, indices: Iterable[int]) -> SimplicialComplex:
        """Induced subcomplex on the vertex intersection; depends only on the set."""
        key = self._canonical(indices)
        got = self._overlaps.get(key)
        if got is None:
            got = self.complex.induced(self.overlap_vertices(key))
            self._overlaps[key] = got
        return got

    @cached_property
    def _nerve(self) -> tuple[tuple[int, ...], ...]:
        out: list[tuple[int, ...]] = []

        def grow(prefix: tuple[int, ...], inter):
            start = prefix[-1] + 1 if prefix else 0
            for j in range(start, len(self.sets)):
                ni = (inter & self.sets[j]) if prefix else self.sets[j]
                if ni:
                    t = prefix + (j,)
                    out.append(t)
                    grow(t, ni)

        grow((), None)
        return tuple(out)

    def nerve(self) -> tuple[tuple[int, ...], ...]:
        """All increasing index tuples with a nonempty overlap, in lexicographic order."""
        return self._nerve


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Exact integer arithmetic, so no float rank thresholds are involved.
    """
    m = [list(map(int, row)) for row in matrix]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * m[row][col] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def betti_numbers(complex: SimplicialComplex, up_to: int = 2) -> tuple[int, ...]:
    """Betti numbers b_0..b_{up_to} from exact integer ranks of boundary maps."""
    counts = [len(complex.cells(q)) for q in range(up_to + 2)]
    ranks = [0] + [
        integer_rank(boundary_matrix(complex, q)) for q in range(1, up_to + 2)
    ]
    return tuple(counts[q] - ranks[q] - ranks[q + 1] for q in range(up_to + 1))


@dataclass(frozen=True)
class OverlapDiagnostic:
    indices: tuple[int, ...]
    betti: tuple[int, int, int]
    contractible: bool

    @property
    def status(self) -> str:
        return "OK" if self.contractible else "WARN"


@dataclass(frozen=True)
class GoodCoverReport:
    """Per-overlap acyclicity diagnostics; warnings, never errors."""

    entries: tuple[OverlapDiagnostic, ...]

    @property
    def warnings(self) -> tuple[OverlapDiagnostic, ...]:
        return tuple(e for e in self.entries if not e.contractible)

    @property
    def all_contractible(self) -> bool:
        return not self.warnings


def check_good_cover(cover: Cover) -> GoodCoverReport:
    """Check each nonempty overlap for acyclicity (b0 = 1, b1 = b2 = 0).

    Failures are reported with WARN status only: non-contractible overlaps
    still carry usable data, they just fall outside the good-cover setting.
    """
    entries = []
    for t in cover.nerve():
        b = betti_numbers(cover.overlap(t), up_to=2)
        entries.append(OverlapDiagnostic(t, b, b == (1, 0, 0)))
    return GoodCoverReport(tuple(entries))
