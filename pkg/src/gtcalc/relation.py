"""Finite relations (problems, solutions, "solves"), duals and exact norms.

A relation is stored as its labelled problem and solution sides plus a
boolean incidence matrix; ``incidence[i][j]`` is true when solution ``j``
solves problem ``i``.  Internally each row and column is also kept as an
integer bitmask, which is what the cover search works with.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, DuplicateLabel, InvalidDensity, SearchSpaceTooLarge

DEFAULT_MAX_SOLUTIONS = 24


@total_ordering
@dataclass(frozen=True)
class NormValue:
    """Either a natural number or ``TOP`` (some problem has no solution)."""

    value: int | None

    @property
    def is_top(self) -> bool:
        return self.value is None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __lt__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __mul__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        if self.value is None or other.value is None:
            return TOP
        return NormValue(self.value * other.value)

    def __str__(self):
        return "Top" if self.value is None else str(self.value)

    def to_json(self):
        return self.value


TOP = NormValue(None)


def Finite(n: int) -> NormValue:
    if n < 0:
        raise ValueError("norms are natural numbers")
    return NormValue(n)


def _check_unique(labels, side):
    seen = set()
    for label in labels:
        if label in seen:
            raise DuplicateLabel(f"duplicate {side} label {label!r}")
        seen.add(label)


@dataclass(frozen=True, eq=True)
class FiniteRelation:
    problems: tuple[str, ...]
    solutions: tuple[str, ...]
    incidence: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if len(self.incidence) != len(self.problems):
            raise DimensionMismatch(
                f"{len(self.incidence)} rows for {len(self.problems)} problems")
        for row in self.incidence:
            if len(row) != len(self.solutions):
                raise DimensionMismatch(
                    f"row of length {len(row)} for {len(self.solutions)} solutions")
        _check_unique(self.problems, "problem")
        _check_unique(self.solutions, "solution")

    def __repr__(self):
        rows = ",".join(self.matrix_strings())
        return f"FiniteRelation({len(self.problems)}x{len(self.solutions)}: {rows})"

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.problems), len(self.solutions)

    @cached_property
    def problem_index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.problems)}

    @cached_property
    def solution_index(self) -> dict[str, int]:
        return {s: j for j, s in enumerate(self.solutions)}

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Bit ``j`` of row ``i`` is set when solution ``j`` solves problem ``i``."""
        return tuple(sum(1 << j for j, bit in enumerate(row) if bit)
                     for row in self.incidence)

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Bit ``i`` of column ``j`` is set when solution ``j`` solves problem ``i``."""
        cols = [0] * len(self.solutions)
        for i, row in enumerate(self.incidence):
            for j, bit in enumerate(row):
                if bit:
                    cols[j] |= 1 << i
        return tuple(cols)

    def related(self, problem: str, solution: str) -> bool:
        return self.incidence[self.problem_index[problem]][self.solution_index[solution]]

    def solves(self, solution: str) -> set[str]:
        j = self.solution_index[solution]
        return {p for i, p in enumerate(self.problems) if self.incidence[i][j]}

    def is_cover(self, chosen: Iterable[str]) -> bool:
        mask = 0
        cols = self.column_masks
        for s in chosen:
            mask |= cols[self.solution_index[s]]
        return mask == (1 << len(self.problems)) - 1

    def matrix_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.incidence]

    def to_json(self) -> dict:
        return {"problems": list(self.problems), "solutions": list(self.solutions),
                "matrix": self.matrix_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteRelation":
        try:
            problems, solutions, matrix = data["problems"], data["solutions"], data["matrix"]
        except (KeyError, TypeError) as exc:
            raise DimensionMismatch(f"relation JSON lacks a field: {exc}") from None
        rows = []
        for row in matrix:
            if set(row) - {"0", "1"}:
                raise DimensionMismatch(f"matrix row {row!r} is not a 0/1 string")
            rows.append([c == "1" for c in row])
        return make_relation(problems, solutions, rows)


def make_relation(problems: Sequence[str], solutions: Sequence[str],
                  incidence: Sequence[Sequence[bool]]) -> FiniteRelation:
    return FiniteRelation(tuple(str(p) for p in problems),
                          tuple(str(s) for s in solutions),
                          tuple(tuple(bool(b) for b in row) for row in incidence))


def relation_from_predicate(problems, solutions, solves) -> FiniteRelation:
    """Tabulate ``solves(problem, solution)`` over two label sequences."""
    return make_relation(problems, solutions,
                         [[solves(p, s) for s in solutions] for p in problems])


def equality_relation(kappa: int) -> FiniteRelation:
    """``(kappa, kappa, =)`` with labels ``"0"`` .. ``"kappa-1"``."""
    labels = [str(i) for i in range(kappa)]
    return make_relation(labels, labels, [[i == j for j in range(kappa)] for i in range(kappa)])


def strict_order_relation(kappa: int) -> FiniteRelation:
    """``(kappa, kappa, <)``: problem ``d`` is solved by every solution above it."""
    labels = [str(i) for i in range(kappa)]
    return make_relation(labels, labels, [[i < j for j in range(kappa)] for i in range(kappa)])


def dual(rel: FiniteRelation) -> FiniteRelation:
    return FiniteRelation(
        rel.solutions, rel.problems,
        tuple(tuple(not rel.incidence[i][j] for i in range(len(rel.problems)))
              for j in range(len(rel.solutions))))


# -- norms -----------------------------------------------------------------

def _greedy_cover(full: int, cols: Sequence[int]) -> list[int]:
    covered, chosen = 0, []
    while covered != full:
        best = max(range(len(cols)), key=lambda j: ((cols[j] & ~covered).bit_count(), -j))
        chosen.append(best)
        covered |= cols[best]
    return chosen


def _reduce_columns(cols: Sequence[int]) -> list[int]:
    """Indices of columns that are not dominated by another column."""
    keep = []
    for j, c in enumerate(cols):
        if c == 0:
            continue
        dominated = False
        for k, d in enumerate(cols):
            if k != j and c & d == c and (c != d or k < j):
                dominated = True
                break
        if not dominated:
            keep.append(j)
    return keep


def min_cover(rel: FiniteRelation, max_solutions: int | None = DEFAULT_MAX_SOLUTIONS):
    """A minimum-size covering tuple of solution labels, or ``None`` for Top.

    Branch and bound seeded with the greedy cover.  At each node the
    uncovered problem with the fewest candidate solutions is branched on;
    the bound is ``ceil(uncovered / widest remaining column)``.
    """
    n_sol = len(rel.solutions)
    if max_solutions is not None and n_sol > max_solutions:
        raise SearchSpaceTooLarge(
            f"exact norm limited to {max_solutions} solutions, got {n_sol}")
    if any(mask == 0 for mask in rel.row_masks):
        return None
    n_prob = len(rel.problems)
    if n_prob == 0:
        return ()
    full = (1 << n_prob) - 1
    all_cols = rel.column_masks
    keep = _reduce_columns(all_cols)
    cols = [all_cols[j] for j in keep]
    candidates = [[k for k, c in enumerate(cols) if c >> i & 1] for i in range(n_prob)]

    best = _greedy_cover(full, cols)
    chosen: list[int] = []

    def search(covered: int) -> None:
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        uncovered = full & ~covered
        widest = max((c & uncovered).bit_count() for c in cols)
        lower = -(-uncovered.bit_count() // widest)
        if len(chosen) + lower >= len(best):
            return
        pivot = min((i for i in range(n_prob) if uncovered >> i & 1),
                    key=lambda i: len(candidates[i]))
        options = sorted(candidates[pivot], key=lambda k: -(cols[k] & uncovered).bit_count())
        for k in options:
            chosen.append(k)
            search(covered | cols[k])
            chosen.pop()

    search(0)
    return tuple(rel.solutions[keep[k]] for k in sorted(best))


def norm(rel: FiniteRelation, max_solutions: int | None = DEFAULT_MAX_SOLUTIONS) -> NormValue:
    """Least number of solutions needed to solve every problem."""
    cover = min_cover(rel, max_solutions)
    return TOP if cover is None else Finite(len(cover))


def norm_by_enumeration(rel: FiniteRelation, max_solutions: int = 16) -> NormValue:
    """Reference norm: try every solution subset in order of size."""
    n_sol = len(rel.solutions)
    if n_sol > max_solutions:
        raise SearchSpaceTooLarge(f"enumeration limited to {max_solutions} solutions")
    full = (1 << len(rel.problems)) - 1
    cols = rel.column_masks
    for size in range(n_sol + 1):
        for subset in combinations(range(n_sol), size):
            mask = 0
            for j in subset:
                mask |= cols[j]
            if mask == full:
                return Finite(size)
    return TOP


def random_relation(seed: int, max_problems: int, max_solutions: int,
                    density=Fraction(1, 2)) -> FiniteRelation:
    """Seeded random relation with 1..max_problems rows and 1..max_solutions columns."""
    if max_problems < 1 or max_solutions < 1:
        raise ValueError("maximum sizes must be at least 1")
    density = Fraction(density)
    if not 0 < density <= 1:
        raise InvalidDensity(f"density must lie in (0, 1], got {density}")
    rng = random.Random(seed)
    n_prob = rng.randint(1, max_problems)
    n_sol = rng.randint(1, max_solutions)
    rows = [[rng.random() < density for _ in range(n_sol)] for _ in range(n_prob)]
    return make_relation([f"p{i}" for i in range(n_prob)], [f"s{j}" for j in range(n_sol)], rows)


def load_relation(path) -> FiniteRelation:
    with open(path) as fh:
        return FiniteRelation.from_json(json.load(fh))


def dump_relation(rel: FiniteRelation, path) -> None:
    with open(path, "w") as fh:
        json.dump(rel.to_json(), fh, indent=2)
        fh.write("\n")
