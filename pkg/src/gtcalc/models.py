"""Finite truncations of the concrete relations on omega.

Everything lives in a universe ``[0, N)``.  "For all but finitely many n"
becomes "for every n in ``[t, N)``" with an explicit cutoff ``t`` and
"infinitely many" becomes "at least ``k``"; no statement about the limit
``N -> infinity`` is made.

Functions ``[0, N) -> omega`` are plain tuples of naturals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import (ArityTooLarge, DuplicateBranch, EmptySet, IndexOutOfRange,
                     LengthMismatch, NoAgreement, NotActuallyBad, NotStrictlyExpanding,
                     NotStrictlyIncreasing, StraddlingAgreement, ThresholdTooLarge,
                     TooFewElements, UniverseExhausted, UniverseMismatch)


@dataclass(frozen=True)
class TruncationContext:
    N: int
    t: int = 0
    k: int = 1

    def __post_init__(self):
        if not 0 <= self.t < self.N:
            raise ValueError(f"cutoff t={self.t} must lie in [0, {self.N})")
        if self.k < 1:
            raise ValueError("recurrence threshold k must be at least 1")


@dataclass(frozen=True)
class FiniteSet:
    N: int
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        bad = [x for x in self.members if not 0 <= x < self.N]
        if bad:
            raise UniverseMismatch(f"{min(bad)} lies outside [0, {self.N})")

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def above(self, t) -> "FiniteSet":
        return FiniteSet(self.N, {x for x in self.members if x >= t})

    def to_json(self):
        return sorted(self.members)


@dataclass(frozen=True)
class IntervalPartition:
    boundaries: tuple[int, ...]

    def __post_init__(self):
        b = tuple(self.boundaries)
        object.__setattr__(self, "boundaries", b)
        if len(b) < 2 or b[0] != 0 or any(x >= y for x, y in zip(b, b[1:])):
            raise ValueError(f"boundaries {b} must increase strictly from 0")

    @property
    def N(self) -> int:
        return self.boundaries[-1]

    @property
    def intervals(self) -> list[range]:
        return [range(a, b) for a, b in zip(self.boundaries, self.boundaries[1:])]

    def __len__(self):
        return len(self.boundaries) - 1

    def index_of(self, x) -> int:
        """Index of the interval containing ``x``."""
        for i, (a, b) in enumerate(zip(self.boundaries, self.boundaries[1:])):
            if a <= x < b:
                return i
        raise IndexOutOfRange(f"{x} lies outside [0, {self.N})")

    def to_json(self):
        return list(self.boundaries)


def singleton_partition(N) -> IntervalPartition:
    return IntervalPartition(tuple(range(N + 1)))


@dataclass(frozen=True)
class ChoppedReal:
    bits: tuple[int, ...]
    partition: IntervalPartition

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(self.bits))
        if len(self.bits) != self.partition.N:
            raise UniverseMismatch(
                f"{len(self.bits)} bits over a partition of [0, {self.partition.N})")

    @property
    def N(self):
        return len(self.bits)

    def to_json(self):
        return {"bits": "".join(map(str, self.bits)), "partition": self.partition.to_json()}


@dataclass(frozen=True)
class Slalom:
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for n, block in enumerate(blocks):
            if len(block) != n:
                raise ValueError(f"slalom block {n} has {len(block)} elements")

    @property
    def N(self):
        return len(self.blocks)

    def to_json(self):
        return [sorted(b) for b in self.blocks]


def _colex_rank(subset) -> int:
    return sum(comb(x, i + 1) for i, x in enumerate(subset))


@dataclass(frozen=True)
class PairColoring:
    """A 2-coloring of the ``arity``-element subsets of ``[0, N)``.

    ``colors`` is indexed by colex rank of the sorted subset.
    """

    N: int
    arity: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != comb(self.N, self.arity):
            raise ValueError(f"{len(self.colors)} colors for C({self.N}, {self.arity}) subsets")

    @classmethod
    def from_function(cls, N, arity, fn) -> "PairColoring":
        subsets = sorted(combinations(range(N), arity), key=lambda s: s[::-1])
        return cls(N, arity, tuple(fn(s) for s in subsets))

    def color(self, subset) -> int:
        s = sorted(subset)
        if len(s) != self.arity:
            raise ValueError(f"expected a {self.arity}-set, got {s}")
        if self.arity == 2:
            a, b = s
            return self.colors[a + b * (b - 1) // 2]
        return self.colors[_colex_rank(s)]

    def to_json(self):
        return {"N": self.N, "arity": self.arity, "colors": list(self.colors)}


def _same_length(*seqs):
    lengths = {len(s) for s in seqs}
    if len(lengths) > 1:
        raise LengthMismatch(f"lengths differ: {sorted(lengths)}")


def _same_universe(*objs):
    sizes = {o.N for o in objs}
    if len(sizes) > 1:
        raise UniverseMismatch(f"universes differ: {sorted(sizes)}")


# -- eventual relations ----------------------------------------------------

def dominates_past(f: Sequence[int], g: Sequence[int], t: int) -> bool:
    """``g(n) < f(n)`` for every ``n`` in ``[t, N)``."""
    _same_length(f, g)
    return all(g[n] < f[n] for n in range(t, len(f)))


def eventually_different_past(f: Sequence[int], g: Sequence[int], t: int) -> bool:
    _same_length(f, g)
    return all(g[n] != f[n] for n in range(t, len(f)))


def partition_dominates_past(I: IntervalPartition, J: IntervalPartition, t: int) -> bool:
    """Every ``J``-interval of index ``>= t`` lies inside one ``I``-interval."""
    _same_universe(I, J)
    inner = set(I.boundaries[1:-1])
    for a, b in list(zip(J.boundaries, J.boundaries[1:]))[t:]:
        if any(a < c < b for c in inner):
            return False
    return True


def splits_with(x: FiniteSet, y: FiniteSet, k: int) -> bool:
    _same_universe(x, y)
    return len(x.members & y.members) >= k and len(y.members - x.members) >= k


def goes_through_past(f: Sequence[int], S: Slalom, t: int) -> bool:
    """``f(n)`` lies in block ``n`` of ``S`` for every ``n`` in ``[t, N)``.

    Block 0 is empty, so the answer is always false at ``t = 0``.
    """
    if len(f) != S.N:
        raise LengthMismatch(f"function of length {len(f)} against a slalom of length {S.N}")
    return all(f[n] in S.blocks[n] for n in range(t, S.N))


def match_count(h: Sequence[int], c: ChoppedReal) -> int:
    if len(h) != c.N:
        raise UniverseMismatch(f"real of length {len(h)} against a chopped real of length {c.N}")
    return sum(1 for I in c.partition.intervals
               if all(h[i] == c.bits[i] for i in I))


def homogeneous_past(pi: PairColoring, H: FiniteSet, t: int):
    """The constant color of ``pi`` on ``H ∩ [t, N)``, or ``None``."""
    _same_universe(pi, H)
    rest = sorted(x for x in H.members if x >= t)
    if len(rest) < pi.arity:
        raise TooFewElements(f"{len(rest)} elements past {t}, arity is {pi.arity}")
    seen = set()
    for subset in combinations(rest, pi.arity):
        seen.add(pi.color(subset))
        if len(seen) > 1:
            return None
    return seen.pop()


# -- functions built from sets ---------------------------------------------

def enumerator(x: FiniteSet) -> tuple[int, ...]:
    """The increasing enumeration of ``x``."""
    if not x.members:
        raise EmptySet("cannot enumerate the empty set")
    return tuple(sorted(x.members))


def _check_expanding(f):
    for n, v in enumerate(f):
        if v <= n or (n and v <= f[n - 1]):
            raise NotStrictlyExpanding(f"need f strictly increasing with f(n) > n; fails at n={n}")


def orbit(f: Sequence[int]) -> list[int]:
    """``0, f(0), f(f(0)), ...`` while the current point is inside the domain."""
    _check_expanding(f)
    points = [0]
    while points[-1] < len(f):
        points.append(f[points[-1]])
    return points


def orbit_intervals(f: Sequence[int], N: int | None = None) -> FiniteSet:
    """Union of ``[f^{2n}(0), f^{2n+1}(0))`` cut to ``[0, N)``; ``N`` defaults to ``len(f)``."""
    N = len(f) if N is None else N
    points = orbit(f)
    members = set()
    for lo, hi in zip(points[0::2], points[1::2]):
        members.update(range(lo, min(hi, N)))
    return FiniteSet(N, {m for m in members if m < N})


def slalom_bound(S: Slalom) -> tuple[int, ...]:
    """``n -> max S(n) + 1``, and 0 at the empty block."""
    return tuple(max(b) + 1 if b else 0 for b in S.blocks)


def interval_pair_coloring(f: Sequence[int], N: int | None = None) -> PairColoring:
    """Color a pair 0 iff it lies inside one block ``[f(2k), f(2k+2))``.

    Pairs not inside any complete block get color 1.  ``N`` defaults to
    ``len(f)``.
    """
    if any(a >= b for a, b in zip(f, f[1:])):
        raise NotStrictlyIncreasing("interval coloring needs a strictly increasing function")
    N = len(f) if N is None else N
    block = [None] * N
    for k in range(0, len(f) - 2, 2):
        for x in range(f[k], min(f[k + 2], N)):
            block[x] = k

    def color(pair):
        a, b = pair
        return 0 if block[a] is not None and block[a] == block[b] else 1

    return PairColoring.from_function(N, 2, color)


def char_coloring(A: FiniteSet) -> PairColoring:
    return PairColoring(A.N, 1, tuple(0 if x in A.members else 1 for x in range(A.N)))


def restrict_coloring(pi: PairColoring, n: int) -> PairColoring:
    """Color an ``n``-set by the color of its ``pi.arity`` smallest elements."""
    if n > pi.N:
        raise ArityTooLarge(f"arity {n} exceeds universe size {pi.N}")
    if n < pi.arity:
        raise ValueError(f"cannot restrict arity {pi.arity} down to {n}")
    m = pi.arity
    return PairColoring.from_function(pi.N, n, lambda s: pi.color(s[:m]))


def lex_coloring(fs: Sequence[Sequence[int]]) -> PairColoring:
    """Pair ``{x < y}`` gets 0 iff ``(f_0(x), f_1(x), ...)`` is lex-below the same for ``y``."""
    if not fs:
        raise ValueError("need at least one function")
    _same_length(*fs)
    N = len(fs[0])
    codes = [tuple(f[x] for f in fs) for x in range(N)]
    return PairColoring.from_function(N, 2, lambda p: 0 if codes[p[0]] < codes[p[1]] else 1)


# -- chopped reals ---------------------------------------------------------

@dataclass(frozen=True)
class EngulfResult:
    holds: bool
    bad_intervals: frozenset


def _agrees(x, y, interval) -> bool:
    return all(x[i] == y[i] for i in interval)


def engulf_criterion(f: ChoppedReal, g: ChoppedReal, t: int = 0) -> EngulfResult:
    """Find the ``f``-intervals of index ``>= t`` containing no agreeing ``g``-interval.

    An ``f``-interval ``I`` is good when some ``g``-interval ``J ⊆ I`` has
    ``g|J = f|J``.  When every interval past ``t`` is good, each real
    matching ``f`` on an interval also matches ``g`` inside it.
    """
    _same_universe(f, g)
    g_intervals = g.partition.intervals
    bad = set()
    for i, I in enumerate(f.partition.intervals):
        if i < t:
            continue
        good = any(J.start >= I.start and J.stop <= I.stop and _agrees(f.bits, g.bits, J)
                   for J in g_intervals)
        if not good:
            bad.add(i)
    return EngulfResult(not bad, frozenset(bad))


def separate_bad_intervals(bad) -> frozenset:
    """Drop bad intervals adjacent to an earlier kept one, left to right."""
    kept = []
    for i in sorted(bad):
        if not kept or i > kept[-1] + 1:
            kept.append(i)
    return frozenset(kept)


def engulf_counterexample(f: ChoppedReal, g: ChoppedReal, bad) -> tuple[int, ...]:
    """A real matching ``f`` on every bad interval and ``g`` nowhere.

    Copies ``f`` on the bad intervals and ``1 - g`` elsewhere.  A
    ``g``-interval spanning two adjacent bad intervals can still agree with
    the copy of ``f``; that case raises ``StraddlingAgreement`` (passing the
    set through ``separate_bad_intervals`` first rules it out).
    """
    _same_universe(f, g)
    bad = frozenset(bad)
    if not bad:
        raise ValueError("the bad set must be nonempty")
    certified = engulf_criterion(f, g, 0).bad_intervals
    wrong = sorted(bad - certified)
    if wrong:
        raise NotActuallyBad(f"interval {wrong[0]} contains an agreeing sub-interval")
    h = [1 - b for b in g.bits]
    intervals = f.partition.intervals
    for i in bad:
        for x in intervals[i]:
            h[x] = f.bits[x]
    h = tuple(h)
    for J in g.partition.intervals:
        if _agrees(h, g.bits, J):
            raise StraddlingAgreement(
                f"g-interval [{J.start}, {J.stop}) spans bad intervals and agrees with f")
    return h


def agreement_intervals(k: ChoppedReal, h: Sequence[int]) -> list[int]:
    if len(h) != k.N:
        raise UniverseMismatch(f"real of length {len(h)} against a chopped real of length {k.N}")
    return [i for i, I in enumerate(k.partition.intervals) if _agrees(k.bits, h, I)]


def agreement_refinement(k: ChoppedReal, h: Sequence[int]) -> IntervalPartition:
    """Coarsen ``k``'s partition so every block holds exactly one agreement interval.

    A new block starts at each agreement interval after the first; the
    first block also takes everything before it and the last one the tail.
    """
    hits = agreement_intervals(k, h)
    if not hits:
        raise NoAgreement("h agrees with k on no interval")
    starts = [0] + [k.partition.boundaries[i] for i in hits[1:]]
    return IntervalPartition(tuple(starts) + (k.N,))


# -- measure ---------------------------------------------------------------

def triangular_partition(m: int) -> IntervalPartition:
    """Intervals of sizes 1, 2, ..., m."""
    if m < 1:
        raise ValueError("need at least one interval")
    return IntervalPartition(tuple(n * (n + 1) // 2 for n in range(m + 1)))


def tail_agreement_measure(n: int, m: int) -> Fraction:
    """Probability that a uniform string agrees with a fixed one on some ``I_k``, ``n <= k < m``.

    The intervals are disjoint, so the events are independent and the
    complement is a product.
    """
    if not 0 <= n < m:
        raise IndexOutOfRange(f"need 0 <= n < m, got n={n}, m={m}")
    miss = Fraction(1)
    for k in range(n, m):
        miss *= 1 - Fraction(1, 2 ** (k + 1))
    return 1 - miss


def small_intersection_fraction(A: FiniteSet, n: int) -> Fraction:
    """Fraction of subsets ``X`` of the universe with ``|X ∩ A| <= n``."""
    size = len(A)
    if n > size:
        raise ThresholdTooLarge(f"threshold {n} exceeds |A| = {size}")
    return Fraction(sum(comb(size, j) for j in range(n + 1)), 2 ** size)


# -- almost disjoint families ----------------------------------------------

def tree_code(word: str) -> int:
    """Number binary strings: empty -> 0, ``s + c`` -> ``2 code(s) + 1 + c``."""
    code = 0
    for c in word:
        code = 2 * code + 1 + int(c)
    return code


def mad_tree_family(depth: int, branches) -> dict[str, FiniteSet]:
    """Each branch maps to the codes of its prefixes of length ``0..depth``."""
    branches = list(branches)
    if len(set(branches)) != len(branches):
        raise DuplicateBranch("branches must be distinct")
    for b in branches:
        if len(b) != depth or set(b) - {"0", "1"}:
            raise ValueError(f"{b!r} is not a binary string of length {depth}")
    N = 2 ** (depth + 1) - 1
    return {b: FiniteSet(N, {tree_code(b[:i]) for i in range(depth + 1)}) for b in branches}


def common_prefix_length(a: str, b: str) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


# -- diagonal constructions ------------------------------------------------

def dominating_diagonal(family: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """``f(k) = 1 + max{g_i(k) : i < k}``, 0 at ``k = 0``.

    ``f`` strictly dominates ``g_i`` on ``(i, N)``.
    """
    if not family:
        raise ValueError("family must be nonempty")
    _same_length(*family)
    N = len(family[0])
    return tuple(0 if k == 0 else 1 + max(g[k] for g in family[:k]) for k in range(N))


def unsplit_diagonal(family: Sequence[FiniteSet], target_size: int) -> FiniteSet:
    """A set ``Z`` that, after dropping its first ``k`` picks, is inside or outside ``Y_k``.

    ``X_k`` is ``X_{k-1} ∩ Y_k`` when that still leaves room for the
    remaining picks, otherwise ``X_{k-1} \\ Y_k``; the ``k``-th pick is the
    least unused element of ``X_k``.
    """
    if not family:
        raise ValueError("family must be nonempty")
    _same_universe(*family)
    N = family[0].N
    X = set(range(N))
    picks: list[int] = []
    for step in range(target_size):
        need = target_size - step
        if step < len(family):
            Y = family[step].members
            inside, outside = X & Y, X - Y
            if len(inside - set(picks)) >= need:
                X = inside
            elif len(outside - set(picks)) >= need:
                X = outside
            else:
                raise UniverseExhausted(
                    f"step {step}: neither side of Y_{step} has {need} unused elements")
        free = sorted(X - set(picks))
        if len(free) < need:
            raise UniverseExhausted(f"step {step}: only {len(free)} unused elements left")
        picks.append(free[0])
    return FiniteSet(N, picks)


def unsplit_postcondition(family: Sequence[FiniteSet], Z: FiniteSet) -> bool:
    picks = sorted(Z.members)
    for k, Y in enumerate(family):
        tail = set(picks[k:])
        if not (tail <= Y.members or not tail & Y.members):
            return False
    return True


def ramsey_homogeneous(pi: PairColoring, universe: FiniteSet, size: int):
    """The lexicographically first ``size``-subset of ``universe`` on which ``pi`` is constant."""
    if size < 2:
        raise ValueError("size must be at least 2")
    _same_universe(pi, universe)
    points = sorted(universe.members)
    color = pi.color

    def extend(chosen, start, c):
        if len(chosen) == size:
            return chosen
        for idx in range(start, len(points)):
            p = points[idx]
            if len(points) - idx < size - len(chosen):
                return None
            if all(color((q, p)) == c for q in chosen):
                found = extend(chosen + [p], idx + 1, c)
                if found:
                    return found
        return None

    for first in range(len(points)):
        if len(points) - first < size:
            break
        p = points[first]
        best = None
        for c in (0, 1):
            found = extend([p], first + 1, c)
            if found and (best is None or found < best):
                best = found
        if best:
            return FiniteSet(pi.N, best)
    return None


def greedy_homogeneous(pi: PairColoring, points: Sequence[int]) -> list[int]:
    """A homogeneous subset of ``points`` by the pigeonhole chain from Ramsey's proof.

    Repeatedly take the least point and keep the larger color class of the
    rest; the chain members sharing the majority color are homogeneous.
    """
    rest = sorted(points)
    chain = []
    while rest:
        v, rest = rest[0], rest[1:]
        classes = ([u for u in rest if pi.color((v, u)) == 0],
                   [u for u in rest if pi.color((v, u)) == 1])
        c = 0 if len(classes[0]) >= len(classes[1]) else 1
        chain.append((v, c if rest else None))
        rest = classes[c]
    zeros = [v for v, c in chain if c != 1]
    ones = [v for v, c in chain if c != 0]
    return zeros if len(zeros) >= len(ones) else ones


def iterated_almost_homogeneous(colorings: Sequence[PairColoring], N: int,
                                min_size: int = 2) -> FiniteSet:
    """Nested homogeneous sets ``A_0 ⊇ A_1 ⊇ ...``; returns their minima plus ``A_last``.

    ``A_{k+1}`` is homogeneous for ``pi_{k+1}`` inside ``A_k`` minus its
    least element.  Every ``pi_k`` is then constant on the returned points
    from the ``k``-th minimum on.
    """
    if not colorings:
        raise ValueError("need at least one coloring")
    for pi in colorings:
        if pi.N != N or pi.arity != 2:
            raise UniverseMismatch("every coloring must be a pair coloring of [0, N)")
    pool = list(range(N))
    minima = []
    A: list[int] = []
    for k, pi in enumerate(colorings):
        A = greedy_homogeneous(pi, pool)
        if len(A) < min_size:
            raise UniverseExhausted(
                f"step {k}: largest homogeneous set found has {len(A)} < {min_size} points")
        if k < len(colorings) - 1:
            minima.append(A[0])
            pool = A[1:]
    return FiniteSet(N, set(minima) | set(A))


def iterated_postcondition(colorings: Sequence[PairColoring], H: FiniteSet) -> bool:
    points = sorted(H.members)
    for k, pi in enumerate(colorings):
        tail = points[k:]
        if len({pi.color(p) for p in combinations(tail, 2)}) > 1:
            return False
    return True


def groupwise_window_check(A: FiniteSet, g: Sequence[int], t: int,
                           horizon: int | None = None) -> bool:
    """``A`` meets ``[n, g(n))`` for every ``n`` in ``[t, horizon)`` with ``g(n) <= N``.

    ``horizon`` defaults to ``N``.
    """
    if len(g) != A.N:
        raise LengthMismatch(f"function of length {len(g)} over a universe of {A.N}")
    _check_expanding(g)
    horizon = A.N if horizon is None else horizon
    for n in range(t, horizon):
        if g[n] <= A.N and not any(x in A.members for x in range(n, g[n])):
            return False
    return True


def sigma_parity_checks(f: Sequence[int], x: FiniteSet, t: int) -> list[tuple[int, bool]]:
    """``(k, ok)`` for every orbit index where the parity argument applies.

    Needs ``f`` to dominate the enumeration ``f_x`` on ``[t, |x|)``.  For an
    orbit point ``o_k >= t`` with ``o_k < |x|`` and ``o_{k+1} <= N`` we have
    ``o_k <= f_x(o_k) < o_{k+1}``, so ``f_x(o_k)`` lies in ``σ_f`` exactly
    when ``k`` is even.
    """
    if len(f) != x.N:
        raise LengthMismatch(f"function of length {len(f)} over a universe of {x.N}")
    fx = enumerator(x)
    if not all(fx[n] < f[n] for n in range(t, len(fx))):
        raise ValueError("f does not dominate the enumeration of x past t")
    sigma = orbit_intervals(f)
    points = orbit(f)
    out = []
    for k, (lo, hi) in enumerate(zip(points, points[1:])):
        if t <= lo < len(fx) and hi <= x.N:
            out.append((k, (fx[lo] in sigma) == (k % 2 == 0)))
    return out
