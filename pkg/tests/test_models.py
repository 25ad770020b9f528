from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import assume, given, settings, strategies as st

import oracles as O
from gtcalc import models as M
from gtcalc.errors import (ArityTooLarge, DuplicateBranch, EmptySet, IndexOutOfRange,
                           LengthMismatch, NoAgreement, NotActuallyBad, NotStrictlyExpanding,
                           NotStrictlyIncreasing, StraddlingAgreement, ThresholdTooLarge,
                           TooFewElements, UniverseExhausted, UniverseMismatch)

P = M.IntervalPartition


def S(N, members):
    return M.FiniteSet(N, members)


def chopped(bits, boundaries):
    return M.ChoppedReal(tuple(int(c) for c in bits), P(boundaries))


@st.composite
def partitions(draw, N):
    inner = draw(st.sets(st.integers(1, N - 1))) if N > 1 else set()
    return P((0, *sorted(inner), N))


@st.composite
def chopped_reals(draw, N):
    bits = tuple(draw(st.lists(st.integers(0, 1), min_size=N, max_size=N)))
    return M.ChoppedReal(bits, draw(partitions(N)))


@st.composite
def expanders(draw, N, lo=1):
    """Strictly increasing f on [0, N) with f(n) > n."""
    f, prev = [], -1
    for n in range(N):
        v = max(n + lo, prev + 1) + draw(st.integers(0, 3))
        f.append(v)
        prev = v
    return tuple(f)


# -- types -------------------------------------------------------------------

def test_context_invariants():
    M.TruncationContext(10, 3, 2)
    with pytest.raises(ValueError):
        M.TruncationContext(5, 5, 1)
    with pytest.raises(ValueError):
        M.TruncationContext(5, 0, 0)


def test_type_invariants():
    with pytest.raises(UniverseMismatch):
        S(3, {3})
    with pytest.raises(ValueError):
        P((0, 2, 2, 4))
    with pytest.raises(ValueError):
        P((1, 4))
    with pytest.raises(UniverseMismatch):
        M.ChoppedReal((0, 1), P((0, 3)))
    with pytest.raises(ValueError):
        M.Slalom((frozenset(), frozenset({1, 2})))
    with pytest.raises(ValueError):
        M.PairColoring(4, 2, (0,) * 5)


def test_serialization():
    assert S(6, {4, 1}).to_json() == [1, 4]
    assert P((0, 2, 5)).to_json() == [0, 2, 5]
    assert M.Slalom((frozenset(), frozenset({3}))).to_json() == [[], [3]]
    pi = M.PairColoring.from_function(3, 2, lambda p: p[0])
    # colex order: {0,1}, {0,2}, {1,2}
    assert pi.to_json() == {"N": 3, "arity": 2, "colors": [0, 0, 1]}
    assert chopped("01", (0, 1, 2)).to_json() == {"bits": "01", "partition": [0, 1, 2]}


@given(st.integers(2, 7), st.integers(1, 3), st.data())
def test_coloring_colex_lookup(N, arity, data):
    assume(arity <= N)
    pi = M.PairColoring.from_function(N, arity, lambda s: sum(s) % 2)
    subset = data.draw(st.sets(st.integers(0, N - 1), min_size=arity, max_size=arity))
    assert pi.color(subset) == sum(subset) % 2


# -- eventual relations -------------------------------------------------------

def test_dominates_past():
    f = tuple(range(8))
    assert not any(M.dominates_past(f, f, t) for t in range(8))
    assert M.dominates_past(tuple(n + 1 for n in range(8)), f, 0)
    alt, one = tuple(n % 2 for n in range(8)), (1,) * 8
    assert not M.dominates_past(alt, one, 0) and not M.dominates_past(one, alt, 0)
    with pytest.raises(LengthMismatch):
        M.dominates_past((1, 2), (1,), 0)


def test_eventually_different():
    assert M.eventually_different_past((0, 1, 2), (0, 2, 3), 1)
    assert not M.eventually_different_past((0, 1, 2), (0, 2, 3), 0)


def test_partition_dominates_past():
    J = P((0, 1, 2, 3, 4, 5, 6))
    assert M.partition_dominates_past(J, J, 0)
    I = P((0, 2, 4, 6))
    assert M.partition_dominates_past(I, J, 0)
    assert not M.partition_dominates_past(J, I, 0)
    assert not M.partition_dominates_past(P((0, 1, 3, 6)), P((0, 2, 4, 6)), 1)
    assert M.partition_dominates_past(P((0, 1, 3, 6)), P((0, 2, 3, 6)), 1)
    with pytest.raises(UniverseMismatch):
        M.partition_dominates_past(P((0, 3)), P((0, 4)), 0)


@given(st.integers(2, 12).flatmap(lambda N: st.tuples(partitions(N), partitions(N))),
       st.integers(0, 4))
def test_partition_domination_matches_scan(pair, t):
    I, J = pair
    expected = all(any(a.start >= b.start and a.stop <= b.stop for b in I.intervals)
                   for a in J.intervals[t:])
    assert M.partition_dominates_past(I, J, t) == expected


def test_splits_with():
    N = 10
    full, evens = S(N, range(N)), S(N, range(0, N, 2))
    assert not M.splits_with(evens, evens, 1)
    assert M.splits_with(evens, full, N // 2)
    assert not M.splits_with(full, evens, 1)
    with pytest.raises(UniverseMismatch):
        M.splits_with(S(3, {1}), S(4, {1}), 1)


def test_goes_through_past():
    blocks = tuple(frozenset(range(n, 2 * n)) for n in range(6))
    sl = M.Slalom(blocks)
    f = (0,) + tuple(n for n in range(1, 6))
    assert M.goes_through_past(f, sl, 1)
    assert not M.goes_through_past(f, sl, 0)
    bound = M.slalom_bound(sl)
    assert not any(M.goes_through_past(bound, sl, t) for t in range(6))
    with pytest.raises(LengthMismatch):
        M.goes_through_past((0, 1), sl, 1)


def test_match_count():
    c = chopped("011010", (0, 2, 4, 6))
    assert M.match_count(c.bits, c) == 3
    assert M.match_count(tuple(1 - b for b in c.bits), c) == 0
    assert M.match_count((0, 1, 0, 0, 1, 0), c) == 2
    with pytest.raises(UniverseMismatch):
        M.match_count((0, 1), c)


def test_homogeneous_past():
    const = M.PairColoring.from_function(6, 2, lambda p: 1)
    assert M.homogeneous_past(const, S(6, range(6)), 0) == 1
    edge = {(i, (i + 1) % 5) for i in range(5)}
    edge = {tuple(sorted(e)) for e in edge}
    pent = M.PairColoring.from_function(5, 2, lambda p: 0 if p in edge else 1)
    assert M.homogeneous_past(pent, S(5, range(5)), 0) is None
    late = M.PairColoring.from_function(8, 2, lambda p: 0 if p[0] >= 3 else p[1] % 2)
    assert M.homogeneous_past(late, S(8, range(8)), 3) == 0
    assert M.homogeneous_past(late, S(8, range(8)), 0) is None
    with pytest.raises(TooFewElements):
        M.homogeneous_past(const, S(6, {5}), 0)


# -- functions built from sets ---------------------------------------------

def test_enumerator():
    assert M.enumerator(S(10, {9, 2, 5})) == (2, 5, 9)
    assert M.enumerator(S(4, range(4))) == (0, 1, 2, 3)
    with pytest.raises(EmptySet):
        M.enumerator(S(4, ()))


@given(st.sets(st.integers(0, 30), min_size=1))
def test_enumerator_increasing(xs):
    e = M.enumerator(S(31, xs))
    assert list(e) == sorted(xs) and all(a < b for a, b in zip(e, e[1:]))


def test_orbit_intervals():
    N = 20
    assert M.orbit_intervals(tuple(n + 1 for n in range(N))).members == set(range(0, N, 2))
    sigma = M.orbit_intervals(tuple(2 * n + 1 for n in range(40)))
    assert sigma.members == {0} | set(range(3, 7)) | set(range(15, 31))
    with pytest.raises(NotStrictlyExpanding):
        M.orbit_intervals(tuple(range(5)))
    with pytest.raises(NotStrictlyExpanding):
        M.orbit_intervals((2, 2, 3))


@settings(max_examples=200)
@given(st.integers(2, 40).flatmap(lambda N: st.tuples(st.just(N), expanders(N))))
def test_orbit_matches_oracle(case):
    N, f = case
    sigma = M.orbit_intervals(f)
    assert all((v in sigma) == O.in_sigma(v, f) for v in range(N))


@settings(max_examples=200)
@given(st.integers(4, 60), st.data())
def test_sigma_parity_law(N, data):
    xs = data.draw(st.sets(st.integers(0, N - 1), min_size=1))
    t = data.draw(st.integers(0, N - 1))
    fx = sorted(xs)
    f, prev = [], -1
    for n in range(N):
        v = max(n + 1, prev + 1, fx[n] + 1 if t <= n < len(fx) else 0)
        v += data.draw(st.integers(0, 2))
        f.append(v)
        prev = v
    checks = M.sigma_parity_checks(tuple(f), S(N, xs), t)
    assert all(ok for _, ok in checks)
    pts = O.orbit_points(f)
    expected = [k for k in range(len(pts) - 1)
                if t <= pts[k] < len(fx) and pts[k + 1] <= N]
    assert [k for k, _ in checks] == expected


def test_slalom_bound():
    blocks = [frozenset(), frozenset({4}), frozenset({3, 7})]
    assert M.slalom_bound(M.Slalom(tuple(blocks))) == (0, 5, 8)
    tight = M.Slalom(tuple(frozenset(range(n)) for n in range(6)))
    assert M.slalom_bound(tight) == tuple(range(6))


@st.composite
def slaloms(draw, max_n=8):
    N = draw(st.integers(1, max_n))
    return M.Slalom(tuple(frozenset(draw(st.sets(st.integers(0, 3 * n + 2), min_size=n,
                                                  max_size=n))) for n in range(N)))


@given(slaloms())
def test_slalom_evasion(sl):
    bound = M.slalom_bound(sl)
    assert not any(M.goes_through_past(bound, sl, t) for t in range(sl.N))


def test_interval_pair_coloring():
    f = (1, 2, 4, 8, 16, 32)
    pi = M.interval_pair_coloring(f, 32)
    assert pi.color({2, 3}) == 0
    assert pi.color({1, 5}) == 1
    assert pi.color({0, 9}) == 1
    assert pi.color({4, 15}) == 0
    with pytest.raises(NotStrictlyIncreasing):
        M.interval_pair_coloring((1, 1, 2))


@st.composite
def increasing(draw, length, start=0):
    out, v = [], start + draw(st.integers(0, 2))
    for _ in range(length):
        out.append(v)
        v += draw(st.integers(1, 4))
    return tuple(out)


@settings(max_examples=150)
@given(st.integers(4, 9).flatmap(increasing), st.data())
def test_pi_f_laws(f, data):
    N = f[-1] + 3
    pi = M.interval_pair_coloring(f, N)
    blocks = [range(f[k], f[k + 2]) for k in range(0, len(f) - 2, 2)]
    covered = [x for b in blocks for x in b]
    H = data.draw(st.sets(st.sampled_from(covered), min_size=2, max_size=6))
    color = M.homogeneous_past(pi, S(N, H), 0)
    inside_one = any(set(H) <= set(b) for b in blocks)
    # a 0-homogeneous set lies in one block, and a set in one block is 0-homogeneous
    assert (color == 0) == inside_one
    if color == 1:
        fh = M.enumerator(S(N, H))
        assert all(fh[n] > f[n] for n in range(1, min(len(fh), len(f))))


def test_char_coloring():
    evens = S(10, range(0, 10, 2))
    chi = M.char_coloring(evens)
    assert chi.arity == 1 and chi.color({4}) == 0 and chi.color({3}) == 1
    assert set(M.char_coloring(S(5, ())).colors) == {1}


@given(st.integers(2, 12), st.data())
def test_char_law(N, data):
    A = S(N, data.draw(st.sets(st.integers(0, N - 1))))
    B = S(N, data.draw(st.sets(st.integers(0, N - 1), min_size=1)))
    t = data.draw(st.integers(0, max(B.members)))
    tail = {x for x in B.members if x >= t}
    got = M.homogeneous_past(M.char_coloring(A), B, t)
    assert (got is not None) == (tail <= A.members or not tail & A.members)
    assert (got is not None) == (not M.splits_with(A, B.above(t), 1))


def test_restrict_coloring():
    pi = M.PairColoring.from_function(6, 2, lambda p: (p[0] + p[1]) % 2)
    assert M.restrict_coloring(pi, 2) == pi
    const = M.PairColoring.from_function(6, 2, lambda p: 1)
    assert set(M.restrict_coloring(const, 4).colors) == {1}
    with pytest.raises(ArityTooLarge):
        M.restrict_coloring(pi, 7)


@settings(max_examples=100)
@given(st.integers(4, 8), st.integers(2, 4), st.data())
def test_restriction_law(N, n, data):
    assume(n <= N)
    colors = data.draw(st.lists(st.integers(0, 1), min_size=N * (N - 1) // 2,
                                max_size=N * (N - 1) // 2))
    pi = M.PairColoring(N, 2, tuple(colors))
    pn = M.restrict_coloring(pi, n)
    H = sorted(data.draw(st.sets(st.integers(0, N - 1), min_size=n)))
    if M.homogeneous_past(pn, S(N, H), 0) is not None:
        # only pairs that open some n-subset of H are constrained
        head = H[:len(H) - (n - 2)]
        if len(head) >= 2:
            assert M.homogeneous_past(pi, S(N, head), 0) is not None


def test_restriction_needs_room_above():
    pi = M.PairColoring(4, 2, (0, 0, 1, 0, 0, 0))
    full = S(4, range(4))
    assert M.homogeneous_past(M.restrict_coloring(pi, 4), full, 0) is not None
    assert M.homogeneous_past(pi, full, 0) is None


def test_lex_coloring():
    assert M.lex_coloring([(0, 1), (1, 0)]).color({0, 1}) == 0
    assert set(M.lex_coloring([(1,) * 5, (0,) * 5]).colors) == {1}
    step = (0, 0, 0, 1, 1)
    L = M.lex_coloring([step])
    for a, b in combinations(range(5), 2):
        assert L.color({a, b}) == (0 if step[a] < step[b] else 1)
    with pytest.raises(LengthMismatch):
        M.lex_coloring([(0, 1), (0,)])


@settings(max_examples=100)
@given(st.integers(3, 9), st.integers(1, 3), st.data())
def test_lex_law(N, m, data):
    fs = [tuple(data.draw(st.lists(st.integers(0, 1), min_size=N, max_size=N)))
          for _ in range(m)]
    L = M.lex_coloring(fs)
    H = sorted(data.draw(st.sets(st.integers(0, N - 1), min_size=2)))
    if M.homogeneous_past(L, S(N, H), 0) == 0:
        codes = [tuple(f[x] for f in fs) for x in H]
        assert all(a < b for a, b in zip(codes, codes[1:]))
        assert all(fs[0][a] <= fs[0][b] for a, b in zip(H, H[1:]))


# -- chopped reals -------------------------------------------------------------

def test_engulf_criterion_examples():
    f = chopped("0110", (0, 2, 4))
    assert M.engulf_criterion(f, f, 0) == M.EngulfResult(True, frozenset())
    finer = chopped("0110", (0, 1, 2, 3, 4))
    assert M.engulf_criterion(f, finer, 0).holds
    comp = chopped("1001", (0, 2, 4))
    assert M.engulf_criterion(f, comp, 0).bad_intervals == {0, 1}
    assert M.engulf_criterion(f, comp, 1).bad_intervals == {1}


@settings(max_examples=300)
@given(st.integers(1, 9).flatmap(lambda N: st.tuples(chopped_reals(N), chopped_reals(N))))
def test_engulf_transport_and_counterexample(pair):
    f, g = pair
    res = M.engulf_criterion(f, g, 0)
    fb, fp, gb, gp = f.bits, f.partition.boundaries, g.bits, g.partition.boundaries
    assert set(res.bad_intervals) == O.bad_blocks(fb, fp, gb, gp)
    if res.holds:
        for h in product((0, 1), repeat=f.N):
            assert M.match_count(h, g) >= M.match_count(h, f)
    else:
        Q = M.separate_bad_intervals(res.bad_intervals)
        assert Q and Q <= res.bad_intervals
        assert all(b - a > 1 for a, b in zip(sorted(Q), sorted(Q)[1:]))
        h = M.engulf_counterexample(f, g, Q)
        assert O.matches(h, fb, fp) >= len(Q) and O.matches(h, gb, gp) == 0
        for i in Q:
            lo, hi = fp[i], fp[i + 1]
            assert h[lo:hi] == fb[lo:hi]


def test_engulf_counterexample_single_and_all():
    f = chopped("0011", (0, 2, 4))
    g = chopped("0100", (0, 1, 2, 4))
    assert M.engulf_criterion(f, g, 0).bad_intervals == {1}
    h = M.engulf_counterexample(f, g, {1})
    assert M.match_count(h, f) == 1 and M.match_count(h, g) == 0

    f = chopped("010", (0, 1, 2, 3))
    g = chopped("101", (0, 1, 2, 3))
    h = M.engulf_counterexample(f, g, {0, 1, 2})
    assert h == f.bits and M.match_count(h, g) == 0


def test_engulf_counterexample_rejects_good_interval():
    f = chopped("0011", (0, 2, 4))
    g = chopped("0000", (0, 1, 2, 4))
    with pytest.raises(NotActuallyBad):
        M.engulf_counterexample(f, g, {0, 1})
    with pytest.raises(ValueError):
        M.engulf_counterexample(f, g, set())


def test_adjacent_bad_intervals_can_be_straddled():
    # both singleton intervals are bad, yet the g-interval [0,2) agrees with any
    # real that copies f on both, so no counterexample for the full bad set exists
    f = chopped("00", (0, 1, 2))
    g = chopped("00", (0, 2))
    bad = M.engulf_criterion(f, g, 0).bad_intervals
    assert bad == {0, 1}
    with pytest.raises(StraddlingAgreement):
        M.engulf_counterexample(f, g, bad)
    assert not any(M.match_count(h, f) >= 2 and M.match_count(h, g) == 0
                   for h in product((0, 1), repeat=2))
    h = M.engulf_counterexample(f, g, M.separate_bad_intervals(bad))
    assert M.match_count(h, f) >= 1 and M.match_count(h, g) == 0


def test_agreement_refinement_examples():
    k = chopped("01100", (0, 1, 3, 4, 5))
    assert M.agreement_refinement(k, k.bits) == k.partition
    h = (0, 0, 0, 1, 1)
    assert M.agreement_intervals(k, h) == [0]
    assert M.agreement_refinement(k, h) == P((0, 5))
    h = (0, 0, 0, 0, 1)
    assert M.agreement_intervals(k, h) == [0, 2]
    assert M.agreement_refinement(k, h) == P((0, 3, 5))
    with pytest.raises(NoAgreement):
        M.agreement_refinement(k, (1, 0, 0, 1, 1))


@settings(max_examples=300)
@given(st.integers(2, 10).flatmap(lambda N: st.tuples(chopped_reals(N), st.data())))
def test_refinement_law(case):
    k, data = case
    N = k.N
    h = tuple(data.draw(st.lists(st.integers(0, 1), min_size=N, max_size=N)))
    hits = M.agreement_intervals(k, h)
    assume(hits)
    star = M.agreement_refinement(k, h)
    # each block holds exactly one agreement interval of k's partition
    for block in star.intervals:
        inside = [i for i in hits
                  if k.partition.intervals[i].start >= block.start
                  and k.partition.intervals[i].stop <= block.stop]
        assert len(inside) == 1
    # coarsen past block t to get a dominating partition
    t = data.draw(st.integers(0, len(star) - 1))
    start = star.boundaries[t]
    early = data.draw(st.sets(st.integers(1, start - 1))) if start > 1 else set()
    late = {b for b in star.boundaries[t + 1:-1] if data.draw(st.booleans())}
    Py = P(tuple(sorted({0, N} | early | ({start} if start else set()) | late)))
    assert M.partition_dominates_past(Py, star, t)
    t_y = Py.index_of(start)
    assert M.engulf_criterion(M.ChoppedReal(h, Py), k, t_y).holds


# -- measure ---------------------------------------------------------------

def test_triangular_partition():
    assert M.triangular_partition(3).intervals == [range(0, 1), range(1, 3), range(3, 6)]
    assert M.triangular_partition(1).intervals == [range(0, 1)]
    assert all(len(I) == n + 1 for n, I in enumerate(M.triangular_partition(9).intervals))
    with pytest.raises(ValueError):
        M.triangular_partition(0)


def test_tail_agreement_measure_examples():
    assert M.tail_agreement_measure(0, 2) == Fraction(5, 8)
    assert M.tail_agreement_measure(1, 3) == Fraction(11, 32)
    with pytest.raises(IndexOutOfRange):
        M.tail_agreement_measure(3, 3)


def test_small_intersection_fraction():
    A = S(4, range(4))
    assert M.small_intersection_fraction(A, 0) == Fraction(1, 16)
    assert M.small_intersection_fraction(A, 1) == Fraction(5, 16)
    with pytest.raises(ThresholdTooLarge):
        M.small_intersection_fraction(A, 5)
    values = [M.small_intersection_fraction(S(12, range(a)), 2) for a in range(2, 12)]
    assert all(x > y for x, y in zip(values, values[1:]))


@given(st.integers(1, 6), st.data())
def test_small_intersection_by_counting(N, data):
    A = S(N, data.draw(st.sets(st.integers(0, N - 1))))
    n = data.draw(st.integers(0, len(A)))
    hits = sum(1 for X in range(1 << N) if sum(1 for a in A.members if X >> a & 1) <= n)
    assert M.small_intersection_fraction(A, n) == Fraction(hits, 1 << N)


# -- almost disjoint families ----------------------------------------------

def test_tree_code():
    assert [M.tree_code(w) for w in ("", "0", "1", "00", "01", "10")] == [0, 1, 2, 3, 4, 5]


def test_mad_tree_family():
    fam = M.mad_tree_family(3, ["000", "010", "100"])
    assert fam["000"].members & fam["010"].members == {M.tree_code(""), M.tree_code("0")}
    assert fam["000"].members & fam["100"].members == {0}
    assert len(fam["000"].members) == 4
    with pytest.raises(DuplicateBranch):
        M.mad_tree_family(2, ["01", "01"])
    with pytest.raises(ValueError):
        M.mad_tree_family(2, ["012"])


@given(st.integers(1, 8), st.data())
def test_mad_law(depth, data):
    word = st.text("01", min_size=depth, max_size=depth)
    branches = data.draw(st.lists(word, min_size=2, max_size=6, unique=True))
    fam = M.mad_tree_family(depth, branches)
    for a, b in combinations(branches, 2):
        assert len(fam[a].members & fam[b].members) == O.lcp(a, b) + 1


# -- diagonal constructions ------------------------------------------------

def test_dominating_diagonal():
    assert M.dominating_diagonal([tuple(range(6))]) == (0, 2, 3, 4, 5, 6)
    assert M.dominating_diagonal([(0,) * 5, (0,) * 5]) == (0, 1, 1, 1, 1)
    with pytest.raises(LengthMismatch):
        M.dominating_diagonal([(1, 2), (1,)])


@given(st.integers(2, 15), st.data())
def test_diagonal_domination(N, data):
    fam = data.draw(st.lists(st.lists(st.integers(0, 50), min_size=N, max_size=N),
                             min_size=1, max_size=20))
    f = M.dominating_diagonal([tuple(g) for g in fam])
    for i, g in enumerate(fam):
        if i + 1 < N:
            assert M.dominates_past(f, tuple(g), i + 1)


def test_unsplit_diagonal_trace():
    N = 64
    Y0, Y1 = S(N, range(0, N, 2)), S(N, range(0, N, 4))
    Z = M.unsplit_diagonal([Y0, Y1], 5)
    picks = sorted(Z.members)
    assert len(picks) == 5 and set(picks[1:]) <= Y1.members and set(picks) <= Y0.members
    assert M.unsplit_postcondition([Y0, Y1], Z)


def test_unsplit_single_and_exhausted():
    Y = S(10, {1, 4, 7})
    Z = M.unsplit_diagonal([Y], 3)
    assert Z.members <= Y.members or not Z.members & Y.members
    with pytest.raises(UniverseExhausted):
        M.unsplit_diagonal([S(3, {0})], 4)


@settings(max_examples=150)
@given(st.integers(4, 40), st.data())
def test_unsplit_postcondition(N, data):
    fam = [S(N, data.draw(st.sets(st.integers(0, N - 1))))
           for _ in range(data.draw(st.integers(1, 5)))]
    size = data.draw(st.integers(1, 6))
    try:
        Z = M.unsplit_diagonal(fam, size)
    except UniverseExhausted:
        return
    assert len(Z) == size
    picks = sorted(Z.members)
    for k, Y in enumerate(fam):
        tail = set(picks[k:])
        assert tail <= Y.members or not tail & Y.members


def test_ramsey_homogeneous():
    const = M.PairColoring.from_function(7, 2, lambda p: 0)
    assert M.ramsey_homogeneous(const, S(7, range(7)), 4).members == {0, 1, 2, 3}
    edge = {tuple(sorted((i, (i + 1) % 5))) for i in range(5)}
    pent = M.PairColoring.from_function(5, 2, lambda p: 0 if p in edge else 1)
    assert M.ramsey_homogeneous(pent, S(5, range(5)), 3) is None
    with pytest.raises(ValueError):
        M.ramsey_homogeneous(const, S(7, range(7)), 1)


@settings(max_examples=100)
@given(st.integers(3, 7), st.integers(2, 4), st.data())
def test_ramsey_lex_first(N, size, data):
    colors = data.draw(st.lists(st.integers(0, 1), min_size=N * (N - 1) // 2,
                                max_size=N * (N - 1) // 2))
    pi = M.PairColoring(N, 2, tuple(colors))
    got = M.ramsey_homogeneous(pi, S(N, range(N)), size)
    first = next((c for c in combinations(range(N), size) if O.homogeneous(pi.color, c)), None)
    assert (got is None) == (first is None)
    if got is not None:
        assert tuple(sorted(got.members)) == first


def test_iterated_single_coloring():
    pi = M.PairColoring.from_function(12, 2, lambda p: (p[0] + p[1]) % 2)
    H = M.iterated_almost_homogeneous([pi], 12)
    assert len(H) >= 2 and M.homogeneous_past(pi, H, 0) is not None


def test_iterated_constant_colorings():
    c0 = M.PairColoring.from_function(10, 2, lambda p: 0)
    c1 = M.PairColoring.from_function(10, 2, lambda p: 1)
    assert M.iterated_almost_homogeneous([c0, c1], 10).members == set(range(10))


def test_iterated_random_at_200():
    import random
    rng = random.Random(200)
    cols = [M.PairColoring(200, 2, tuple(rng.randint(0, 1) for _ in range(200 * 199 // 2)))
            for _ in range(2)]
    H = M.iterated_almost_homogeneous(cols, 200)
    assert M.iterated_postcondition(cols, H)
    pts = sorted(H.members)
    assert O.homogeneous(cols[0].color, pts) and O.homogeneous(cols[1].color, pts[1:])


def test_iterated_exhausted():
    pi = M.PairColoring.from_function(3, 2, lambda p: 0)
    with pytest.raises(UniverseExhausted):
        M.iterated_almost_homogeneous([pi] * 4, 3)


def test_groupwise_window_check():
    N = 12
    evens = S(N, range(0, N, 2))
    g2 = tuple(n + 2 for n in range(N))
    assert M.groupwise_window_check(evens, g2, 0)
    assert not M.groupwise_window_check(S(N, {0}), g2, 1)
    with pytest.raises(NotStrictlyExpanding):
        M.groupwise_window_check(evens, tuple(range(N)), 0)


@settings(max_examples=150)
@given(st.integers(3, 30), st.data())
def test_groupwise_from_domination(N, data):
    A = S(N, data.draw(st.sets(st.integers(0, N - 1), min_size=1)))
    fa = M.enumerator(A)
    t = data.draw(st.integers(0, N - 1))
    g, prev = [], -1
    for n in range(N):
        v = max(n + 1, prev + 1, fa[n] + 1 if t <= n < len(fa) else 0)
        g.append(v + data.draw(st.integers(0, 2)))
        prev = g[-1]
    g = tuple(g)
    assert M.dominates_past(g[:len(fa)], fa, min(t, len(fa) - 1)) or t >= len(fa)
    assert M.groupwise_window_check(A, g, t, horizon=len(fa))


def test_tail_agreement_measure_bound():
    for m in range(2, 31):
        for n in range(m):
            assert M.tail_agreement_measure(n, m) <= Fraction(1, 2 ** n)
