"""Seeded property suites behind ``gt laws`` and ``gt models``.

Each suite returns report lines; a line starting with ``FAIL`` marks a
violated property and carries enough context (seed, case index, data) to
reproduce it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as cartesian
from math import comb

from . import models as M
from .algebra import verify_norm_laws
from .errors import GTError, StraddlingAgreement, UniverseExhausted
from .relation import random_relation

LAW_NAMES = ("product", "coproduct", "conjunction", "seq", "dual_seq")


@dataclass
class SuiteReport:
    name: str
    lines: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    failures: int = 0

    def fail(self, text):
        self.failures += 1
        self.lines.append("FAIL " + text)

    def info(self, text):
        self.lines.append(text)


# -- generators ------------------------------------------------------------

def random_set(rng: random.Random, N: int, density=0.5) -> M.FiniteSet:
    return M.FiniteSet(N, {i for i in range(N) if rng.random() < density})


def random_partition(rng: random.Random, N: int, cut=0.4) -> M.IntervalPartition:
    inner = [i for i in range(1, N) if rng.random() < cut]
    return M.IntervalPartition((0, *inner, N))


def random_chopped(rng: random.Random, N: int) -> M.ChoppedReal:
    return M.ChoppedReal(tuple(rng.randint(0, 1) for _ in range(N)), random_partition(rng, N))


def random_coloring(rng: random.Random, N: int, arity=2) -> M.PairColoring:
    return M.PairColoring(N, arity, tuple(rng.randint(0, 1) for _ in range(comb(N, arity))))


def random_slalom(rng: random.Random, N: int, spread=3) -> M.Slalom:
    return M.Slalom(tuple(frozenset(rng.sample(range(spread * n + 1), n)) for n in range(N)))


def dominating_expander(rng: random.Random, N: int, lower, t: int) -> tuple[int, ...]:
    """Strictly increasing ``f`` with ``f(n) > n`` and ``f(n) > lower(n)`` on ``[t, len(lower))``."""
    f = []
    for n in range(N):
        floor = max(n + 1, f[-1] + 1 if f else 0)
        if t <= n < len(lower):
            floor = max(floor, lower[n] + 1)
        f.append(floor + rng.randint(0, 2))
    return tuple(f)


def sigma_case(rng: random.Random, N: int, t: int):
    x = random_set(rng, N, rng.uniform(0.3, 0.9))
    if not x.members:
        x = M.FiniteSet(N, {rng.randrange(N)})
    f = dominating_expander(rng, N, M.enumerator(x), t)
    return f, x


# -- suites ----------------------------------------------------------------

def law_suite(seed: int, count: int) -> SuiteReport:
    """``count`` pairs at sides <= 6 for the cheap laws, and pairs at <= 3 for all five."""
    rep = SuiteReport("laws")
    rng = random.Random(seed)
    tally = {name: {"pass": 0, "fail": 0, "skip": 0} for name in LAW_NAMES}
    for case in range(count):
        for size, sequential in ((6, False), (3, True)):
            s1, s2 = rng.getrandbits(32), rng.getrandbits(32)
            A, B = random_relation(s1, size, size), random_relation(s2, size, size)
            report = verify_norm_laws(A, B, sequential=sequential)
            for r in report.results:
                if r.status == "skip" and r.reason == "not requested":
                    continue
                tally[r.name][r.status] += 1
                if r.status == "fail":
                    rep.fail(f"law {r.name}: case {case} seed {seed}: got {r.value}, "
                             f"expected {r.expected}; A={A.to_json()} B={B.to_json()}")
    for name in LAW_NAMES:
        t = tally[name]
        rep.info(f"law {name}: {t['pass']} pass, {t['fail']} fail, {t['skip']} skip")
    rep.summary = {"seed": seed, "count": count, "laws": tally}
    return rep


def _sigma_split(rep, rng, N, t, k, count):
    checked = 0
    for case in range(count):
        f, x = sigma_case(rng, N, t)
        for idx, ok in M.sigma_parity_checks(f, x, t):
            checked += 1
            if not ok:
                rep.fail(f"sigma parity: case {case}, orbit index {idx}, f={list(f)}, "
                         f"x={x.to_json()}")
    return {"orbit_indices_checked": checked}


def _engulf(rep, rng, N, t, k, count):
    transport = counter = straddle = 0
    reals = list(cartesian((0, 1), repeat=N))
    for case in range(count):
        f, g = random_chopped(rng, N), random_chopped(rng, N)
        res = M.engulf_criterion(f, g, t)
        if res.holds and t == 0:
            transport += 1
            for h in reals:
                if M.match_count(h, g) < M.match_count(h, f):
                    rep.fail(f"engulf transport: case {case}, h={h}, f={f.to_json()}, "
                             f"g={g.to_json()}")
                    break
        if res.bad_intervals:
            full = M.engulf_criterion(f, g, 0).bad_intervals
            try:
                M.engulf_counterexample(f, g, full)
            except StraddlingAgreement:
                straddle += 1
            Q = M.separate_bad_intervals(full)
            h = M.engulf_counterexample(f, g, Q)
            counter += 1
            if M.match_count(h, f) < len(Q) or M.match_count(h, g) != 0:
                rep.fail(f"engulf counterexample: case {case}, Q={sorted(Q)}, h={h}")
    return {"transport_cases": transport, "counterexample_cases": counter,
            "straddled_full_bad_sets": straddle}


def _slalom(rep, rng, N, t, k, count):
    for case in range(count):
        S = random_slalom(rng, N)
        fs = M.slalom_bound(S)
        for tt in range(1, N):
            if M.goes_through_past(fs, S, tt):
                rep.fail(f"slalom evasion: case {case}, t={tt}, S={S.to_json()}")
                break
    return {}


def _ramsey(rep, rng, N, t, k, count):
    size = max(3, k)
    found = 0
    universe = M.FiniteSet(N, range(N))
    for case in range(count):
        pi = random_coloring(rng, N)
        H = M.ramsey_homogeneous(pi, universe, size)
        if H is None:
            rep.info(f"ramsey: case {case}: no homogeneous {size}-set among {N} points")
            continue
        found += 1
        if M.homogeneous_past(pi, H, 0) is None:
            rep.fail(f"ramsey: case {case}: returned set {H.to_json()} is not homogeneous")
    return {"size": size, "found": found}


def _measure(rep, rng, N, t, k, count):
    top = max(2, min(N, 30))
    for m in range(1, top + 1):
        for n in range(m):
            if M.tail_agreement_measure(n, m) > Fraction(1, 2 ** n):
                rep.fail(f"measure bound: n={n}, m={m}")
    for m in range(1, min(top, 4) + 1):
        P = M.triangular_partition(m)
        ref = tuple(rng.randint(0, 1) for _ in range(P.N))
        for n in range(m):
            hits = sum(1 for s in cartesian((0, 1), repeat=P.N)
                       if any(all(s[i] == ref[i] for i in P.intervals[j]) for j in range(n, m)))
            if Fraction(hits, 2 ** P.N) != M.tail_agreement_measure(n, m):
                rep.fail(f"measure count: n={n}, m={m}")
    return {"max_m": top}


def _mad(rep, rng, N, t, k, count):
    depth = min(N, 16)
    want = min(count, 2 ** depth)
    branches = set()
    while len(branches) < want:
        branches.add("".join(rng.choice("01") for _ in range(depth)))
    family = M.mad_tree_family(depth, sorted(branches))
    for a, b in combinations(sorted(family), 2):
        if len(family[a].members & family[b].members) != M.common_prefix_length(a, b) + 1:
            rep.fail(f"mad: branches {a} and {b}")
    return {"depth": depth, "branches": want}


def _diagonal(rep, rng, N, t, k, count):
    for case in range(count):
        fam = [tuple(rng.randint(0, 3 * N) for _ in range(N)) for _ in range(rng.randint(1, 20))]
        f = M.dominating_diagonal(fam)
        for i, g in enumerate(fam):
            if i + 1 < N and not M.dominates_past(f, g, i + 1):
                rep.fail(f"diagonal: case {case}, member {i} not dominated past {i}")
    return {}


def _unsplit(rep, rng, N, t, k, count):
    exhausted = 0
    for case in range(count):
        fam = [random_set(rng, N) for _ in range(rng.randint(1, 6))]
        try:
            Z = M.unsplit_diagonal(fam, max(1, k))
        except UniverseExhausted:
            exhausted += 1
            continue
        if not M.unsplit_postcondition(fam, Z):
            rep.fail(f"unsplit: case {case}, Z={Z.to_json()}")
    return {"exhausted": exhausted}


def _iterated(rep, rng, N, t, k, count):
    exhausted = 0
    for case in range(count):
        cols = [random_coloring(rng, N) for _ in range(max(1, k))]
        try:
            H = M.iterated_almost_homogeneous(cols, N)
        except UniverseExhausted:
            exhausted += 1
            continue
        if not M.iterated_postcondition(cols, H):
            rep.fail(f"iterated-hom: case {case}, H={H.to_json()}")
    return {"exhausted": exhausted}


def _lex(rep, rng, N, t, k, count):
    universe = M.FiniteSet(N, range(N))
    for case in range(count):
        fs = [tuple(rng.randint(0, 1) for _ in range(N)) for _ in range(max(1, k))]
        L = M.lex_coloring(fs)
        H = M.ramsey_homogeneous(L, universe, 3) if N >= 6 else None
        if H is None:
            continue
        codes = [tuple(f[x] for f in fs) for x in sorted(H.members)]
        color = M.homogeneous_past(L, H, 0)
        increasing = all(a < b for a, b in zip(codes, codes[1:]))
        if (color == 0) != increasing:
            rep.fail(f"lex: case {case}, H={H.to_json()}, fs={fs}")
    return {}


def _groupwise(rep, rng, N, t, k, count):
    applicable = 0
    for case in range(count):
        A = random_set(rng, N, rng.uniform(0.3, 0.9))
        if not A.members:
            continue
        fa = M.enumerator(A)
        g = dominating_expander(rng, N, fa, t)
        applicable += 1
        if not M.groupwise_window_check(A, g, t, horizon=len(fa)):
            rep.fail(f"groupwise: case {case}, A={A.to_json()}, g={list(g)}")
    return {"applicable": applicable}


MODEL_SUITES = {
    "sigma-split": (_sigma_split, 256),
    "engulf": (_engulf, 8),
    "slalom": (_slalom, 16),
    "ramsey": (_ramsey, 6),
    "measure": (_measure, 30),
    "mad": (_mad, 10),
    "diagonal": (_diagonal, 32),
    "unsplit": (_unsplit, 64),
    "iterated-hom": (_iterated, 60),
    "lex": (_lex, 8),
    "groupwise": (_groupwise, 64),
}


def model_suite(name: str, seed: int, n: int | None = None, t: int = 0, k: int = 1,
                count: int = 100) -> SuiteReport:
    fn, default_n = MODEL_SUITES[name]
    N = default_n if n is None else n
    if name == "engulf" and N > 12:
        raise GTError("engulf enumerates every real in 2^N; keep --n at most 12")
    M.TruncationContext(N, t, k)
    rep = SuiteReport(name)
    extra = fn(rep, random.Random(seed), N, t, k, count)
    rep.info(f"{name}: {count} cases, N={N}, t={t}, k={k}, {rep.failures} failures")
    rep.summary = {"suite": name, "seed": seed, "N": N, "t": t, "k": k, "count": count,
                   "failures": rep.failures, **extra}
    return rep
