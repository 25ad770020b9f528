"""Binary constructions on relations and their norm laws.

Composite labels are structured strings: ``L:a`` / ``R:b`` for the two
sides of a disjoint union, ``(x,y)`` for pairs and ``f=[b0,b1]`` for a map
given by its value table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .errors import SearchSpaceTooLarge
from .morphism import Morphism
from .relation import FiniteRelation, NormValue, dual, norm, make_relation

SEQ_LIMIT = 10**5
SIGMA_LIMIT = 10**5


@dataclass(frozen=True)
class TaggedLabel:
    side: str  # "L" or "R"
    inner: str

    def __post_init__(self):
        if self.side not in ("L", "R"):
            raise ValueError(f"side must be 'L' or 'R', got {self.side!r}")

    def encode(self) -> str:
        return f"{self.side}:{self.inner}"

    @classmethod
    def decode(cls, text: str) -> "TaggedLabel":
        side, sep, inner = text.partition(":")
        if not sep:
            raise ValueError(f"{text!r} is not a tagged label")
        return cls(side, inner)


def pair_label(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


def map_label(values) -> str:
    return "f=[" + ",".join(values) + "]"


def product(A: FiniteRelation, B: FiniteRelation) -> FiniteRelation:
    problems = [TaggedLabel("L", a).encode() for a in A.problems] + \
               [TaggedLabel("R", b).encode() for b in B.problems]
    solutions = [pair_label(x, y) for x in A.solutions for y in B.solutions]
    nb = len(B.solutions)
    rows = []
    for row in A.incidence:
        rows.append([row[k // nb] for k in range(len(solutions))])
    for row in B.incidence:
        rows.append([row[k % nb] for k in range(len(solutions))])
    return make_relation(problems, solutions, rows)


def coproduct(A: FiniteRelation, B: FiniteRelation) -> FiniteRelation:
    return dual(product(dual(A), dual(B)))


def conjunction(A: FiniteRelation, B: FiniteRelation) -> FiniteRelation:
    problems = [pair_label(x, y) for x in A.problems for y in B.problems]
    solutions = [pair_label(a, b) for a in A.solutions for b in B.solutions]
    rows = [[A.incidence[i][j] and B.incidence[k][l]
             for j in range(len(A.solutions)) for l in range(len(B.solutions))]
            for i in range(len(A.problems)) for k in range(len(B.problems))]
    return make_relation(problems, solutions, rows)


def _guard(size, limit, what):
    if size > limit:
        raise SearchSpaceTooLarge(f"{what} needs {size} problems, limit is {limit}")


def seq_composition(A: FiniteRelation, B: FiniteRelation, limit=SEQ_LIMIT) -> FiniteRelation:
    """Problems ``(x, f)`` with ``f: A+ -> B-``; ``(a, b)`` solves it iff ``x A a`` and ``f(a) B b``."""
    na, nb = len(A.solutions), len(B.solutions)
    _guard(len(B.problems) ** na * len(A.problems), limit, "sequential composition")
    tables = list(cartesian(range(len(B.problems)), repeat=na))
    problems, rows = [], []
    for i, x in enumerate(A.problems):
        for table in tables:
            problems.append(pair_label(x, map_label(B.problems[t] for t in table)))
            rows.append([A.incidence[i][j] and B.incidence[table[j]][l]
                         for j in range(na) for l in range(nb)])
    solutions = [pair_label(a, b) for a in A.solutions for b in B.solutions]
    return make_relation(problems, solutions, rows)


def dual_seq_composition(A: FiniteRelation, B: FiniteRelation, limit=SEQ_LIMIT) -> FiniteRelation:
    return dual(seq_composition(dual(A), dual(B), limit))


def sigma_power(A: FiniteRelation, k: int, limit=SIGMA_LIMIT) -> FiniteRelation:
    """k-tuples of problems, solved by a single solution solving every coordinate."""
    _guard(len(A.problems) ** k, limit, "sigma power")
    tuples = list(cartesian(range(len(A.problems)), repeat=k))
    masks = A.row_masks
    problems, rows = [], []
    for tup in tuples:
        problems.append(pair_label(*(A.problems[i] for i in tup)))
        joint = -1
        for i in tup:
            joint &= masks[i]
        rows.append([bool(joint >> j & 1) for j in range(len(A.solutions))])
    return make_relation(problems, A.solutions, rows)


def sigma_morphism(A: FiniteRelation, k: int) -> Morphism:
    """``A_sigma^k -> A``: constant tuples on problems, identity on solutions."""
    S = sigma_power(A, k)
    return Morphism(S, A, {p: pair_label(*[p] * k) for p in A.problems},
                    {s: s for s in A.solutions})


# -- norm laws -------------------------------------------------------------

@dataclass(frozen=True)
class LawResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    value: NormValue | None = None
    expected: str = ""
    reason: str = ""


@dataclass(frozen=True)
class LawReport:
    norm_a: NormValue
    norm_b: NormValue
    results: tuple[LawResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def by_name(self, name) -> LawResult:
        return next(r for r in self.results if r.name == name)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify_norm_laws(A: FiniteRelation, B: FiniteRelation, sequential=True,
                     seq_limit=SEQ_LIMIT) -> LawReport:
    """Compute every composite norm and compare it with the law's prediction.

    Product and coproduct laws are asserted even when a norm is Top; the
    conjunction and sequential laws only when both norms are finite.  Every
    law is skipped for relations with an empty side, where the finite
    constructions degenerate.
    ``sequential=False`` skips the two sequential laws, whose problem sets
    grow exponentially.
    """
    na, nb = norm(A, None), norm(B, None)
    hi, lo = max(na, nb), min(na, nb)
    results = []
    degenerate = min(A.shape + B.shape) == 0

    def skip(name, reason):
        results.append(LawResult(name, "skip", reason=reason))

    if degenerate:
        for name in ("product", "coproduct", "conjunction", "seq", "dual_seq"):
            skip(name, "a relation has an empty side")
        return LawReport(na, nb, tuple(results))

    v = norm(product(A, B), None)
    results.append(LawResult("product", _status(v == hi), v, f"max = {hi}"))
    v = norm(coproduct(A, B), None)
    results.append(LawResult("coproduct", _status(v == lo), v, f"min = {lo}"))

    top = na.is_top or nb.is_top
    prod = na * nb
    if top:
        skip("conjunction", "a participating norm is Top")
    else:
        v = norm(conjunction(A, B), None)
        results.append(LawResult("conjunction", _status(hi <= v <= prod), v,
                                 f"within [{hi}, {prod}]"))
    if not sequential or top:
        reason = "a participating norm is Top" if sequential else "not requested"
        skip("seq", reason)
        skip("dual_seq", reason)
        return LawReport(na, nb, tuple(results))
    v = norm(seq_composition(A, B, seq_limit), None)
    results.append(LawResult("seq", _status(v == prod), v, f"product = {prod}"))
    v = norm(dual_seq_composition(A, B, seq_limit), None)
    results.append(LawResult("dual_seq", _status(v == lo), v, f"min = {lo}"))
    return LawReport(na, nb, tuple(results))
