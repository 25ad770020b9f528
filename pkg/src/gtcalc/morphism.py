"""Morphisms between finite relations.

A morphism ``A -> B`` is a pair of maps: ``minus`` sends every problem of
``B`` to a problem of ``A`` and ``plus`` sends every solution of ``A`` to a
solution of ``B``.  It is *verified* when ``minus(b) A a`` always implies
``b B plus(a)``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping

from .errors import (FiniteObstruction, MalformedMorphism, NormExceedsKappa,
                     SearchSpaceTooLarge, SourceTargetMismatch)
from .relation import (FiniteRelation, NormValue, dual, equality_relation, min_cover,
                       norm, strict_order_relation)

SEARCH_LIMIT = 10**7


@dataclass(frozen=True)
class Morphism:
    source: FiniteRelation
    target: FiniteRelation
    minus: Mapping[str, str]
    plus: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "minus", dict(self.minus))
        object.__setattr__(self, "plus", dict(self.plus))
        _check_map(self.minus, self.target.problems, self.source.problems, "minus")
        _check_map(self.plus, self.source.solutions, self.target.solutions, "plus")

    __hash__ = None

    def to_json(self, source_ref=None, target_ref=None) -> dict:
        return {"source": source_ref if source_ref is not None else self.source.to_json(),
                "target": target_ref if target_ref is not None else self.target.to_json(),
                "minus": dict(self.minus), "plus": dict(self.plus)}

    @classmethod
    def from_json(cls, data: dict, base_dir=".") -> "Morphism":
        """Relations may be given inline or as paths relative to ``base_dir``."""
        def side(ref):
            if isinstance(ref, str):
                with open(os.path.join(base_dir, ref)) as fh:
                    ref = json.load(fh)
            return FiniteRelation.from_json(ref)
        try:
            return cls(side(data["source"]), side(data["target"]), data["minus"], data["plus"])
        except (KeyError, TypeError) as exc:
            raise MalformedMorphism(f"morphism JSON lacks a field: {exc}") from None


def _check_map(mapping, domain, codomain, name):
    missing = [x for x in domain if x not in mapping]
    if missing:
        raise MalformedMorphism(f"{name} undefined on {missing[0]!r}")
    extra = [x for x in mapping if x not in set(domain)]
    if extra:
        raise MalformedMorphism(f"{name} defined outside its domain at {extra[0]!r}")
    allowed = set(codomain)
    for x, y in mapping.items():
        if y not in allowed:
            raise MalformedMorphism(f"{name}({x!r}) = {y!r} is not a declared label")


@dataclass(frozen=True)
class VerificationResult:
    holds: bool
    counterexample: tuple[str, str] | None = None

    def __bool__(self):
        return self.holds


def verify_morphism(m: Morphism) -> VerificationResult:
    """Check the transport condition; the first violating ``(b, a)`` is reported.

    Pairs are scanned in declared label order: target problems outermost,
    source solutions innermost.
    """
    A, B = m.source, m.target
    a_rows, b_rows = A.row_masks, B.row_masks
    a_idx, b_sol_idx = A.problem_index, B.solution_index
    plus_idx = [b_sol_idx[m.plus[a]] for a in A.solutions]
    for i, b in enumerate(B.problems):
        solved_in_a = a_rows[a_idx[m.minus[b]]]
        row_b = b_rows[i]
        for j, a in enumerate(A.solutions):
            if solved_in_a >> j & 1 and not row_b >> plus_idx[j] & 1:
                return VerificationResult(False, (b, a))
    return VerificationResult(True)


def identity_morphism(rel: FiniteRelation) -> Morphism:
    return Morphism(rel, rel, {p: p for p in rel.problems}, {s: s for s in rel.solutions})


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """Diagrammatic composite ``phi ; psi`` of ``phi: A -> B`` and ``psi: B -> C``."""
    if phi.target != psi.source:
        raise SourceTargetMismatch("target of the first morphism is not the source of the second")
    return Morphism(phi.source, psi.target,
                    {c: phi.minus[psi.minus[c]] for c in psi.target.problems},
                    {a: psi.plus[phi.plus[a]] for a in phi.source.solutions})


def dual_morphism(m: Morphism) -> Morphism:
    return Morphism(dual(m.target), dual(m.source), m.plus, m.minus)


@dataclass(frozen=True)
class NormReport:
    verified: bool
    norm_source: NormValue
    norm_target: NormValue
    inequality_holds: bool


def check_norm_inequality(m: Morphism, max_solutions=None) -> NormReport:
    ns = norm(m.source, max_solutions)
    nt = norm(m.target, max_solutions)
    return NormReport(verify_morphism(m).holds, ns, nt, ns >= nt)


def equality_source_morphism(A: FiniteRelation, kappa: int) -> Morphism:
    """A morphism ``(kappa, kappa, =) -> A``, available exactly when ``norm(A) <= kappa``."""
    cover = min_cover(A, None)
    if cover is None or len(cover) > kappa:
        shown = "Top" if cover is None else len(cover)
        raise NormExceedsKappa(f"norm {shown} exceeds kappa = {kappa}")
    if kappa > 0 and not A.solutions:
        raise FiniteObstruction("no map from a nonempty index set into an empty solution set")
    E = equality_relation(kappa)
    padded = list(cover) + [(cover or A.solutions)[0]] * (kappa - len(cover))
    plus = {str(i): padded[i] for i in range(kappa)}
    minus = {}
    for p in A.problems:
        minus[p] = next(str(i) for i, s in enumerate(cover) if A.related(p, s))
    return Morphism(E, A, minus, plus)


def strict_order_target_morphism(A: FiniteRelation, kappa: int,
                                 ranking: Mapping[str, int] | None = None) -> Morphism:
    """A morphism ``A -> (kappa, kappa, <)`` built from an injective ranking of solutions.

    ``ranking`` defaults to declared order.  Each ``delta < kappa`` is sent to
    the first problem left unsolved by the solutions ranked at most ``delta``;
    when every problem is solved by that prefix there is nothing finite to
    send ``delta`` to and ``FiniteObstruction`` is raised.
    """
    if ranking is None:
        ranking = {s: j for j, s in enumerate(A.solutions)}
    ranks = [ranking[s] for s in A.solutions]
    if len(set(ranks)) != len(ranks) or any(not 0 <= r < kappa for r in ranks):
        raise FiniteObstruction(f"solutions admit no injective ranking into {kappa}")
    target = strict_order_relation(kappa)
    cols = A.column_masks
    minus = {}
    for delta in range(kappa):
        solved = 0
        for s, r in zip(A.solutions, ranks):
            if r <= delta:
                solved |= cols[A.solution_index[s]]
        unsolved = [p for i, p in enumerate(A.problems) if not solved >> i & 1]
        if not unsolved:
            raise FiniteObstruction(
                f"every problem is solved by solutions ranked <= {delta}", delta=delta)
        minus[str(delta)] = unsolved[0]
    plus = {s: str(r) for s, r in zip(A.solutions, ranks)}
    return Morphism(A, target, minus, plus)


def search_space(A: FiniteRelation, B: FiniteRelation) -> int:
    return len(A.problems) ** len(B.problems) * len(B.solutions) ** len(A.solutions)


def search_morphism(A: FiniteRelation, B: FiniteRelation, limit=SEARCH_LIMIT):
    """First verifying morphism ``A -> B`` or ``None``.

    ``plus`` tables are enumerated lexicographically; for a fixed ``plus``
    the condition separates over target problems, so each ``minus(b)`` is
    the first source problem that works.
    """
    if search_space(A, B) > limit:
        raise SearchSpaceTooLarge(f"search space {search_space(A, B)} exceeds {limit}")
    a_rows, b_rows = A.row_masks, B.row_masks
    n_a_sol = len(A.solutions)
    for table in cartesian(range(len(B.solutions)), repeat=n_a_sol):
        minus = {}
        for i, b in enumerate(B.problems):
            row_b = b_rows[i]
            for x, row_a in enumerate(a_rows):
                if all(row_b >> table[j] & 1 for j in range(n_a_sol) if row_a >> j & 1):
                    minus[b] = A.problems[x]
                    break
            else:
                break
        else:
            plus = {a: B.solutions[table[j]] for j, a in enumerate(A.solutions)}
            return Morphism(A, B, minus, plus)
    return None


@dataclass(frozen=True)
class TransportReport:
    hypothesis: bool
    conclusion: bool | None


def transport_universal_solution(m: Morphism, y: str) -> TransportReport:
    """If ``y`` solves every ``minus``-image, ``plus(y)`` must solve every target problem."""
    A, B = m.source, m.target
    if not all(A.related(m.minus[b], y) for b in B.problems):
        return TransportReport(False, None)
    image = m.plus[y]
    return TransportReport(True, all(B.related(b, image) for b in B.problems))


def load_morphism(path) -> Morphism:
    with open(path) as fh:
        data = json.load(fh)
    return Morphism.from_json(data, os.path.dirname(os.path.abspath(path)))
