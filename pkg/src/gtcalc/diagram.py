"""A small knowledge base of inequalities between cardinal characteristics.

Edges are stored as ``lo <= hi``.  Nodes are either basic or defined as
``min(u, v)`` / ``max(u, v)`` of two other nodes; the closure adds the
lattice rules for those.  Every derived inequality comes with a proof chain.
A failed query means "not derivable from these facts", nothing stronger.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import UnknownNode, UnsupportedFormat


@dataclass(frozen=True)
class DiagramNode:
    name: str
    kind: str = "base"  # "base" | "min" | "max"
    operands: tuple[str, ...] = ()
    dual_of: str | None = None
    note: str | None = None

    def __post_init__(self):
        if self.kind not in ("base", "min", "max"):
            raise ValueError(f"unknown node kind {self.kind!r}")
        if (self.kind == "base") != (not self.operands):
            raise ValueError(f"{self.name}: min/max nodes take exactly two operands")
        if self.operands and len(self.operands) != 2:
            raise ValueError(f"{self.name}: min/max nodes take exactly two operands")

    @property
    def kind_label(self) -> str:
        if self.kind == "base":
            return "base"
        return f"{self.kind}({self.operands[0]},{self.operands[1]})"

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind_label, "dual_of": self.dual_of}
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data) -> "DiagramNode":
        kind = data.get("kind", "base")
        operands: tuple[str, ...] = ()
        if kind != "base":
            head, _, rest = kind.partition("(")
            kind = head
            operands = tuple(x.strip() for x in rest.rstrip(")").split(","))
        return cls(data["name"], kind, operands, data.get("dual_of"), data.get("note"))


@dataclass(frozen=True)
class DiagramEdge:
    lo: str
    hi: str
    provenance: str


DEFINITIONAL = "definition of {node}"
MIN_INTRO = "greatest lower bound: {lo} <= {u} and {lo} <= {v}"
MAX_ELIM = "least upper bound: {u} <= {hi} and {v} <= {hi}"


@dataclass(frozen=True)
class Step:
    lo: str
    hi: str
    rule: str  # "base" | "definitional" | "min-intro" | "max-elim"
    provenance: str
    premises: tuple["ProofChain", ...] = ()

    def describe(self) -> str:
        return f"{self.lo} <= {self.hi}  [{self.provenance}]"


@dataclass(frozen=True)
class ProofChain:
    lo: str
    hi: str
    steps: tuple[Step, ...]

    def __len__(self):
        return len(self.steps)

    def lines(self, indent="") -> list[str]:
        out = []
        for step in self.steps:
            out.append(indent + step.describe())
            for premise in step.premises:
                out.extend(premise.lines(indent + "    "))
        return out

    def verify(self, graph: "Diagram") -> bool:
        """Check endpoints and that every step is justified by ``graph``."""
        at = self.lo
        for step in self.steps:
            if step.lo != at or not graph._step_is_valid(step):
                return False
            at = step.hi
        return at == self.hi


def _edge_key(e):
    return (e.lo, e.hi)


@dataclass(frozen=True)
class Diagram:
    nodes: tuple[DiagramNode, ...]
    edges: tuple[DiagramEdge, ...] = field(default=())

    def __post_init__(self):
        names = [n.name for n in self.nodes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate node names")
        known = set(names)
        for n in self.nodes:
            for ref in n.operands + ((n.dual_of,) if n.dual_of else ()):
                if ref not in known:
                    raise UnknownNode(f"{n.name} refers to unknown node {ref!r}")
        for n in self.nodes:
            if n.dual_of and self.node(n.dual_of).dual_of not in (None, n.name):
                raise ValueError(f"dual pairing of {n.name} is not symmetric")
        for e in self.edges:
            self._require(e.lo, e.hi)

    @cached_property
    def _by_name(self) -> dict[str, DiagramNode]:
        return {n.name: n for n in self.nodes}

    def node(self, name) -> DiagramNode:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownNode(f"unknown node {name!r}") from None

    def _require(self, *names):
        for name in names:
            self.node(name)

    def dual(self, name) -> str | None:
        n = self.node(name)
        if n.dual_of:
            return n.dual_of
        return next((m.name for m in self.nodes if m.dual_of == name), None)

    def add_edge(self, lo, hi, provenance) -> "Diagram":
        self._require(lo, hi)
        edge = DiagramEdge(lo, hi, provenance)
        if edge in self.edges:
            return self
        return Diagram(self.nodes, self.edges + (edge,))

    # -- closure -----------------------------------------------------------

    def _definitional_steps(self) -> list[Step]:
        steps = []
        for n in self.nodes:
            if n.kind == "min":
                for u in n.operands:
                    steps.append(Step(n.name, u, "definitional", DEFINITIONAL.format(node=n.name)))
            elif n.kind == "max":
                for u in n.operands:
                    steps.append(Step(u, n.name, "definitional", DEFINITIONAL.format(node=n.name)))
        return steps

    @cached_property
    def _closure(self) -> tuple[tuple[Step, ...], dict[str, frozenset]]:
        """Direct steps (base, definitional, rule) and the reachability they induce.

        Rule steps are added in stages: compute reachability, add every
        lattice step it licenses, repeat until nothing new appears.  Each
        rule step's premises are shortest chains over earlier steps.
        """
        steps = [Step(e.lo, e.hi, "base", e.provenance) for e in self.edges]
        steps += self._definitional_steps()
        names = [n.name for n in self.nodes]
        while True:
            reach = _reachability(names, steps)
            have = {(s.lo, s.hi) for s in steps}
            new = []
            for n in self.nodes:
                if n.kind == "min":
                    u, v = n.operands
                    for x in names:
                        if x != n.name and (x, n.name) not in have and n.name not in reach[x] \
                                and u in reach[x] and v in reach[x]:
                            prem = (_shortest(steps, x, u), _shortest(steps, x, v))
                            new.append(Step(x, n.name, "min-intro",
                                            MIN_INTRO.format(lo=x, u=u, v=v), prem))
                elif n.kind == "max":
                    u, v = n.operands
                    for y in names:
                        if y != n.name and (n.name, y) not in have and y not in reach[n.name] \
                                and y in reach[u] and y in reach[v]:
                            prem = (_shortest(steps, u, y), _shortest(steps, v, y))
                            new.append(Step(n.name, y, "max-elim",
                                            MAX_ELIM.format(u=u, v=v, hi=y), prem))
            if not new:
                return tuple(steps), reach
            steps += new

    def closure(self) -> frozenset[tuple[str, str]]:
        """All derivable ``(lo, hi)`` pairs, reflexive pairs included."""
        _, reach = self._closure
        return frozenset((x, y) for x, ys in reach.items() for y in ys)

    def leq(self, x, y) -> bool:
        self._require(x, y)
        return y in self._closure[1][x]

    def query(self, x, y) -> ProofChain | None:
        """A shortest proof of ``x <= y``, or ``None`` when it is not derivable."""
        self._require(x, y)
        steps, reach = self._closure
        if y not in reach[x]:
            return None
        return _shortest(steps, x, y)

    def _step_is_valid(self, step: Step) -> bool:
        if step.rule == "base":
            return DiagramEdge(step.lo, step.hi, step.provenance) in self.edges
        if step.rule == "definitional":
            return step in self._definitional_steps()
        if step.rule == "min-intro":
            n = self._by_name.get(step.hi)
            if n is None or n.kind != "min" or len(step.premises) != 2:
                return False
            return all(p.lo == step.lo and p.hi == u and p.verify(self)
                       for p, u in zip(step.premises, n.operands))
        if step.rule == "max-elim":
            n = self._by_name.get(step.lo)
            if n is None or n.kind != "max" or len(step.premises) != 2:
                return False
            return all(p.lo == u and p.hi == step.hi and p.verify(self)
                       for p, u in zip(step.premises, n.operands))
        return False

    # -- export ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"nodes": [n.to_json() for n in self.nodes],
                "edges": [{"lo": e.lo, "hi": e.hi, "provenance": e.provenance}
                          for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "Diagram":
        nodes = tuple(DiagramNode.from_json(n) for n in data["nodes"])
        edges = tuple(DiagramEdge(e["lo"], e["hi"], e["provenance"]) for e in data["edges"])
        return cls(nodes, edges)

    def to_dot(self, morphism_orientation=False) -> str:
        lines = ["digraph cichon {", "  rankdir=BT;"]
        for n in self.nodes:
            label = n.name if n.kind == "base" else f"{n.name} = {n.kind_label}"
            lines.append(f'  "{n.name}" [label="{label}"];')
        for e in self.edges:
            a, b = (e.hi, e.lo) if morphism_orientation else (e.lo, e.hi)
            lines.append(f'  "{a}" -> "{b}" [label="{_dot_escape(e.provenance)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def export(self, fmt: str, morphism_orientation=False) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "dot":
            return self.to_dot(morphism_orientation)
        raise UnsupportedFormat(f"unsupported export format {fmt!r}; use dot or json")


def _dot_escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _reachability(names, steps) -> dict[str, frozenset]:
    adj = {x: [] for x in names}
    for s in steps:
        adj[s.lo].append(s.hi)
    reach = {}
    for x in names:
        seen = {x}
        todo = [x]
        while todo:
            for y in adj[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        reach[x] = frozenset(seen)
    return reach


def _shortest(steps, x, y) -> ProofChain:
    """BFS over steps in insertion order, so ties go to earlier facts."""
    back = {x: None}
    queue = deque([x])
    adj: dict[str, list[Step]] = {}
    for s in steps:
        adj.setdefault(s.lo, []).append(s)
    while queue:
        at = queue.popleft()
        if at == y:
            break
        for s in adj.get(at, ()):
            if s.hi not in back:
                back[s.hi] = s
                queue.append(s.hi)
    path = []
    at = y
    while back[at] is not None:
        path.append(back[at])
        at = back[at].lo
    return ProofChain(x, y, tuple(reversed(path)))


# -- the built-in diagram --------------------------------------------------

_NODES = [
    ("omega1", None), ("add_L", "cof_L"), ("add_B", "cof_B"), ("cov_B", "non_B"),
    ("non_L", "cov_L"), ("b", "d"), ("d", "b"), ("cov_L", "non_L"), ("non_B", "cov_B"),
    ("cof_B", "add_B"), ("cof_L", "add_L"), ("c", None), ("s", "r"), ("r", "s"),
    ("r_sigma", None), ("hom2", "par2"), ("par2", "hom2"), ("h", None), ("g", None),
]

_DEFINED = {
    "add_B": ("min", ("cov_B", "b")),
    "cof_B": ("max", ("non_B", "d")),
    "par2": ("min", ("b", "s")),
}

_NOTES = {
    "hom2": "equals max(r_sigma, d); only the lower bounds r and d are recorded",
}

_FACTS = [
    ("omega1", "b", "countably many functions are dominated by one"),
    ("b", "d", "a dominating family is unbounded"),
    ("add_L", "cov_L", "additivity below covering for null sets"),
    ("add_B", "cov_B", "additivity below covering for meager sets"),
    ("non_L", "cof_L", "uniformity below cofinality for null sets"),
    ("non_B", "cof_B", "uniformity below cofinality for meager sets"),
    ("add_B", "b", "meager additivity bounded by the bounding number"),
    ("d", "cof_B", "meager cofinality bounds the dominating number"),
    ("cov_B", "d", "a dominating family yields a meager cover"),
    ("b", "non_B", "an unbounded family yields a non-meager set"),
    ("cov_B", "non_L", "Rothberger: measure and category"),
    ("cov_L", "non_B", "Rothberger: measure and category, dual form"),
    ("add_L", "add_B", "null additivity below meager additivity"),
    ("cof_B", "cof_L", "meager cofinality below null cofinality"),
    ("s", "d", "orbit intervals of a dominating function split"),
    ("b", "r", "an unbounded family of enumerations is not split"),
    ("omega1", "s", "countably many sets are not splitting"),
    ("s", "non_B", "a non-meager family splits"),
    ("s", "non_L", "a non-null family splits"),
    ("cov_B", "r", "reaping families give meager covers"),
    ("cov_L", "r", "reaping families give null covers"),
    ("r", "hom2", "homogeneous sets for characteristic colorings reap"),
    ("d", "hom2", "homogeneous sets for interval colorings dominate"),
    ("par2", "b", "interval colorings are not all captured"),
    ("par2", "s", "characteristic colorings are not all captured"),
    ("omega1", "par2", "iterated Ramsey extraction against countably many colorings"),
    ("h", "par2", "dense open families of homogeneous sets"),
    ("h", "g", "dense open families are groupwise dense"),
    ("g", "d", "window families of a dominating function are groupwise dense"),
    ("r", "r_sigma", "sigma-reaping strengthens reaping"),
    ("hom2", "c", "homogeneity families of reals have size at most continuum"),
]


def builtin_knowledge_base() -> Diagram:
    nodes = []
    for name, dual in _NODES:
        kind, ops = _DEFINED.get(name, ("base", ()))
        nodes.append(DiagramNode(name, kind, ops, dual, _NOTES.get(name)))
    graph = Diagram(tuple(nodes))
    for lo, hi, why in _FACTS:
        graph = graph.add_edge(lo, hi, why)
    for name, _ in _NODES:
        if name != "c" and (name, "c") not in {(lo, hi) for lo, hi, _ in _FACTS}:
            graph = graph.add_edge(name, "c", "every characteristic is at most continuum")
    return graph


ALIASES = {"ω₁": "omega1", "w1": "omega1", "𝔟": "b", "𝔡": "d", "𝔠": "c", "𝔰": "s", "𝔯": "r"}


def resolve(name: str) -> str:
    return ALIASES.get(name, name)


def load_diagram(path) -> Diagram:
    with open(path) as fh:
        return Diagram.from_json(json.load(fh))
