"""Orbit state graphs and the cardinality of expansion sets.

The expansions of ``x`` are in bijection with the infinite paths from ``x`` in
the graph of all orbit points reachable under admissible digit maps.  When
that graph is finite its strongly connected components decide the cardinality:

* a reachable component that is not a simple cycle gives ``2^aleph0`` paths;
* otherwise, a cycle vertex with an exit edge gives countably many;
* otherwise the paths are finitely many and are counted exactly.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from . import special
from .algebraic import FieldElement
from .errors import BaseOutOfRange, IncompleteGraph, OutOfRange
from .expansions import (
    Base,
    EventuallyPeriodicWord,
    Region,
    Uniqueness,
    Word,
    eval_word,
    in_j,
    is_unique,
    j_interval,
    region,
    t_inverse,
    t_map,
    u_family,
)

DEFAULT_MAX_STATES = 20_000


def default_max_states() -> int:
    return int(os.environ.get("BETA_BRANCH_MAX_STATES", DEFAULT_MAX_STATES))


class Kind(enum.Enum):
    FINITE = "Finite"
    COUNTABLY_INFINITE = "CountablyInfinite"
    UNCOUNTABLE = "Uncountable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Cardinality:
    """``Finite(k)``, ``CountablyInfinite``, ``Uncountable`` (always ``2^aleph0``)
    or ``Unknown(reason)``."""

    kind: Kind
    k: int | None = None
    reason: str | None = None

    @classmethod
    def finite(cls, k: int) -> "Cardinality":
        return cls(Kind.FINITE, k=k)

    @classmethod
    def countable(cls) -> "Cardinality":
        return cls(Kind.COUNTABLY_INFINITE)

    @classmethod
    def uncountable(cls) -> "Cardinality":
        return cls(Kind.UNCOUNTABLE)

    @classmethod
    def unknown(cls, reason: str) -> "Cardinality":
        return cls(Kind.UNKNOWN, reason=reason)

    @property
    def is_infinite(self) -> bool:
        return self.kind in (Kind.COUNTABLY_INFINITE, Kind.UNCOUNTABLE)

    @property
    def is_definite(self) -> bool:
        return self.kind is not Kind.UNKNOWN

    def __str__(self):
        if self.kind is Kind.FINITE:
            return f"Finite({self.k})"
        if self.kind is Kind.UNKNOWN:
            return f"Unknown({self.reason})"
        return self.kind.value

    def to_dict(self) -> dict:
        d = {"classification": self.kind.value}
        if self.kind is Kind.FINITE:
            d["k"] = self.k
        if self.kind is Kind.UNKNOWN:
            d["reason"] = self.reason
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Cardinality":
        return cls(Kind(d["classification"]), k=d.get("k"), reason=d.get("reason"))


@dataclass(frozen=True, eq=False)
class StateGraph:
    """Labeled digraph of orbit points.

    ``edges[i]`` lists ``(digit, target)`` pairs, digit 0 first.  States in
    ``frontier`` were discovered but never expanded (their edge lists are
    empty); ``complete`` holds exactly when the frontier is empty.
    """

    edges: tuple
    start: int = 0
    states: tuple | None = None
    regions: tuple | None = None
    frontier: tuple = ()
    base: Base | None = dc_field(default=None, repr=False)

    @property
    def complete(self) -> bool:
        return not self.frontier

    def __len__(self):
        return len(self.edges)

    @classmethod
    def from_edges(cls, edges: Sequence[Sequence[tuple[int, int]]], start: int = 0) -> "StateGraph":
        return cls(tuple(tuple(sorted(e)) for e in edges), start)

    def successors(self, v: int):
        return self.edges[v]

    def branching_states(self) -> list[int]:
        return [v for v, e in enumerate(self.edges) if len(e) == 2]

    @cached_property
    def cardinalities(self) -> tuple[Cardinality, ...]:
        """Per-state cardinality of the set of infinite paths leaving it."""
        return tuple(_vertex_cardinalities(self.edges, set(self.frontier)))

    def restart(self, v: int) -> "StateGraph":
        """The same graph rooted at ``v`` (shares nothing mutable)."""
        return StateGraph(self.edges, v, self.states, self.regions, self.frontier, self.base)

    def to_json(self, classification: Cardinality | None = None) -> dict:
        cls = classification or classify_paths(self)
        return {
            "states": [
                {
                    "rep": str(s) if s is not None else str(i),
                    "region": self.regions[i].value if self.regions else None,
                }
                for i, s in enumerate(self.states or [None] * len(self.edges))
            ],
            "edges": [[v, d, t] for v, es in enumerate(self.edges) for d, t in es],
            "start": self.start,
            "complete": self.complete,
            "classification": cls.to_dict(),
        }

    def to_dot(self) -> str:
        lines = ["digraph states {", "  rankdir=LR;"]
        for i in range(len(self.edges)):
            lines.append(f'  s{i} [label="{_state_label(self, i)}"{", shape=doublecircle" if i == self.start else ""}];')
        for v, es in enumerate(self.edges):
            for d, t in es:
                lines.append(f'  s{v} -> s{t} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines)


def _state_label(g: StateGraph, i: int) -> str:
    if g.states is None:
        return str(i)
    s = g.states[i]
    return f"{s.to_decimal(6)}\\n{s}"


def build_state_graph(base: Base, x: FieldElement, max_states: int | None = None) -> StateGraph:
    """Breadth-first closure of ``x`` under the admissible digit maps."""
    if max_states is None:
        max_states = default_max_states()
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    r0 = region(base, x)
    if r0 is Region.OUT_OF_RANGE:
        raise OutOfRange(f"point {x} lies outside [0, 1/(q-1)]")
    states = [x]
    regions = [r0]
    index = {x: 0}
    edges: list[list[tuple[int, int]]] = [[]]
    queue = deque([0])
    while queue:
        v = queue[0]
        r = regions[v]
        digits = (0, 1) if r is Region.SWITCH else ((0,) if r is Region.BELOW_SWITCH else (1,))
        targets = [t_map(base, d, states[v]) for d in digits]
        new = [y for y in dict.fromkeys(targets) if y not in index]
        if len(states) + len(new) > max_states:
            break
        queue.popleft()
        for y in new:
            index[y] = len(states)
            states.append(y)
            regions.append(region(base, y))
            edges.append([])
            queue.append(index[y])
        edges[v] = [(d, index[y]) for d, y in zip(digits, targets)]
    return StateGraph(
        edges=tuple(tuple(e) for e in edges),
        start=0,
        states=tuple(states),
        regions=tuple(regions),
        frontier=tuple(queue),
        base=base,
    )


def strongly_connected_components(edges: Sequence[Sequence[tuple[int, int]]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out sinks first."""
    n = len(edges)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(edges[v]):
                work[-1] = (v, i + 1)
                w = edges[v][i][1]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


_UNC = Cardinality.uncountable()
_CNT = Cardinality.countable()
_DEAD = Cardinality.finite(0)


def _vertex_cardinalities(edges, frontier: set) -> list[Cardinality]:
    n = len(edges)
    comp_of = [0] * n
    comps = strongly_connected_components(edges)
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid
    out: list[Cardinality | None] = [None] * n
    pending = Cardinality.unknown("reaches an unexpanded state")
    for cid, comp in enumerate(comps):
        internal = 0
        branching_inside = False
        exits = []
        for v in comp:
            inside = 0
            for _, t in edges[v]:
                if comp_of[t] == cid:
                    inside += 1
                else:
                    exits.append(t)
            internal += inside
            branching_inside |= inside >= 2
        cyclic = internal > 0
        # exits into dead ends carry no infinite path
        succ = [out[t] for t in exits if out[t] != _DEAD]
        if branching_inside:
            card = _UNC
        elif any(c.kind is Kind.UNCOUNTABLE for c in succ):
            card = _UNC
        elif any(v in frontier for v in comp) or any(c.kind is Kind.UNKNOWN for c in succ):
            card = pending
        elif cyclic:
            card = _CNT if succ else Cardinality.finite(1)
        elif any(c.kind is Kind.COUNTABLY_INFINITE for c in succ):
            card = _CNT
        else:
            card = Cardinality.finite(sum(c.k for c in succ))
        for v in comp:
            out[v] = card
    return out  # type: ignore[return-value]


def classify_paths(g: StateGraph) -> Cardinality:
    """Cardinality of the set of infinite paths from ``g.start``."""
    if not g.complete:
        return Cardinality.unknown("incomplete graph")
    return g.cardinalities[g.start]


def classify_expansions(base: Base, x: FieldElement, max_states: int | None = None) -> Cardinality:
    return classify_state_graph(build_state_graph(base, x, max_states))


def classify_state_graph(g: StateGraph) -> Cardinality:
    """``classify_paths`` with a diagnostic reason for incomplete orbit graphs."""
    if not g.complete:
        expanded = len(g) - len(g.frontier)
        n_branch = sum(1 for r in g.regions if r is Region.SWITCH)
        return Cardinality.unknown(
            f"incomplete graph: {len(g)} states ({expanded} expanded), "
            f"at least {n_branch} branching states")
    return classify_paths(g)


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


def null_infinite_in_graph(g: StateGraph, v: int | None = None) -> Verdict:
    """Null-infinite test for state ``v`` (default: the start) of a complete graph."""
    if not g.complete:
        return Verdict.UNKNOWN
    v = g.start if v is None else v
    cards = g.cardinalities
    if cards[v].kind is not Kind.COUNTABLY_INFINITE:
        return Verdict.NO
    seen = {v}
    todo = [v]
    while todo:
        s = todo.pop()
        es = g.edges[s]
        if len(es) == 2 and not any(cards[t].kind is Kind.FINITE for _, t in es):
            return Verdict.NO
        for _, t in es:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return Verdict.YES


def is_null_infinite(base: Base, x: FieldElement, max_states: int | None = None) -> Verdict:
    """Countably many expansions, and at every reachable branching point one of
    the two continuations has only finitely many."""
    return null_infinite_in_graph(build_state_graph(base, x, max_states))


def p_q_set(base: Base, k: int = 0, limit: int = 4096) -> list[FieldElement]:
    """Points of ``J_q`` mapped into ``U_q`` by ``T0`` or ``T1``, sorted.

    Family indices ``0..k`` are always scanned; the scan then continues until
    certified complete, or raises after ``limit`` indices.  Preimages ``(u + d)/q`` of the unique-expansion family are scanned in the
    family index ``k``.  ``0^k(10)^inf`` decreases to 0 and ``1^k(10)^inf``
    increases to ``1/(q-1)``, so once every preimage of one family has left
    ``J_q`` on the far side, no later member can return.
    """
    if not base.in_open_range(special.golden(), special.q_f()):
        raise BaseOutOfRange(f"base {base.approx(6)} outside ((1+sqrt5)/2, q_f)")
    left, right = j_interval(base)
    found: dict[FieldElement, None] = {}

    def consider(u):
        for d in (0, 1):
            y = t_inverse(base, d, u)
            if (y - left).sign() >= 0 and (right - y).sign() >= 0:
                found[y] = None

    consider(base.field.zero)
    consider(base.top)
    low_done = high_done = False
    for i in range(max(k, limit) + 1):
        if not low_done:
            u = eval_word(base, EventuallyPeriodicWord("0" * i, "10"))
            consider(u)
            # both preimages below J once (u + 1)/q < left
            low_done = (t_inverse(base, 1, u) - left).sign() < 0
        if not high_done:
            u = eval_word(base, EventuallyPeriodicWord("1" * i, "10"))
            consider(u)
            high_done = (t_inverse(base, 0, u) - right).sign() > 0
        if low_done and high_done and i >= k:
            break
    else:
        raise RuntimeError(f"family scan not certified within {limit} indices")
    return sorted(found, key=_ValueKey)


class _ValueKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return (self.v - other.v).sign() < 0


def u_kq_set(base: Base, k: int) -> list[FieldElement]:
    """``{(1 0^j (01)^inf), (0 1^j (10)^inf) : 1 <= j <= k}``."""
    pts = []
    for j in range(1, k + 1):
        pts.append(eval_word(base, EventuallyPeriodicWord("1" + "0" * j, "01")))
        pts.append(eval_word(base, EventuallyPeriodicWord("0" + "1" * j, "10")))
    return sorted(pts, key=_ValueKey)


@dataclass(frozen=True)
class Membership:
    verdict: str  # "In" | "NotIn" | "Unknown"
    witness: FieldElement | None = None
    details: tuple = ()


def b_aleph0_membership(base: Base, max_states: int | None = None) -> Membership:
    """Decide whether some point has exactly countably many expansions by
    searching the preimage set ``P_q`` for a null-infinite point.

    Valid for ``q`` in ``[q_aleph0, q_f)`` other than ``q_2``.
    """
    if not base.in_open_range(special.q_aleph0(), special.q_f(), lo_closed=True):
        raise BaseOutOfRange(f"base {base.approx(6)} outside [q_aleph0, q_f)")
    if base.compare_to(special.q_2()) == 0:
        raise BaseOutOfRange("q_2 is excluded")
    details = []
    unknown = False
    for y in p_q_set(base):
        v = is_null_infinite(base, y, max_states)
        details.append((y, v))
        if v is Verdict.YES:
            return Membership("In", y, tuple(details))
        unknown |= v is Verdict.UNKNOWN
    return Membership("Unknown" if unknown else "NotIn", None, tuple(details))


# -- trees ---------------------------------------------------------------------

@dataclass
class TreeNode:
    id: int
    parent: int | None
    digit: int | None  # branch digit leading here from the parent's bifurcation
    start: int  # state where this branch begins
    word: str  # digits followed before bifurcating (or the continuation of a line)
    end: int | None  # bifurcation state, None for lines and cut leaves
    kind: str  # "branch" | "line" | "cut"
    cardinality: Cardinality
    children: list[int] = dc_field(default_factory=list)


@dataclass
class TreeExport:
    mode: str
    depth: int
    graph: StateGraph
    nodes: list[TreeNode]
    classification: Cardinality

    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes if not n.children]

    def bifurcations(self) -> int:
        return sum(1 for n in self.nodes if n.kind == "branch")

    def to_json(self) -> dict:
        out = self.graph.to_json(self.classification)
        out["mode"] = self.mode
        out["depth"] = self.depth
        out["tree"] = [
            {
                "id": n.id,
                "parent": n.parent,
                "digit": n.digit,
                "start": n.start,
                "word": n.word,
                "end": n.end,
                "kind": n.kind,
                "cardinality": n.cardinality.to_dict(),
                "children": n.children,
            }
            for n in self.nodes
        ]
        return out

    def to_dot(self) -> str:
        g = self.graph
        lines = [f"digraph tree_{self.mode} {{", "  rankdir=LR;", "  node [shape=box];"]
        for n in self.nodes:
            at = n.end if n.end is not None else n.start
            label = f"{_state_label(g, at)}\\n{n.word}\\n{n.cardinality}"
            shape = ", shape=plaintext" if n.kind != "branch" else ""
            lines.append(f'  n{n.id} [label="{label}"{shape}];')
        for n in self.nodes:
            if n.parent is not None:
                lines.append(f'  n{n.parent} -> n{n.id} [label="{n.digit}"];')
        lines.append("}")
        return "\n".join(lines)


_MODES = ("full", "infinite", "continuum")


def export_tree(base: Base, x: FieldElement, mode: str = "full", depth: int = 4,
                max_states: int | None = None) -> TreeExport:
    """Unroll the branching tree of ``x`` from its state graph.

    ``full`` bifurcates at every branching point; ``infinite`` only where both
    continuations have infinitely many expansions; ``continuum`` only where
    both have uncountably many.  Children are ordered digit 0 first.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    g = build_state_graph(base, x, max_states)
    cards = g.cardinalities

    def keep(t: int) -> bool:
        c = cards[t]
        if mode == "full":
            return True
        if c.kind is Kind.UNKNOWN:
            raise IncompleteGraph("pruning needs a classification the incomplete graph cannot give")
        return c.is_infinite if mode == "infinite" else c.kind is Kind.UNCOUNTABLE

    def follow(s: int):
        """Walk from ``s`` to the next bifurcation allowed by the mode."""
        digits: list[str] = []
        pos = {s: 0}
        v = s
        while True:
            es = g.edges[v]
            if not es:
                raise IncompleteGraph("tree reaches an unexpanded state")
            kept = [(d, t) for d, t in es if keep(t)] if len(es) == 2 else list(es)
            if len(es) == 2 and len(kept) == 2:
                return "".join(digits), v
            if not kept:
                # no admissible continuation survives pruning
                return "".join(digits), None
            d, v = kept[0]
            digits.append(str(d))
            if v in pos:
                i = pos[v]
                return str(EventuallyPeriodicWord("".join(digits[:i]), "".join(digits[i:]))), None
            pos[v] = len(digits)

    nodes: list[TreeNode] = []

    def add(parent, digit, s, level):
        nid = len(nodes)
        node = TreeNode(nid, parent, digit, s, "", None, "cut", cards[s])
        nodes.append(node)
        if parent is not None:
            nodes[parent].children.append(nid)
        if level >= depth:
            return
        word, end = follow(s)
        node.word = word
        if end is None:
            node.kind = "line"
            return
        node.end = end
        node.kind = "branch"
        for d, t in g.edges[end]:
            add(nid, d, t, level + 1)

    if mode != "full" and not g.complete and cards[g.start].kind is Kind.UNKNOWN:
        raise IncompleteGraph("the state graph of x is incomplete")
    add(None, None, g.start, 0)
    return TreeExport(mode, depth, g, nodes, classify_paths(g))


def enumerate_prefixes(base: Base, x: FieldElement, n: int) -> list[Word]:
    """All length-``n`` words whose orbit from ``x`` stays in ``I_q``, sorted."""
    if n < 0:
        raise ValueError("n must be >= 0")
    r = region(base, x)
    if r is Region.OUT_OF_RANGE:
        raise OutOfRange(f"point {x} lies outside [0, 1/(q-1)]")
    layer: dict[FieldElement, list[str]] = {x: [""]}
    regions = {x: r}
    for _ in range(n):
        nxt: dict[FieldElement, list[str]] = {}
        for y, words in layer.items():
            ry = regions[y]
            digits = (0, 1) if ry is Region.SWITCH else ((0,) if ry is Region.BELOW_SWITCH else (1,))
            for d in digits:
                z = t_map(base, d, y)
                if z not in regions:
                    regions[z] = region(base, z)
                nxt.setdefault(z, []).extend(w + str(d) for w in words)
        layer = nxt
    return sorted(w for words in layer.values() for w in words)
