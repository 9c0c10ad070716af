"""Explanation graphs: labeled digraphs over annotated atoms a+/a- with the
three sink nodes assume/top/bot, plus structural validation and exports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from .program import Atom, Literal


class Marker(Enum):
    """Sink markers; also double as the one-element LCE forms."""

    ASSUME = "assume"
    TOP = "top"
    BOT = "bot"

    def __str__(self):
        return {"assume": "assume", "top": "⊤", "bot": "⊥"}[self.value]


class NodeKind(str, Enum):
    POS = "pos"
    NEG = "neg"
    ASSUME = "assume"
    TOP = "top"
    BOT = "bot"


_SINK_KINDS = (NodeKind.ASSUME, NodeKind.TOP, NodeKind.BOT)


@dataclass(frozen=True, order=True)
class ENode:
    kind: NodeKind
    atom: Optional[Atom] = None

    def __post_init__(self):
        annotated = self.kind in (NodeKind.POS, NodeKind.NEG)
        if annotated != (self.atom is not None):
            raise ValueError("exactly the annotated-atom nodes carry an atom")

    @property
    def is_annotated(self) -> bool:
        return self.kind in (NodeKind.POS, NodeKind.NEG)

    @property
    def label(self) -> str:
        if self.kind is NodeKind.POS:
            return f"{self.atom.name}+"
        if self.kind is NodeKind.NEG:
            return f"{self.atom.name}-"
        return str(Marker(self.kind.value))

    def __str__(self):
        return self.label


ASSUME_NODE = ENode(NodeKind.ASSUME)
TOP_NODE = ENode(NodeKind.TOP)
BOT_NODE = ENode(NodeKind.BOT)


def pos_node(a: Atom) -> ENode:
    return ENode(NodeKind.POS, a)


def neg_node(a: Atom) -> ENode:
    return ENode(NodeKind.NEG, a)


def node_for(a: Atom, sign: str) -> ENode:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return pos_node(a) if sign == "+" else neg_node(a)


@dataclass(frozen=True, order=True)
class Edge:
    src: ENode
    dst: ENode
    sign: str  # '+' or '-'

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError(f"edge label must be '+' or '-', got {self.sign!r}")

    def __str__(self):
        return f"({self.src},{self.dst},{self.sign})"


@dataclass(frozen=True)
class EGraph:
    nodes: frozenset[ENode]
    edges: frozenset[Edge]
    root: Optional[ENode] = None

    @staticmethod
    def from_edges(edges: Iterable[Edge], root: Optional[ENode] = None) -> "EGraph":
        edges = frozenset(edges)
        nodes = frozenset(n for e in edges for n in (e.src, e.dst))
        if root is not None:
            nodes |= {root}
        return EGraph(nodes, edges, root)

    def outgoing(self, n: ENode) -> list[Edge]:
        return sorted(e for e in self.edges if e.src == n)

    def edge_labels(self) -> frozenset[tuple[str, str, str]]:
        """Layout-free fingerprint used by tests: (src label, dst label, sign)."""
        return frozenset((e.src.label, e.dst.label, e.sign) for e in self.edges)

    def __str__(self):
        inner = ", ".join(str(e) for e in sorted(self.edges))
        return f"{{{inner}}}"


def support(b: ENode, g: EGraph) -> Union[frozenset[Literal], Marker]:
    """Direct support of an annotated node: its out-neighbours as literals,
    or the marker if it points at assume/top/bot."""
    if b not in g.nodes:
        raise KeyError(f"node {b} not in graph")
    if not b.is_annotated:
        raise ValueError(f"support is defined for annotated atoms, not {b}")
    out = g.outgoing(b)
    for e in out:
        if e.dst.kind in _SINK_KINDS:
            return Marker(e.dst.kind.value)
    return frozenset(
        Literal(e.dst.atom, negated=(e.sign == "-")) for e in out
    )


def subgraph(e: ENode, g: EGraph) -> EGraph:
    """Edges lying on paths from e, and the nodes they reach."""
    if e not in g.nodes:
        raise KeyError(f"node {e} not in graph")
    reached = {e}
    frontier = [e]
    edges = set()
    while frontier:
        n = frontier.pop()
        for edge in g.outgoing(n):
            edges.add(edge)
            if edge.dst not in reached:
                reached.add(edge.dst)
                frontier.append(edge.dst)
    return EGraph(frozenset(reached), frozenset(edges), root=e)


def egraph_violations(g: EGraph) -> list[str]:
    """Structural problems w.r.t. the e-graph conditions; empty means valid."""
    problems = []
    for e in g.edges:
        if e.src not in g.nodes or e.dst not in g.nodes:
            problems.append(f"edge {e} mentions a node outside the node set")
    has_out = {e.src for e in g.edges}
    for n in sorted(g.nodes):
        if n.is_annotated and n not in has_out:
            problems.append(f"annotated node {n} is a sink")
        if n.kind in _SINK_KINDS and n in has_out:
            problems.append(f"{n} must be a sink")
    for e in sorted(g.edges):
        if e.src.kind is NodeKind.POS and e.sign == "-" and e.dst in (ASSUME_NODE, BOT_NODE):
            problems.append(f"positive node may not reach {e.dst} by a negative edge: {e}")
        if e.src.kind is NodeKind.NEG and e.sign == "+" and e.dst in (ASSUME_NODE, TOP_NODE):
            problems.append(f"negative node may not reach {e.dst} by a positive edge: {e}")
    for n in sorted(has_out):
        out = g.outgoing(n)
        if any(e.dst.kind in _SINK_KINDS for e in out) and len(out) > 1:
            problems.append(f"{n}: a marker edge must be the only outgoing edge")
    return problems


def validate_egraph(g: EGraph) -> bool:
    return not egraph_violations(g)


def _sccs(nodes: Iterable[ENode], succ) -> list[set[ENode]]:
    """Tarjan's strongly connected components (iterative)."""
    index: dict[ENode, int] = {}
    low: dict[ENode, int] = {}
    on_stack: set[ENode] = set()
    stack: list[ENode] = []
    sccs: list[set[ENode]] = []
    counter = [0]

    def visit(v: ENode):
        work = [(v, iter(succ(v)))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                sccs.append(comp)

    for v in nodes:
        if v not in index:
            visit(v)
    return sccs


def is_safe(g: EGraph) -> bool:
    """No positively annotated node lies on a cycle of positive edges."""
    adj: dict[ENode, list[ENode]] = {n: [] for n in g.nodes}
    for e in g.edges:
        if e.sign == "+":
            adj[e.src].append(e.dst)
    for comp in _sccs(sorted(g.nodes), lambda n: adj[n]):
        if len(comp) > 1 and any(n.kind is NodeKind.POS for n in comp):
            return False
    return not any(
        e.sign == "+" and e.src == e.dst and e.src.kind is NodeKind.POS
        for e in g.edges
    )


def has_negative_cycle(g: EGraph) -> bool:
    """Some cycle (over edges of either sign) contains a negative edge."""
    adj: dict[ENode, list[ENode]] = {n: [] for n in g.nodes}
    for e in g.edges:
        adj[e.src].append(e.dst)
    comp_of: dict[ENode, int] = {}
    comp_size: dict[int, int] = {}
    for i, comp in enumerate(_sccs(sorted(g.nodes), lambda n: adj[n])):
        comp_size[i] = len(comp)
        for n in comp:
            comp_of[n] = i
    return any(
        e.sign == "-"
        and comp_of[e.src] == comp_of[e.dst]
        and (e.src == e.dst or comp_size[comp_of[e.src]] > 1)
        for e in g.edges
    )


# --- serialization ------------------------------------------------------------


def _node_order(g: EGraph) -> list[ENode]:
    return sorted(g.nodes)


def egraph_to_json(g: EGraph) -> dict:
    order = _node_order(g)
    ids = {n: i for i, n in enumerate(order)}
    return {
        "root": ids[g.root] if g.root is not None else None,
        "nodes": [
            {
                "id": ids[n],
                "kind": n.kind.value,
                "atom": n.atom.name if n.atom is not None else None,
            }
            for n in order
        ],
        "edges": [
            {"from": ids[e.src], "to": ids[e.dst], "label": e.sign}
            for e in sorted(g.edges)
        ],
    }


def egraph_to_json_str(g: EGraph) -> str:
    return json.dumps(egraph_to_json(g))


def egraph_to_dot(g: EGraph, name: str = "justification") -> str:
    """DOT text: positive edges solid, negative dashed, sinks as boxes."""
    order = _node_order(g)
    ids = {n: i for i, n in enumerate(order)}
    lines = [f"digraph {name} {{"]
    for n in order:
        if n.is_annotated:
            shape = "ellipse"
            label = n.label
        else:
            shape = "box"
            label = str(Marker(n.kind.value))
        extra = " penwidth=2" if n == g.root else ""
        lines.append(f'  n{ids[n]} [label="{label}" shape={shape}{extra}];')
    for e in sorted(g.edges):
        style = "solid" if e.sign == "+" else "dashed"
        lines.append(
            f'  n{ids[e.src]} -> n{ids[e.dst]} [style={style} label="{e.sign}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
