"""The domination relation between coalition structures and its digraph.

``pi2`` dominates ``pi`` via ``c`` when ``c`` blocks ``pi``, agents abandoned
by ``c``'s formation fall back to singletons, and untouched parts carry
over. Graph growth is kernel-driven (see ``_kernels``); node identity is the
canonical structure tuple.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import _kernels
from .core import Game, compact_coalition, lowest_agent, members, render_coalition
from .errors import LimitExceeded, NodeNotInGraph, NotBlocking
from .structures import (
    DEFAULT_LIMIT,
    blocks,
    render_structure,
    structure_from_parts,
    structure_key,
)


class DominationEdge(NamedTuple):
    source: tuple[int, ...]
    target: tuple[int, ...]
    via: int


def dominate_via(g: Game, pi: tuple[int, ...], c: int) -> tuple[int, ...]:
    """The structure obtained when ``c`` forms against ``pi``.

    Raises ``NotBlocking`` unless ``c`` blocks ``pi``.
    """
    if not blocks(g, c, pi):
        raise NotBlocking(f"{render_coalition(c)} does not block {render_structure(pi)}")
    parts = [c]
    for p in pi:
        if p & c:
            rest = p & ~c
            while rest:
                low = rest & -rest
                parts.append(low)
                rest ^= low
        else:
            parts.append(p)
    return tuple(sorted(parts, key=lowest_agent))


def successors(g: Game, pi: tuple[int, ...]) -> list[DominationEdge]:
    """All one-step dominations of ``pi``, in ascending via-coalition order."""
    out = []
    for c in g.permissible:
        if blocks(g, c, pi):
            out.append(DominationEdge(pi, dominate_via(g, pi, c), c))
    return out


class DominationGraph:
    """Immutable domination digraph over a set of structures.

    ``adj[v]`` lists ``(target_id, via_mask)`` pairs in ascending via order.
    Strongly connected components and condensation reachability are computed
    once on demand and memoized; reachability queries never materialize a
    node-by-node matrix.
    """

    __slots__ = ("nodes", "adj", "seeds", "_index", "_comps", "_comp_of", "_reach")

    def __init__(self, nodes, adj, seeds):
        self.nodes: list[tuple[int, ...]] = nodes
        self.adj: list[list[tuple[int, int]]] = adj
        self.seeds: tuple[int, ...] = tuple(seeds)
        self._index = {pi: v for v, pi in enumerate(nodes)}
        self._comps = None
        self._comp_of = None
        self._reach = None

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, pi) -> bool:
        return pi in self._index

    def node_id(self, pi) -> int:
        try:
            return self._index[pi]
        except KeyError:
            raise NodeNotInGraph(f"{render_structure(pi)} is not in the graph") from None

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj)

    def edges(self) -> Iterator[DominationEdge]:
        for v, out in enumerate(self.adj):
            for w, via in out:
                yield DominationEdge(self.nodes[v], self.nodes[w], via)

    def sccs(self) -> list[list[int]]:
        """Strongly connected components, iterative Tarjan lowlink.

        Components come out in reverse topological order: every edge leaving
        a component points at a lower component index.
        """
        if self._comps is None:
            n = len(self.nodes)
            index = [-1] * n
            low = [0] * n
            on = [False] * n
            stack: list[int] = []
            comps: list[list[int]] = []
            comp_of = [-1] * n
            counter = 0
            for root in range(n):
                if index[root] != -1:
                    continue
                work = [(root, 0)]
                while work:
                    v, ptr = work[-1]
                    if ptr == 0:
                        index[v] = low[v] = counter
                        counter += 1
                        stack.append(v)
                        on[v] = True
                    descended = False
                    out = self.adj[v]
                    for k in range(ptr, len(out)):
                        w = out[k][0]
                        if index[w] == -1:
                            work[-1] = (v, k + 1)
                            work.append((w, 0))
                            descended = True
                            break
                        if on[w]:
                            low[v] = min(low[v], index[w])
                    if descended:
                        continue
                    if low[v] == index[v]:
                        comp = []
                        while True:
                            w = stack.pop()
                            on[w] = False
                            comp_of[w] = len(comps)
                            comp.append(w)
                            if w == v:
                                break
                        comps.append(sorted(comp))
                    work.pop()
                    if work:
                        u = work[-1][0]
                        low[u] = min(low[u], low[v])
            self._comps = comps
            self._comp_of = comp_of
        return self._comps

    def comp_of(self, v: int) -> int:
        self.sccs()
        return self._comp_of[v]

    def _reach_sets(self) -> list[int]:
        # reach[c] = bitmask of components reachable from c (including c)
        if self._reach is None:
            comps = self.sccs()
            cadj: list[set[int]] = [set() for _ in comps]
            for v in range(len(self.nodes)):
                cv = self._comp_of[v]
                for w, _ in self.adj[v]:
                    cw = self._comp_of[w]
                    if cw != cv:
                        cadj[cv].add(cw)
            reach = [0] * len(comps)
            # reverse topological emission: successors have lower indices
            for c in range(len(comps)):
                r = 1 << c
                for d in cadj[c]:
                    r |= reach[d]
                reach[c] = r
            self._reach = reach
        return self._reach

    def reaches(self, src: int, dst: int) -> bool:
        """Whether a domination path of length >= 1 leads from src to dst."""
        comps = self.sccs()
        cs, cd = self._comp_of[src], self._comp_of[dst]
        if cs == cd:
            return src != dst or len(comps[cs]) >= 2
        return bool(self._reach_sets()[cs] >> cd & 1)


def transitively_dominates(G: DominationGraph, a, b, strict_self: bool = False) -> bool:
    """Whether ``a`` transitively dominates ``b`` in the graph.

    With ``strict_self=False`` (chains of length >= 1, taken literally),
    ``a == b`` holds exactly when the structure lies on a domination cycle;
    ``strict_self=True`` reports the irreflexive reading instead.
    """
    ia, ib = G.node_id(a), G.node_id(b)
    if strict_self and ia == ib:
        return False
    return G.reaches(ib, ia)


def _to_uid_array(tables, pi, n):
    arr = np.empty(n, np.int32)
    for p in pi:
        u = tables.uid_of[p]
        for i in members(p):
            arr[i - 1] = u
    return arr


def _from_uid_row(tables, row):
    # agents appear in id order, so a part's first occurrence is at its least
    # member and collecting first occurrences yields the canonical tuple
    parts = []
    emitted = set()
    for u in row:
        if u not in emitted:
            emitted.add(u)
            parts.append(int(tables.masks[u]))
    return tuple(parts)


def grow_graph(g: Game, seeds: Iterable, limit: int = DEFAULT_LIMIT) -> DominationGraph:
    """Breadth-first closure of ``seeds`` under domination.

    Nodes are numbered by discovery order starting from the canonically
    sorted seeds; successor edges per node come in ascending via order.
    """
    tables = g.tables()
    n = g.n
    seed_structs = sorted(
        {structure_from_parts(g, pi) for pi in seeds}, key=structure_key
    )
    nodes: list[tuple[int, ...]] = []
    adj: list[list[tuple[int, int]]] = []
    index: dict[tuple[int, ...], int] = {}
    queue: deque[int] = deque()

    def add_node(pi) -> int:
        if len(nodes) >= limit:
            raise LimitExceeded(f"domination graph exceeds {limit} nodes")
        v = len(nodes)
        nodes.append(pi)
        adj.append([])
        index[pi] = v
        queue.append(v)
        return v

    for pi in seed_structs:
        if pi not in index:
            add_node(pi)
    seed_ids = tuple(range(len(nodes)))

    expand = _kernels.expand
    while queue:
        v = queue.popleft()
        parts = _to_uid_array(tables, nodes[v], n)
        vias, succ = expand(parts, tables.rank, tables.masks, tables.k_uids, tables.sing_uid)
        out = adj[v]
        for r in range(vias.shape[0]):
            pi2 = _from_uid_row(tables, succ[r])
            w = index.get(pi2)
            if w is None:
                w = add_node(pi2)
            out.append((w, int(tables.masks[vias[r]])))
    return DominationGraph(nodes, adj, seed_ids)


def to_dot(G: DominationGraph, highlight: Iterable[int] = ()) -> str:
    """Graphviz rendering: nodes labeled with the canonical structure,
    edges with the via coalition, highlighted nodes filled."""
    marked = set(highlight)
    n_agents = max((max(members(p)) for pi in G.nodes for p in pi), default=1)
    lines = ["digraph domination {", "  rankdir=LR;", '  node [shape=box, fontname="monospace"];']
    for v, pi in enumerate(G.nodes):
        style = ' style=filled fillcolor="lightsteelblue"' if v in marked else ""
        lines.append(f'  n{v} [label="{render_structure(pi)}"{style}];')
    for v, out in enumerate(G.adj):
        for w, via in out:
            lines.append(f'  n{v} -> n{w} [label="{compact_coalition(via, n_agents)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
