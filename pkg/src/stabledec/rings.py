"""Rings of coalitions and ring components of absorbing sets.

A ring is an ordered tuple of at least three coalitions where each one is
unanimously preferred to its predecessor, cyclically. A ring component is a
collection of permissible coalitions that (i) pairwise transitively prefer
each other within the collection and (ii) break every one of their own
maximal sets from within. Ring components are recovered from a non-trivial
absorbing set by extracting a ring from a cycle through every edge and
merging rings that share a coalition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Game, intersects, render_coalition, unanimously_prefers
from .dynamics import DominationGraph, dominate_via
from .errors import (
    NotACycle,
    NotARingComponent,
    NotBlocking,
    StartNotInCycle,
    TrivialAbsorbingSet,
    VerificationFailed,
)
from .structures import breaks_maximal_set, maximal_sets, render_structure


def is_ring(g: Game, seq: Sequence[int]) -> bool:
    """Whether the ordered coalitions form a ring (cyclic unanimous
    improvement; consecutive intersections not required)."""
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    J = len(seq)
    return all(unanimously_prefers(g, seq[(j + 1) % J], seq[j]) for j in range(J))


def is_proper_ring(g: Game, seq: Sequence[int]) -> bool:
    """A ring whose consecutive coalitions also share an agent, so every
    step is a genuine (non-vacuous) improvement."""
    if not is_ring(g, seq):
        return False
    J = len(seq)
    return all(intersects(seq[j], seq[(j + 1) % J]) for j in range(J))


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    """The lexicographically least rotation; rings compare equal exactly
    when their canonical rotations coincide."""
    seq = tuple(seq)
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def cyclically_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) == len(b) and canonical_rotation(a) == canonical_rotation(b)


def _via_between(g: Game, prev, nxt) -> int:
    prev_parts = set(prev)
    for c in nxt:
        if c.bit_count() >= 2 and c not in prev_parts:
            try:
                if dominate_via(g, prev, c) == nxt:
                    return c
            except NotBlocking:
                continue
    raise NotACycle(
        f"{render_structure(nxt)} does not dominate {render_structure(prev)}"
    )


def _ring_from_vias(vias: Sequence[int], start_idx: int) -> tuple[int, ...]:
    """Walk the via-coalitions of a cycle: from the current coalition jump to
    the nearest later via sharing an agent; stop at the first repeated value
    and return the segment strictly between the repeats."""
    J = len(vias)
    sel: list[int] = [vias[start_idx]]
    j = start_idx
    while True:
        cur = vias[j]
        nxt = None
        for r in range(1, J):
            t = (j + r) % J
            if vias[t] & cur:
                nxt = t
                break
        if nxt is None:
            raise NotACycle("a formed coalition is never met again along the cycle")
        val = vias[nxt]
        if val in sel:
            s = sel.index(val)
            return tuple(sel[s + 1 :] + [val])
        sel.append(val)
        j = nxt
        if len(sel) > J:
            raise NotACycle("ring extraction failed to close")


def extract_ring(g: Game, cycle: Sequence[tuple[int, ...]], start: int) -> tuple[int, ...]:
    """Extract a ring from a domination cycle, beginning the walk at the
    step that forms ``start``.

    ``cycle`` lists structures with each one dominating its predecessor,
    cyclically (the first dominates the last).
    """
    J = len(cycle)
    if J < 3 or len(set(cycle)) != J:
        raise NotACycle("a domination cycle has at least three distinct structures")
    vias = [_via_between(g, cycle[j - 1], cycle[j]) for j in range(J)]
    if start not in vias:
        raise StartNotInCycle(f"{render_coalition(start)} never forms along the cycle")
    return _ring_from_vias(vias, vias.index(start))


def is_ring_component(g: Game, coalitions: Iterable[int]) -> bool:
    """Whether the collection is a ring component: at least three
    permissible coalitions, pairwise mutual transitive preference within the
    collection, and every maximal set broken from within."""
    B = sorted(set(coalitions))
    if len(B) < 3 or any(c not in g._kset for c in B):
        return False
    # condition (i) as strong connectivity of the in-collection improvement
    # digraph: an edge d -> e when e beats d on a shared agent
    comps = _pref_digraph_sccs(g, B)
    if len(comps) != 1:
        return False
    # condition (ii): each maximal set must be broken by an outside member
    for mset in maximal_sets(B):
        inside = set(mset)
        if not any(breaks_maximal_set(g, r, mset) for r in B if r not in inside):
            return False
    return True


def _pref_digraph_sccs(g: Game, masks: Sequence[int]) -> list[list[int]]:
    """SCCs (lists of indices) of the unanimous-improvement digraph over
    ``masks``; iterative Tarjan, components in reverse topological order."""
    m = len(masks)
    adj: list[list[int]] = [[] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a != b and masks[a] & masks[b] and unanimously_prefers(g, masks[b], masks[a]):
                adj[a].append(b)
    index = [-1] * m
    low = [0] * m
    on = [False] * m
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(m):
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
            out = adj[v]
            for k in range(ptr, len(out)):
                w = out[k]
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
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comps


def classify_simple(g: Game, coalitions: Iterable[int]) -> bool:
    """Whether the ring component is simple: every in-component breaker of a
    maximal set intersects exactly one coalition of that set."""
    B = sorted(set(coalitions))
    if not is_ring_component(g, B):
        raise NotARingComponent("collection is not a ring component")
    for mset in maximal_sets(B):
        inside = set(mset)
        for r in B:
            if r in inside or not breaks_maximal_set(g, r, mset):
                continue
            if sum(1 for m in mset if m & r) != 1:
                return False
    return True


def compact_collection(g: Game, coalitions: Iterable[int]) -> list[tuple[int, ...]]:
    """The compact sets of a ring component: its maximal sets when simple,
    otherwise one singleton family per coalition."""
    B = sorted(set(coalitions))
    if classify_simple(g, B):
        return maximal_sets(B)
    return [(r,) for r in B]


@dataclass(frozen=True)
class RingComponent:
    coalitions: tuple[int, ...]
    simple: bool
    maximal: tuple[tuple[int, ...], ...]
    compact: tuple[tuple[int, ...], ...]


def component(g: Game, coalitions: Iterable[int]) -> RingComponent:
    """Analyze a ring component; raises ``NotARingComponent`` otherwise."""
    B = tuple(sorted(set(coalitions)))
    if not is_ring_component(g, B):
        raise NotARingComponent("collection is not a ring component")
    simple = classify_simple(g, B)
    return RingComponent(
        coalitions=B,
        simple=simple,
        maximal=tuple(maximal_sets(B)),
        compact=tuple(compact_collection(g, B)),
    )


def _cycle_vias_through(G: DominationGraph, u: int, v: int, via: int, inside: set[int]):
    """Vias of a cycle through edge ``u -> v``: the edge itself plus a
    shortest path ``v -> u`` found by BFS inside the component."""
    parent: dict[int, tuple[int, int] | None] = {v: None}
    order = deque([v])
    while order and u not in parent:
        x = order.popleft()
        for w, wv in G.adj[x]:
            if w in inside and w not in parent:
                parent[w] = (x, wv)
                order.append(w)
    if u not in parent:
        raise VerificationFailed("absorbing set is not strongly connected")
    rev = []
    cur = u
    while parent[cur] is not None:
        prev, wv = parent[cur]
        rev.append(wv)
        cur = prev
    # vias aligned with the cycle (v, ..., u): first the edge into v, then
    # the path steps in forward order
    return [via] + rev[::-1]


def ring_components_of(g: Game, absorbing, G: DominationGraph) -> list[RingComponent]:
    """All ring components carried by a non-trivial absorbing set.

    For every edge inside the set a cycle through it is completed with a
    shortest return path; rings are extracted from every start position of
    that cycle, merged on shared coalitions, and the merged families are
    re-verified before being returned.
    """
    if absorbing.trivial:
        raise TrivialAbsorbingSet("trivial absorbing sets carry no ring component")
    ids = [G.node_id(pi) for pi in absorbing.members]
    inside = set(ids)
    rings: set[tuple[int, ...]] = set()
    for u in ids:
        for v, via in G.adj[u]:
            if v not in inside:
                raise VerificationFailed("absorbing set has an outgoing edge")
            vias = _cycle_vias_through(G, u, v, via, inside)
            for s in range(len(vias)):
                rings.add(canonical_rotation(_ring_from_vias(vias, s)))
    # merge rings sharing a coalition, to a fixed point
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ring in sorted(rings):
        for c in ring:
            parent.setdefault(c, c)
        base = find(ring[0])
        for c in ring[1:]:
            r = find(c)
            if r != base:
                parent[r] = base
    groups: dict[int, set[int]] = {}
    for c in parent:
        groups.setdefault(find(c), set()).add(c)
    comps = []
    for fam in sorted(groups.values(), key=lambda s: tuple(sorted(s))):
        masks = tuple(sorted(fam))
        if not is_ring_component(g, masks):
            raise VerificationFailed(
                "merged ring family fails the ring component test"
            )
        comps.append(component(g, masks))
    return comps


def has_proper_ring(g: Game) -> bool:
    """Whether any proper ring exists, decided by brute-force closure of
    intersecting unanimous-improvement chains over the permissible set
    (chain length capped at |K|, enough for any simple cycle)."""
    ks = g.permissible
    m = len(ks)
    if m < 3:
        return False
    adj = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(m):
            if a != b and ks[a] & ks[b] and unanimously_prefers(g, ks[b], ks[a]):
                adj[a, b] = True
    reach = adj.copy()
    for _ in range(m):
        new = reach | (reach @ adj)
        if (new == reach).all():
            break
        reach = new
    # a coalition on a chain back to itself closes a cycle; 1- and 2-cycles
    # are impossible under strict preferences, so any hit is a ring
    return bool(np.diag(reach).any())
