"""Decide the KS (noncolorability) property of MMP hypergraphs.

A hypergraph has the KS property iff no {0,1} assignment to its vertices
gives every edge exactly one vertex at 1 (no two 1s within an edge, no
all-0 edge).  Noncolorability is decided in two stages:

* a GF(2) parity test: exactly one 1 per edge forces odd parity on every
  edge, so if the mod-2 linear system (edge incidence) = 1 is infeasible
  the hypergraph is noncolorable.  The elimination also yields an edge
  subset whose incidences cancel while the right-hand sides sum to 1,
  which is itself a noncolorable core;
* otherwise a deterministic backtracking search with unit propagation:
  a 1 forces 0 on all co-edge vertices; an edge with all but one vertex
  at 0 forces the last to 1.  Branching picks the unsatisfied edge with
  the fewest assignable vertices, ties broken by edge index.  Conflicts
  are analyzed back through their propagation reasons, enabling
  conflict-directed backjumping past decisions they do not involve.

An unsatisfiable run also yields an unsat core: a subset of edges that is
itself noncolorable, assembled from the parity certificate or from the
reasons driving each search conflict.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .mmp import Hypergraph

Assignment = dict[int, int]


def _parity_core(edge_masks: Sequence[int]) -> Optional[set[int]]:
    """Edge subset proving mod-2 infeasibility, or None if feasible.

    Rows carry (incidence << 1 | rhs) plus a companion bitmask recording
    which original edges were XORed in, so a contradiction row names the
    edges of a noncolorable subsystem.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for idx, mask in enumerate(edge_masks):
        row = (mask << 1) | 1
        combo = 1 << idx
        while True:
            body = row >> 1
            if body == 0:
                if row & 1:
                    out = set()
                    while combo:
                        bit = combo & -combo
                        out.add(bit.bit_length() - 1)
                        combo ^= bit
                    return out
                break
            top = body.bit_length() - 1
            entry = pivots.get(top)
            if entry is None:
                pivots[top] = (row, combo)
                break
            row ^= entry[0]
            combo ^= entry[1]
    return None


class _Conflict:
    """Edges and decision vertices a refutation depends on."""

    __slots__ = ("edges", "decisions")

    def __init__(self, edges: set[int], decisions: set[int]):
        self.edges = edges
        self.decisions = decisions


def solve_masks(
    edge_masks: Sequence[int],
    covers: Sequence[Sequence[int]],
    k: int,
    want_core: bool = False,
) -> tuple[Optional[int], Optional[set[int]]]:
    """Search for a valid assignment over bitmask edges.

    Returns (ones_mask, None) when an assignment exists, else (None, core)
    where core is a noncolorable edge subset when want_core, else None.
    """
    if not edge_masks:
        return 0, None

    parity = _parity_core(edge_masks)
    if parity is not None:
        return None, parity if want_core else None

    ones = 0
    zeros = 0
    # reason[v]: None for branch decisions, else (edge, cause_vertex|None);
    # cause None marks the unit rule (e's other vertices were all 0).
    reason: list[Optional[tuple[int, Optional[int]]]] = [None] * k
    trail: list[int] = []

    def bits(mask: int) -> list[int]:
        out = []
        while mask:
            bit = mask & -mask
            out.append(bit.bit_length() - 1)
            mask ^= bit
        return out

    def justify(conflict: _Conflict, seeds: list[int]) -> None:
        """Fold the reason chains of assigned seed vertices into conflict."""
        stack = list(seeds)
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            r = reason[v]
            if r is None:
                conflict.decisions.add(v)
                continue
            e, cause = r
            conflict.edges.add(e)
            if cause is not None:
                stack.append(cause)
            else:
                rest = edge_masks[e] & ~(1 << v)
                while rest:
                    bit = rest & -rest
                    stack.append(bit.bit_length() - 1)
                    rest ^= bit

    def assign(v: int, value: int, why) -> Optional[_Conflict]:
        """Assign v (with propagation); returns a conflict or None."""
        nonlocal ones, zeros
        queue = [(v, value, why)]
        while queue:
            u, val, r = queue.pop()
            bit = 1 << u
            if val == 1:
                if zeros & bit:
                    conflict = _Conflict(set(), set())
                    if r is not None:
                        conflict.edges.add(r[0])
                        justify(conflict, bits(edge_masks[r[0]] & ~bit))
                    justify(conflict, [u])
                    return conflict
                if ones & bit:
                    continue
                ones |= bit
                reason[u] = r
                trail.append(u)
                for e in covers[u]:
                    others = edge_masks[e] & ~bit
                    clash = others & ones
                    if clash:
                        conflict = _Conflict({e}, set())
                        justify(conflict, [u, bits(clash)[0]])
                        return conflict
                    fresh = others & ~zeros
                    while fresh:
                        fbit = fresh & -fresh
                        queue.append((fbit.bit_length() - 1, 0, (e, u)))
                        fresh ^= fbit
            else:
                if ones & bit:
                    conflict = _Conflict(set(), set())
                    if r is not None:
                        conflict.edges.add(r[0])
                        if r[1] is not None:
                            justify(conflict, [r[1]])
                    justify(conflict, [u])
                    return conflict
                if zeros & bit:
                    continue
                zeros |= bit
                reason[u] = r
                trail.append(u)
                for e in covers[u]:
                    mask = edge_masks[e]
                    if mask & ones:
                        continue
                    free = mask & ~zeros
                    if free == 0:
                        conflict = _Conflict({e}, set())
                        justify(conflict, bits(mask))
                        return conflict
                    if free & (free - 1) == 0:
                        queue.append((free.bit_length() - 1, 1, (e, None)))
        return None

    def undo(mark: int) -> None:
        nonlocal ones, zeros
        while len(trail) > mark:
            u = trail.pop()
            bit = 1 << u
            ones &= ~bit
            zeros &= ~bit
            reason[u] = None

    def search():
        """-> (ones_mask, None) on SAT, (None, _Conflict) on UNSAT."""
        best_e = -1
        best_free = 0
        best_count = 1 << 30
        for e, mask in enumerate(edge_masks):
            if mask & ones:
                continue
            free = mask & ~zeros
            count = free.bit_count()
            if count < best_count:
                best_e, best_free, best_count = e, free, count
                if count <= 1:
                    break
        if best_e < 0:
            return ones, None
        node = _Conflict({best_e}, set())
        justify(node, bits(edge_masks[best_e] & zeros))
        for v in bits(best_free):
            mark = len(trail)
            conflict = assign(v, 1, None)
            if conflict is None:
                res, sub = search()
                if res is not None:
                    return res, None
                conflict = sub
            undo(mark)
            if v not in conflict.decisions:
                # The refutation never used this decision: it refutes the
                # whole node, so skip the remaining siblings (backjump).
                return None, conflict
            node.edges |= conflict.edges
            node.decisions |= conflict.decisions
            node.decisions.discard(v)
        return None, node

    result, conflict = search()
    if result is not None:
        return result, None
    return None, conflict.edges if want_core else None


def _index_instance(h: Hypergraph):
    """Vertex-indexed edge masks and vertex->edges covers."""
    index = {v: i for i, v in enumerate(h.vertices)}
    k = len(index)
    edge_masks = []
    covers: list[list[int]] = [[] for _ in range(k)]
    for e_idx, edge in enumerate(h.edges):
        mask = 0
        for v in edge:
            i = index[v]
            mask |= 1 << i
            covers[i].append(e_idx)
        edge_masks.append(mask)
    return index, edge_masks, covers


def find_assignment(h: Hypergraph) -> Optional[Assignment]:
    """A valid assignment (witness of colorability), or None if KS."""
    index, edge_masks, covers = _index_instance(h)
    ones, _ = solve_masks(edge_masks, covers, len(index))
    if ones is None:
        return None
    return {v: (ones >> i) & 1 for v, i in index.items()}


def is_ks(h: Hypergraph) -> bool:
    """True iff h admits no valid assignment (Kochen-Specker property)."""
    index, edge_masks, covers = _index_instance(h)
    ones, _ = solve_masks(edge_masks, covers, len(index))
    return ones is None


def verify_assignment(h: Hypergraph, a: Assignment) -> bool:
    """Check that every edge has exactly one vertex assigned 1."""
    missing = [v for v in h.vertices if v not in a]
    if missing:
        raise ValueError(f"assignment misses vertices {missing}")
    for edge in h.edges:
        if sum(a[v] for v in edge) != 1:
            return False
    return True
