"""Canonical labeling and isomorphism testing for MMP hypergraphs.

Canonical forms use partition refinement on the bipartite vertex/edge
incidence structure, with backtracking over the members of the first
smallest refinement-stable non-singleton vertex class.  Among all complete
labelings reached, the lexicographically least serialized MMP line is the
canonical form, so equal strings mean isomorphic hypergraphs.
"""

from __future__ import annotations

from typing import Optional

from .mmp import Coordinatization, Hypergraph, render_label, serialize


def _refine(
    vcol: list[int],
    ecol: list[int],
    edges: list[tuple[int, ...]],
    covers: list[list[int]],
) -> tuple[list[int], list[int]]:
    """Iterate color refinement until the partition stabilizes."""
    n_classes = -1
    while True:
        ekeys = [(ecol[i], tuple(sorted(vcol[v] for v in e))) for i, e in enumerate(edges)]
        rank = {key: r for r, key in enumerate(sorted(set(ekeys)))}
        ecol = [rank[key] for key in ekeys]
        vkeys = [
            (vcol[v], tuple(sorted(ecol[e] for e in covers[v])))
            for v in range(len(vcol))
        ]
        rank = {key: r for r, key in enumerate(sorted(set(vkeys)))}
        vcol = [rank[key] for key in vkeys]
        classes = len(set(vcol)) + len(set(ecol))
        if classes == n_classes:
            return vcol, ecol
        n_classes = classes


def _initial_colors(edges: list[tuple[int, ...]], k: int):
    covers: list[list[int]] = [[] for _ in range(k)]
    masks = []
    for i, e in enumerate(edges):
        mask = 0
        for v in e:
            covers[v].append(i)
            mask |= 1 << v
        masks.append(mask)
    keys = []
    for v in range(k):
        inc = covers[v]
        inter = sorted(
            (masks[inc[a]] & masks[inc[b]]).bit_count()
            for a in range(len(inc))
            for b in range(a + 1, len(inc))
        )
        keys.append((len(inc), tuple(inter)))
    rank = {key: r for r, key in enumerate(sorted(set(keys)))}
    vcol = [rank[key] for key in keys]
    return vcol, [0] * len(edges), covers


def _leaf_string(vcol: list[int], edges: list[tuple[int, ...]]) -> str:
    relabeled = sorted(tuple(sorted(vcol[v] for v in e)) for e in edges)
    return (
        ",".join("".join(render_label(v) for v in e) for e in relabeled) + "."
    )


def _search(
    vcol: list[int],
    ecol: list[int],
    edges: list[tuple[int, ...]],
    covers: list[list[int]],
    best: list,
):
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(vcol):
        classes.setdefault(c, []).append(v)
    target = None
    for c in sorted(classes):
        members = classes[c]
        if len(members) > 1:
            if target is None or len(members) < len(target[1]):
                target = (c, members)
    if target is None:
        s = _leaf_string(vcol, edges)
        if best[0] is None or s < best[0]:
            best[0] = s
            best[1] = list(vcol)
        return
    fresh = max(vcol) + 1
    for v in target[1]:
        v2 = list(vcol)
        v2[v] = fresh
        r_v, r_e = _refine(v2, ecol, edges, covers)
        _search(r_v, r_e, edges, covers, best)


def _canonical_labeling(h: Hypergraph) -> tuple[str, dict[int, int]]:
    if h.m == 0:
        return "", {}
    index = {v: i for i, v in enumerate(h.vertices)}
    edges = [tuple(index[v] for v in e) for e in h.edges]
    vcol, ecol, covers = _initial_colors(edges, len(index))
    vcol, ecol = _refine(vcol, ecol, edges, covers)
    best: list = [None, None]
    _search(vcol, ecol, edges, covers, best)
    relabeling = {v: best[1][index[v]] for v in h.vertices}
    return best[0], relabeling


def canonical_form(h: Hypergraph) -> str:
    """Label-invariant serialized form: equal iff isomorphic."""
    return _canonical_labeling(h)[0]


def canonicalize(
    h: Hypergraph, c: Optional[Coordinatization] = None
) -> tuple[Hypergraph, Optional[Coordinatization]]:
    """Relabeled copy in canonical order, optionally carrying rays along."""
    text, relabeling = _canonical_labeling(h)
    edges = sorted(tuple(sorted(relabeling[v] for v in e)) for e in h.edges)
    hc = Hypergraph(edges, dimension=h.dimension, _validate=False)
    cc = c.relabel(relabeling) if c is not None else None
    return hc, cc


def _invariants(h: Hypergraph):
    degrees: dict[int, int] = {}
    for e in h.edges:
        for v in e:
            degrees[v] = degrees.get(v, 0) + 1
    sets = h.edge_sets()
    inter = sorted(
        len(sets[a] & sets[b])
        for a in range(len(sets))
        for b in range(a + 1, len(sets))
    )
    return (
        h.dimension,
        h.k,
        h.m,
        tuple(sorted(degrees.values())),
        tuple(inter),
    )


def are_isomorphic(h1: Hypergraph, h2: Hypergraph) -> bool:
    """Exact isomorphism test via canonical forms, with cheap prefilters."""
    if _invariants(h1) != _invariants(h2):
        return False
    return canonical_form(h1) == canonical_form(h2)
