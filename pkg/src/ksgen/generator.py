"""Component-master generation.

Builds every ray expressible over a finite component set, finds all
orthogonal n-tuples (bases) among them, assembles the master hypergraph,
and splits it into connected components flagged KS / non-KS.

Orthogonality testing is exact: rays are lifted to a common conductor and
scaled to integer coefficient matrices, and Hermitian inner products are
evaluated as integer polynomial products reduced modulo the cyclotomic
polynomial.  numpy only batches the integer arithmetic; no floats are
involved.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import colorability
from .field import ComponentSet, FieldScalar, Ray, _context
from .mmp import Coordinatization, Hypergraph


def enumerate_rays(components: ComponentSet, n: int) -> list[Ray]:
    """All projectively distinct nonzero n-vectors over the component set."""
    return _ray_pool(components, n).rays


class _RayPool:
    """Deduplicated rays plus the bookkeeping needed downstream."""

    __slots__ = ("components", "dimension", "rays", "sources", "keys")

    def __init__(self, components: ComponentSet, n: int):
        if n < 2:
            raise ValueError(f"dimension {n} below 2")
        self.components = components
        self.dimension = n
        values = components.values
        conductor = components.conductor
        phi = _context(conductor).phi
        zero = tuple([Fraction(0)] * phi)
        nonzero = [idx for idx, v in enumerate(values) if not v.is_zero()]
        if not nonzero:
            raise ValueError("component set has no nonzero element")
        # scale_table[f][j] = coefficients of values[j] / values[f].
        scale_table: dict[int, list[tuple[Fraction, ...]]] = {}
        for f in nonzero:
            inv = values[f].inverse()
            scale_table[f] = [(v * inv).coeffs for v in values]
        seen: dict[tuple, tuple[int, ...]] = {}
        nonzero_set = set(nonzero)
        for tup in itertools.product(range(len(values)), repeat=n):
            first = next((j for j, t in enumerate(tup) if t in nonzero_set), None)
            if first is None:
                continue
            row = scale_table[tup[first]]
            key = tuple(zero if t not in nonzero_set else row[t] for t in tup)
            if key not in seen:
                seen[key] = tup
        ordered = sorted(seen.items(), key=lambda kv: kv[0])
        rays = []
        sources = []
        for key, tup in ordered:
            comps = tuple(FieldScalar(conductor, coeffs) for coeffs in key)
            rays.append(Ray(comps))
            sources.append(tup)
        self.rays = rays
        self.sources = sources
        self.keys = [key for key, _ in ordered]

    def source_vector(self, ray_index: int) -> tuple[FieldScalar, ...]:
        tup = self.sources[ray_index]
        return tuple(self.components.values[t] for t in tup)

    def source_surface(self, ray_index: int) -> tuple[str, ...]:
        tup = self.sources[ray_index]
        return tuple(self.components.surfaces[t] for t in tup)


def _ray_pool(components: ComponentSet, n: int) -> _RayPool:
    return _RayPool(components, n)


def orthogonality_bitsets(rays: Sequence[Ray]) -> list[int]:
    """adjacency[i] has bit j set iff rays i and j are orthogonal."""
    count = len(rays)
    if count == 0:
        return []
    n = rays[0].n
    conductor = math.lcm(*(c.conductor for r in rays for c in r.components))
    ctx = _context(conductor)
    phi = ctx.phi
    # Integer coefficient matrices; per-ray scaling is projectively harmless.
    mats = np.zeros((count, n, phi), dtype=np.int64)
    for idx, ray in enumerate(rays):
        lifted = [c.lift(conductor) for c in ray.components]
        denom = math.lcm(*(f.denominator for c in lifted for f in c.coeffs))
        for ci, c in enumerate(lifted):
            for p, f in enumerate(c.coeffs):
                mats[idx, ci, p] = f * denom
    # Conjugation matrix: row p holds coefficients of zeta^(-p).
    conj = np.zeros((phi, phi), dtype=np.int64)
    for p in range(phi):
        conj[p, :] = ctx.power_table[(conductor - p) % conductor]
    conj_mats = np.einsum("inp,pq->inq", mats, conj)
    # Fold matrix: exponent e >= phi re-expressed over the power basis.
    fold = np.zeros((2 * phi - 1, phi), dtype=np.int64)
    for e in range(2 * phi - 1):
        fold[e, :] = ctx.power_table[e % conductor]
    adjacency = [0] * count
    block = max(1, min(256, (1 << 22) // max(1, count * phi * phi)))
    for start in range(0, count, block):
        stop = min(start + block, count)
        # prods[b, j, p, q] = sum over components of conj(u)[b,:,p] * v[j,:,q]
        prods = np.einsum("bnp,jnq->bjpq", conj_mats[start:stop], mats)
        b, j = prods.shape[0], prods.shape[1]
        sums = np.zeros((b, j, 2 * phi - 1), dtype=np.int64)
        for p in range(phi):
            sums[:, :, p:p + phi] += prods[:, :, p, :]
        reduced = np.einsum("bje,ep->bjp", sums, fold)
        zero_rows = ~reduced.any(axis=2)
        for bi in range(b):
            i = start + bi
            row = zero_rows[bi]
            row[i] = False
            mask = 0
            for j_idx in np.flatnonzero(row):
                mask |= 1 << int(j_idx)
            adjacency[i] = mask
    return adjacency


def _cliques(
    adjacency: Sequence[int],
    size: int,
    start: int = 0,
    progress: Optional[Callable[[int], None]] = None,
) -> Iterable[tuple[int, ...]]:
    """All index-ascending cliques of exactly `size` vertices."""
    count = len(adjacency)
    stack: list[int] = []

    def extend(cand: int):
        depth = len(stack)
        if depth == size:
            yield tuple(stack)
            return
        remaining = cand
        while remaining:
            bit = remaining & -remaining
            v = bit.bit_length() - 1
            remaining ^= bit
            nxt = cand & adjacency[v] & ~((bit << 1) - 1)
            if nxt.bit_count() >= size - depth - 1 or depth + 1 == size:
                stack.append(v)
                yield from extend(nxt)
                stack.pop()

    for first in range(start, count):
        if progress is not None:
            progress(first)
        above = adjacency[first] >> (first + 1) << (first + 1)
        if above.bit_count() >= size - 1:
            stack.append(first)
            yield from extend(above)
            stack.pop()


def enumerate_bases(
    rays: Sequence[Ray],
    n: int,
    adjacency: Optional[Sequence[int]] = None,
) -> list[tuple[int, ...]]:
    """Every size-n subset of mutually orthogonal rays, as index tuples."""
    if adjacency is None:
        adjacency = orthogonality_bitsets(rays)
    return list(_cliques(adjacency, n))


def split_components(h: Hypergraph) -> list[Hypergraph]:
    """Partition the edges into connected components (shared-vertex)."""
    parent = list(range(h.m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for idx, edge in enumerate(h.edges):
        for v in edge:
            if v in owner:
                ra, rb = find(owner[v]), find(idx)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[v] = idx
    groups: dict[int, list[int]] = {}
    for idx in range(h.m):
        groups.setdefault(find(idx), []).append(idx)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    return [h.restrict(g) for g in ordered]


@dataclass
class MasterPart:
    """One connected component of an assembled master."""

    hypergraph: Hypergraph
    coordinatization: Coordinatization
    is_ks: bool

    @property
    def k(self) -> int:
        return self.hypergraph.k

    @property
    def m(self) -> int:
        return self.hypergraph.m


@dataclass
class MasterBuild:
    """Full result of a component-master generation run."""

    components: ComponentSet
    dimension: int
    rays: list[Ray]
    bases: list[tuple[int, ...]]
    parts: list[MasterPart]

    def ks_parts(self) -> list[MasterPart]:
        return [p for p in self.parts if p.is_ks]


def build_master(components: ComponentSet, n: int) -> MasterBuild:
    """Generate rays, bases, and the split, flagged master hypergraphs."""
    pool = _ray_pool(components, n)
    adjacency = orthogonality_bitsets(pool.rays)
    bases = list(_cliques(adjacency, n))
    used = sorted({idx for base in bases for idx in base})
    label_of = {ray_idx: pos for pos, ray_idx in enumerate(used)}
    edges = [tuple(label_of[i] for i in base) for base in bases]
    parts: list[MasterPart] = []
    if edges:
        master = Hypergraph(edges, dimension=n, _validate=False)
        for component in split_components(master):
            vectors = {}
            surfaces = {}
            for label in component.vertices:
                ray_idx = used[label]
                vectors[label] = pool.source_vector(ray_idx)
                surfaces[label] = pool.source_surface(ray_idx)
            coord = Coordinatization(vectors, surfaces)
            parts.append(
                MasterPart(
                    hypergraph=component,
                    coordinatization=coord,
                    is_ks=colorability.is_ks(component),
                )
            )
    return MasterBuild(
        components=components,
        dimension=n,
        rays=pool.rays,
        bases=bases,
        parts=parts,
    )


def assemble_master(components: ComponentSet, n: int) -> list[MasterPart]:
    """Connected master components with coordinatizations and KS flags."""
    return build_master(components, n).parts
