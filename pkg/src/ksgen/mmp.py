"""Reader/writer for the one-line ASCII encoding of MMP hypergraphs.

A hypergraph line lists its edges as concatenated vertex labels, separated
by commas and terminated by '.'.  An optional coordinatization block
'{label={expr,...,expr},...}' terminated by '.' may follow, separated from
the edge part by whitespace.  Lines beginning with '#' are comments, and
anything after ' #' past the final '.' is ignored (extension used for
provenance headers and witness annotations).
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Optional, Sequence

from .field import FieldScalar, Ray, from_expression, render_scalar

#: The 90-character label alphabet, in rendering order.  ',', '.' and '+'
#: are reserved delimiters and never label characters.
ALPHABET = (
    "123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~"
)
_CHAR_INDEX = {ch: idx for idx, ch in enumerate(ALPHABET)}

assert len(ALPHABET) == 90


class MMPError(ValueError):
    """Malformed MMP line or invalid hypergraph structure."""


def render_label(index: int) -> str:
    """Label for a vertex index; indices >= 90 gain '+' prefixes."""
    if index < 0:
        raise MMPError(f"negative vertex index {index}")
    runs, base = divmod(index, 90)
    return "+" * runs + ALPHABET[base]


def parse_label(text: str) -> int:
    """Inverse of render_label for a single complete label."""
    runs = 0
    while runs < len(text) and text[runs] == "+":
        runs += 1
    if len(text) - runs != 1:
        raise MMPError(f"malformed label {text!r}")
    base = text[-1]
    if base not in _CHAR_INDEX:
        raise MMPError(f"unknown label character {base!r}")
    return runs * 90 + _CHAR_INDEX[base]


def _scan_labels(text: str) -> list[int]:
    """Split a run of concatenated labels into vertex indices."""
    labels = []
    i = 0
    while i < len(text):
        runs = 0
        while i < len(text) and text[i] == "+":
            runs += 1
            i += 1
        if i >= len(text):
            raise MMPError(f"dangling '+' in {text!r}")
        ch = text[i]
        if ch not in _CHAR_INDEX:
            raise MMPError(f"unknown label character {ch!r} in {text!r}")
        labels.append(runs * 90 + _CHAR_INDEX[ch])
        i += 1
    return labels


class Hypergraph:
    """MMP hypergraph: uniform edge size n, edges intersecting in <= n-2."""

    __slots__ = ("dimension", "edges", "_vertices", "_hash")

    def __init__(
        self,
        edges: Iterable[Sequence[int]],
        dimension: Optional[int] = None,
        _validate: bool = True,
    ):
        edges = tuple(tuple(e) for e in edges)
        if dimension is None:
            if not edges:
                raise MMPError("dimension required for an empty hypergraph")
            dimension = len(edges[0])
        self.dimension = dimension
        self.edges = edges
        self._vertices = None
        self._hash = None
        if _validate:
            self._validate()

    def _validate(self):
        n = self.dimension
        if n < 2:
            raise MMPError(f"dimension {n} below 2")
        seen_sets = {}
        subsets = {}
        for idx, edge in enumerate(self.edges):
            if len(edge) != n:
                raise MMPError(
                    f"edge {idx} has {len(edge)} vertices, expected {n}"
                )
            es = frozenset(edge)
            if len(es) != n:
                raise MMPError(f"edge {idx} repeats a vertex")
            if es in seen_sets:
                raise MMPError(f"edges {seen_sets[es]} and {idx} are duplicates")
            seen_sets[es] = idx
            # Two distinct edges intersect in >= n-1 vertices iff they share
            # an (n-1)-subset; detect via subset collisions in O(m*n).
            ordered = tuple(sorted(edge))
            for drop in range(n):
                key = ordered[:drop] + ordered[drop + 1:]
                other = subsets.get(key)
                if other is not None and other != idx:
                    raise MMPError(
                        f"edges {other} and {idx} intersect in more than "
                        f"{n - 2} vertices"
                    )
                subsets[key] = idx

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertex labels in first-appearance order of the edge list."""
        if self._vertices is None:
            seen = []
            have = set()
            for edge in self.edges:
                for v in edge:
                    if v not in have:
                        have.add(v)
                        seen.append(v)
            self._vertices = tuple(seen)
        return self._vertices

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in self.edges]

    def restrict(self, edge_indices: Iterable[int]) -> "Hypergraph":
        """Subhypergraph on a subset of edges (vertices induced)."""
        picked = tuple(self.edges[i] for i in edge_indices)
        return Hypergraph(picked, dimension=self.dimension, _validate=False)

    def relabel(self, mapping: dict[int, int]) -> "Hypergraph":
        return Hypergraph(
            tuple(tuple(mapping[v] for v in e) for e in self.edges),
            dimension=self.dimension,
            _validate=False,
        )

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.dimension == other.dimension and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dimension, self.edges))
        return self._hash

    def __repr__(self):
        return f"Hypergraph(k={self.k}, m={self.m}, n={self.dimension})"


class Coordinatization:
    """Assignment of an exact vector (and its surface syntax) per vertex."""

    __slots__ = ("vectors", "surfaces", "_rays")

    def __init__(
        self,
        vectors: dict[int, tuple[FieldScalar, ...]],
        surfaces: Optional[dict[int, tuple[str, ...]]] = None,
    ):
        self.vectors = dict(vectors)
        self.surfaces = dict(surfaces) if surfaces is not None else None
        self._rays = None

    def ray(self, vertex: int) -> Ray:
        if self._rays is None:
            self._rays = {}
        got = self._rays.get(vertex)
        if got is None:
            got = Ray(self.vectors[vertex])
            self._rays[vertex] = got
        return got

    def surface(self, vertex: int) -> tuple[str, ...]:
        if self.surfaces is not None and vertex in self.surfaces:
            return self.surfaces[vertex]
        return tuple(render_scalar(c) for c in self.vectors[vertex])

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.vectors

    def __len__(self):
        return len(self.vectors)

    def items(self):
        return self.vectors.items()

    def relabel(self, mapping: dict[int, int]) -> "Coordinatization":
        vectors = {mapping[v]: vec for v, vec in self.vectors.items()}
        surfaces = None
        if self.surfaces is not None:
            surfaces = {mapping[v]: s for v, s in self.surfaces.items()}
        return Coordinatization(vectors, surfaces)

    def __repr__(self):
        return f"Coordinatization({len(self.vectors)} vertices)"


def _parse_coordinatization_block(block: str, h: Hypergraph) -> Coordinatization:
    """Parse the inside of a '{...}' coordinatization block."""
    vectors: dict[int, tuple[FieldScalar, ...]] = {}
    surfaces: dict[int, tuple[str, ...]] = {}
    i = 0
    n = h.dimension
    length = len(block)
    vertex_set = set(h.vertices)
    while i < length:
        # Label: characters up to the first '=' that is followed by '{'.
        start = i
        while i < length and not (block[i] == "=" and i + 1 < length and block[i + 1] == "{"):
            i += 1
        if i >= length:
            raise MMPError(f"unterminated coordinatization entry near {block[start:]!r}")
        label_text = block[start:i]
        labels = _scan_labels(label_text)
        if len(labels) != 1:
            raise MMPError(f"expected a single vertex label, got {label_text!r}")
        vertex = labels[0]
        if vertex not in vertex_set:
            raise MMPError(
                f"coordinatization covers vertex {render_label(vertex)!r} "
                "not present in the hypergraph"
            )
        if vertex in vectors:
            raise MMPError(f"vertex {render_label(vertex)!r} coordinatized twice")
        i += 2  # consume '={'
        exprs = []
        depth = 0
        start = i
        while i < length:
            ch = block[i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                exprs.append(block[start:i])
                start = i + 1
            elif ch == "}" and depth == 0:
                exprs.append(block[start:i])
                break
            i += 1
        else:
            raise MMPError("unterminated vector in coordinatization block")
        i += 1  # consume '}'
        if len(exprs) != n:
            raise MMPError(
                f"vector for {render_label(vertex)!r} has {len(exprs)} "
                f"components, expected {n}"
            )
        try:
            vec = tuple(from_expression(e) for e in exprs)
        except ValueError as exc:
            raise MMPError(
                f"bad component expression for {render_label(vertex)!r}: {exc}"
            ) from exc
        if all(c.is_zero() for c in vec):
            raise MMPError(f"zero vector for {render_label(vertex)!r}")
        vectors[vertex] = vec
        surfaces[vertex] = tuple(exprs)
        if i < length:
            if block[i] != ",":
                raise MMPError(f"expected ',' between entries, got {block[i]!r}")
            i += 1
    missing = vertex_set - vectors.keys()
    if missing:
        names = ",".join(render_label(v) for v in sorted(missing))
        raise MMPError(f"coordinatization misses vertices {names}")
    return Coordinatization(vectors, surfaces)


def parse_line(
    text: str, expected_dimension: Optional[int] = None
) -> tuple[Hypergraph, Optional[Coordinatization]]:
    """Parse one MMP line into a hypergraph and optional coordinatization."""
    line = text.strip()
    if not line:
        raise MMPError("empty line")
    if line.startswith("#"):
        raise MMPError("comment line has no hypergraph")
    dot = line.find(".")
    if dot < 0:
        raise MMPError("missing '.' terminating the edge list")
    edge_part = line[:dot]
    if not edge_part:
        raise MMPError("empty edge list")
    edges = []
    for chunk in edge_part.split(","):
        if not chunk:
            raise MMPError("empty edge in edge list")
        edges.append(_scan_labels(chunk))
    sizes = {len(e) for e in edges}
    if len(sizes) != 1:
        raise MMPError(f"nonuniform edge sizes {sorted(sizes)}")
    n = sizes.pop()
    if expected_dimension is not None and n != expected_dimension:
        raise MMPError(f"edge size {n}, expected {expected_dimension}")
    h = Hypergraph(edges, dimension=n)

    rest = line[dot + 1:].lstrip()
    coord = None
    if rest.startswith("{"):
        end = rest.rfind("}.")
        if end < 0:
            raise MMPError("unterminated coordinatization block")
        coord = _parse_coordinatization_block(rest[1:end], h)
        rest = rest[end + 2:].lstrip()
    if rest and not rest.startswith("#"):
        raise MMPError(f"trailing input {rest!r}")
    return h, coord


def serialize(h: Hypergraph, c: Optional[Coordinatization] = None) -> str:
    """Render the MMP line; inverse of parse_line."""
    edge_part = ",".join("".join(render_label(v) for v in e) for e in h.edges) + "."
    if c is None:
        return edge_part
    vertex_set = set(h.vertices)
    if set(c.vectors.keys()) != vertex_set:
        raise MMPError("coordinatization does not cover exactly the vertex set")
    entries = []
    for v in h.vertices:
        exprs = ",".join(c.surface(v))
        entries.append(f"{render_label(v)}={{{exprs}}}")
    return edge_part + " {" + ",".join(entries) + "}."


def shuffle_permutation(h: Hypergraph, seed: int) -> dict[int, int]:
    """Seeded random relabeling of h's vertices among themselves."""
    rng = random.Random(seed)
    labels = list(h.vertices)
    targets = labels[:]
    rng.shuffle(targets)
    return dict(zip(labels, targets))


def shuffle(h: Hypergraph, seed: int) -> Hypergraph:
    """Isomorphic copy under a seeded relabeling and reordering."""
    rng = random.Random(seed)
    perm = shuffle_permutation(h, seed)
    edges = [[perm[v] for v in e] for e in h.edges]
    for e in edges:
        rng.shuffle(e)
    rng.shuffle(edges)
    return Hypergraph(edges, dimension=h.dimension, _validate=False)


def read_stream(
    lines: Iterable[str], expected_dimension: Optional[int] = None
) -> Iterator[tuple[int, Hypergraph, Optional[Coordinatization]]]:
    """Parse a line stream, skipping comments and blank lines."""
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            h, c = parse_line(stripped, expected_dimension)
        except MMPError as exc:
            raise MMPError(f"line {lineno}: {exc}") from exc
        yield lineno, h, c
