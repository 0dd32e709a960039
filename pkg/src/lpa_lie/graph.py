"""Finite directed multigraphs with individually named edges.

This module owns the graph data model, the line-oriented text format used by
the command line tool, the adjacency/B-vector/presentation-matrix invariants,
and generators for the standard graph families (roses, oriented lines, and
the two- and four-vertex families used throughout the test suite).

Vertex declaration order is significant: it fixes the row/column order of
every matrix and vector derived from a graph.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "VertexId",
    "EdgeId",
    "Graph",
    "GraphError",
    "GraphParseError",
    "adjacency_matrix",
    "b_vectors",
    "m_matrix",
    "graph_from_adjacency",
    "parse_graph",
    "serialize_graph",
    "family",
    "family_names",
]


class GraphError(ValueError):
    """Invalid graph data (construction or family parameters)."""


class GraphParseError(GraphError):
    """Malformed graph text.  Carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None and column is not None:
            full = f"line {line}, column {column}: {message}"
        elif line is not None:
            full = f"line {line}: {message}"
        else:
            full = message
        super().__init__(full)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class VertexId:
    """A vertex: 0-based position plus a label unique within its graph."""

    index: int
    label: str


@dataclass(frozen=True)
class EdgeId:
    """A directed edge with its own label; loops and parallels are fine."""

    index: int
    label: str
    source: VertexId
    target: VertexId


@dataclass(frozen=True)
class Graph:
    """A finite directed multigraph.

    Vertices and edges are kept in declaration order; that order is the
    canonical index order used by every derived matrix and vector.
    """

    vertices: tuple[VertexId, ...]
    edges: tuple[EdgeId, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("a graph must have at least one vertex")
        seen: set[str] = set()
        for i, v in enumerate(self.vertices):
            if v.index != i:
                raise GraphError(f"vertex {v.label!r} has index {v.index}, expected {i}")
            if not v.label or any(ch.isspace() for ch in v.label):
                raise GraphError(f"bad vertex label {v.label!r}")
            if v.label in seen:
                raise GraphError(f"duplicate vertex label {v.label!r}")
            seen.add(v.label)
        eseen: set[str] = set()
        for i, e in enumerate(self.edges):
            if e.index != i:
                raise GraphError(f"edge {e.label!r} has index {e.index}, expected {i}")
            if not e.label or any(ch.isspace() for ch in e.label):
                raise GraphError(f"bad edge label {e.label!r}")
            if e.label in eseen:
                raise GraphError(f"duplicate edge label {e.label!r}")
            eseen.add(e.label)
            for end in (e.source, e.target):
                if not (0 <= end.index < len(self.vertices)) or self.vertices[end.index] != end:
                    raise GraphError(f"edge {e.label!r} references unknown vertex {end.label!r}")

    @classmethod
    def build(
        cls,
        vertex_labels: list[str] | tuple[str, ...],
        edge_specs: list[tuple[str, str, str]] | tuple[tuple[str, str, str], ...] = (),
    ) -> "Graph":
        """Construct a graph from labels and (edge_label, src, dst) triples."""
        vertices = tuple(VertexId(i, lbl) for i, lbl in enumerate(vertex_labels))
        by_label = {v.label: v for v in vertices}
        if len(by_label) != len(vertices):
            raise GraphError("duplicate vertex label")
        edges = []
        for i, (lbl, src, dst) in enumerate(edge_specs):
            if src not in by_label:
                raise GraphError(f"edge {lbl!r} references undeclared vertex {src!r}")
            if dst not in by_label:
                raise GraphError(f"edge {lbl!r} references undeclared vertex {dst!r}")
            edges.append(EdgeId(i, lbl, by_label[src], by_label[dst]))
        return cls(vertices, tuple(edges))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex(self, label: str) -> VertexId:
        for v in self.vertices:
            if v.label == label:
                return v
        raise GraphError(f"no vertex labeled {label!r}")

    def out_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        return tuple(e for e in self.edges if e.source == v)

    def out_degree(self, v: VertexId) -> int:
        return sum(1 for e in self.edges if e.source == v)

    def is_sink(self, v: VertexId) -> bool:
        return self.out_degree(v) == 0

    def is_regular(self, v: VertexId) -> bool:
        """A regular vertex emits at least one edge (out-degree is always finite here)."""
        return not self.is_sink(v)

    def sinks(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if self.is_sink(v))

    def regular_vertices(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if self.is_regular(v))


def adjacency_matrix(g: Graph) -> list[list[int]]:
    """The m x m matrix whose (i, j) entry counts edges from v_i to v_j."""
    m = g.num_vertices
    a = [[0] * m for _ in range(m)]
    for e in g.edges:
        a[e.source.index][e.target.index] += 1
    return a


def b_vectors(g: Graph) -> list[list[int]]:
    """Per-vertex edge-count vectors.

    For a regular vertex v_i this is row i of the adjacency matrix with 1
    subtracted at position i; sinks get the zero vector.

    >>> b_vectors(family("rose", [4]))
    [[3]]
    >>> b_vectors(family("line", [2]))
    [[-1, 1], [0, 0]]
    """
    a = adjacency_matrix(g)
    out = []
    for i, v in enumerate(g.vertices):
        if g.is_regular(v):
            row = list(a[i])
            row[i] -= 1
            out.append(row)
        else:
            out.append([0] * g.num_vertices)
    return out


def m_matrix(g: Graph) -> list[list[int]]:
    """The presentation matrix I - A^t (A the adjacency matrix)."""
    a = adjacency_matrix(g)
    m = g.num_vertices
    return [[(1 if i == j else 0) - a[j][i] for j in range(m)] for i in range(m)]


def graph_from_adjacency(labels: list[str], adjacency: list[list[int]]) -> Graph:
    """Build a graph from vertex labels and an adjacency count matrix.

    Edges are created in row-major order and auto-named ``<src>_<dst>_<k>``.
    """
    m = len(labels)
    if len(adjacency) != m or any(len(row) != m for row in adjacency):
        raise GraphError("adjacency matrix must be square and match the vertex count")
    specs = []
    for i in range(m):
        for j in range(m):
            count = adjacency[i][j]
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise GraphError(f"adjacency entry ({i}, {j}) must be a non-negative integer")
            for k in range(1, count + 1):
                specs.append((f"{labels[i]}_{labels[j]}_{k}", labels[i], labels[j]))
    return Graph.build(labels, specs)


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    Directives (one per line, blank lines and ``#`` comments ignored):

    * ``vertex <label>`` declares a vertex; declaration order is index order.
    * ``edge <src> <dst> [<multiplicity>]`` declares that many parallel
      edges, auto-named ``<src>_<dst>_<k>``.
    * ``edge-label <name> <src> <dst>`` declares one individually named edge.
    """
    vertex_labels: list[str] = []
    declared: set[str] = set()
    edge_specs: list[tuple[str, str, str]] = []
    edge_labels: set[str] = set()
    counters: dict[tuple[str, str], int] = {}

    def column_of(line: str, token: str, occurrence: int = 0) -> int:
        pos = -1
        for _ in range(occurrence + 1):
            pos = line.find(token, pos + 1)
        return pos + 1 if pos >= 0 else 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        directive = tokens[0]
        if directive == "vertex":
            if len(tokens) != 2:
                raise GraphParseError("expected: vertex <label>", lineno)
            label = tokens[1]
            if label in declared:
                raise GraphParseError(
                    f"duplicate vertex label {label!r}", lineno, column_of(raw, label)
                )
            declared.add(label)
            vertex_labels.append(label)
        elif directive == "edge":
            if len(tokens) not in (3, 4):
                raise GraphParseError("expected: edge <src> <dst> [<multiplicity>]", lineno)
            src, dst = tokens[1], tokens[2]
            for name in (src, dst):
                if name not in declared:
                    raise GraphParseError(
                        f"undeclared vertex {name!r}", lineno, column_of(raw, name)
                    )
            mult = 1
            if len(tokens) == 4:
                try:
                    mult = int(tokens[3])
                except ValueError:
                    raise GraphParseError(
                        f"multiplicity must be an integer, got {tokens[3]!r}",
                        lineno,
                        column_of(raw, tokens[3]),
                    ) from None
                if mult < 1:
                    raise GraphParseError(
                        f"multiplicity must be >= 1, got {mult}", lineno, column_of(raw, tokens[3])
                    )
            base = counters.get((src, dst), 0)
            for k in range(1, mult + 1):
                label = f"{src}_{dst}_{base + k}"
                if label in edge_labels:
                    raise GraphParseError(f"duplicate edge label {label!r}", lineno)
                edge_labels.add(label)
                edge_specs.append((label, src, dst))
            counters[(src, dst)] = base + mult
        elif directive == "edge-label":
            if len(tokens) != 4:
                raise GraphParseError("expected: edge-label <name> <src> <dst>", lineno)
            label, src, dst = tokens[1], tokens[2], tokens[3]
            for name in (src, dst):
                if name not in declared:
                    raise GraphParseError(
                        f"undeclared vertex {name!r}", lineno, column_of(raw, name)
                    )
            if label in edge_labels:
                raise GraphParseError(
                    f"duplicate edge label {label!r}", lineno, column_of(raw, label)
                )
            edge_labels.add(label)
            edge_specs.append((label, src, dst))
        else:
            raise GraphParseError(
                f"unknown directive {directive!r}", lineno, column_of(raw, directive)
            )

    if not vertex_labels:
        raise GraphParseError("no vertices declared")
    return Graph.build(vertex_labels, edge_specs)


def serialize_graph(g: Graph) -> str:
    """Canonical text for a graph; ``parse_graph`` round-trips it exactly.

    Consecutive parallel edges whose labels match the auto-naming scheme are
    collapsed into a single ``edge`` line with a multiplicity; any other edge
    is written as an explicit ``edge-label`` line.
    """
    lines = [f"vertex {v.label}" for v in g.vertices]
    counters: dict[tuple[str, str], int] = {}
    i = 0
    edges = g.edges
    while i < len(edges):
        key = (edges[i].source.label, edges[i].target.label)
        j = i
        while j < len(edges) and (edges[j].source.label, edges[j].target.label) == key:
            j += 1
        run = edges[i:j]
        base = counters.get(key, 0)
        expected = [f"{key[0]}_{key[1]}_{base + k}" for k in range(1, len(run) + 1)]
        if [e.label for e in run] == expected:
            lines.append(f"edge {key[0]} {key[1]} {len(run)}")
            counters[key] = base + len(run)
        else:
            for e in run:
                lines.append(f"edge-label {e.label} {e.source.label} {e.target.label}")
        i = j
    return "\n".join(lines) + "\n"


def _family_rose(n: int) -> Graph:
    if n < 1:
        raise GraphError("rose(n) requires n >= 1")
    return graph_from_adjacency(["v1"], [[n]])


def _family_line(d: int) -> Graph:
    if d < 1:
        raise GraphError("line(d) requires d >= 1")
    labels = [f"v{i}" for i in range(1, d + 1)]
    adj = [[1 if j == i + 1 else 0 for j in range(d)] for i in range(d)]
    return graph_from_adjacency(labels, adj)


def _family_matrix_rose(n: int, d: int) -> Graph:
    if n < 2 or d < 2:
        raise GraphError("matrix_rose(n, d) requires n >= 2 and d >= 2")
    return graph_from_adjacency(["v1", "v2"], [[0, d - 1], [0, n]])


_EXAMPLE4_ADJACENCY = [
    [1, 1, 0, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 0, 1, 0],
]


def _family_example4() -> Graph:
    return graph_from_adjacency(["v1", "v2", "v3", "v4"], [row[:] for row in _EXAMPLE4_ADJACENCY])


def _family_prime_set(q: int) -> Graph:
    if q < 1:
        raise GraphError("prime_set(q) requires q >= 1")
    adj = [row[:] for row in _EXAMPLE4_ADJACENCY]
    adj[3][3] = q + 1
    return graph_from_adjacency(["v1", "v2", "v3", "v4"], adj)


def _family_two_vertex(u: int, v: int, p: int) -> Graph:
    if u < 2 or v < 2 or p < 2:
        raise GraphError("two_vertex(u, v, p) requires u, v, p >= 2")
    adj = [[p * u * v + 1, u], [p * u, 1 + u]]
    return graph_from_adjacency(["v1", "v2"], adj)


_FAMILIES = {
    "rose": (1, _family_rose, "rose(n): one vertex with n loops, n >= 1"),
    "line": (1, _family_line, "line(d): oriented line on d vertices, d >= 1"),
    "matrix_rose": (
        2,
        _family_matrix_rose,
        "matrix_rose(n, d): d-1 edges into a vertex carrying n loops; n, d >= 2",
    ),
    "prime_set": (
        1,
        _family_prime_set,
        "prime_set(q): four-vertex graph with q+1 loops at the last vertex, q >= 1",
    ),
    "two_vertex": (
        3,
        _family_two_vertex,
        "two_vertex(u, v, p): loops puv+1 and 1+u, cross edges u and pu; u, v, p >= 2",
    ),
    "example4": (0, _family_example4, "example4: the standard four-vertex, seven-edge graph"),
}


def family_names() -> tuple[str, ...]:
    return tuple(sorted(_FAMILIES))


def family(name: str, params: list[int] | tuple[int, ...] = ()) -> Graph:
    """Instantiate one of the named graph families with deterministic labels."""
    if name not in _FAMILIES:
        known = ", ".join(family_names())
        raise GraphError(f"unknown family {name!r} (known: {known})")
    arity, builder, usage = _FAMILIES[name]
    values = []
    for p in params:
        if not isinstance(p, int) or isinstance(p, bool):
            raise GraphError(f"family parameters must be integers ({usage})")
        values.append(p)
    if len(values) != arity:
        raise GraphError(f"family {name!r} takes {arity} parameter(s): {usage}")
    return builder(*values)
