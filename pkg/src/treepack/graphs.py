"""Undirected simple graphs on dense integer labels.

Everything downstream (eigensolvers, tree packing, partition search) runs
over the ``Graph`` value type defined here: an immutable vertex count plus
a canonically ordered edge list.  Construction is strict -- out-of-range
endpoints, self-loops and duplicate edges are errors, never silently
repaired -- so the fixture graphs below are byte-reproducible and a
transcription mistake surfaces as a hard failure instead of a silently
different graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class GraphError(ValueError):
    """Malformed graph construction or structural query."""


class GraphFormatError(GraphError):
    """Malformed edge-list text input."""


def _normalize_edge(u, v):
    if u > v:
        u, v = v, u
    return (u, v)


class Graph:
    """Immutable simple graph with vertex set 0..n-1.

    ``edges`` preserves construction order with each pair stored as
    ``(min, max)``.  That order is the canonical edge order used by every
    deterministic algorithm downstream (greedy spanning forests, the
    forest-union augmenting search, exhaustive forest enumeration), so two
    graphs built from the same input produce identical results.
    """

    __slots__ = ("n", "edges", "edge_set", "adj", "_hash")

    def __init__(self, n: int, edges):
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a nonnegative integer, got {n!r}")
        normalized = []
        seen = set()
        adj = [set() for _ in range(n)]
        for pair in edges:
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"edge endpoints must be integers, got {pair!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {pair!r} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = _normalize_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e!r}")
            seen.add(e)
            normalized.append(e)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "edge_set", frozenset(normalized))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_hash", hash((n, frozenset(normalized))))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edge_set

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set == other.edge_set

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges) -> Graph:
    """Validate and build a simple graph; duplicates and loops are errors."""
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Generators and fixtures.  Labelings are fixed so every generated graph is
# reproducible edge-for-edge.
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with side A on 0..a-1 and side B on a..a+b-1."""
    if a < 1 or b < 1:
        raise GraphError(f"complete bipartite sides must be positive, got {a}, {b}")
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen() -> Graph:
    """Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i-(i+5)."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; h's labels are shifted by g.n."""
    shift = g.n
    edges = list(g.edges) + [(u + shift, v + shift) for u, v in h.edges]
    return Graph(g.n + h.n, edges)


def generate(kind: str, *params) -> Graph:
    """Dispatch on a generator name: complete, complete_bipartite, petersen,
    disjoint_union."""
    table = {
        "complete": complete,
        "complete_bipartite": complete_bipartite,
        "petersen": petersen,
        "disjoint_union": disjoint_union,
    }
    if kind not in table:
        raise GraphError(f"unknown generator {kind!r}")
    return table[kind](*params)


def build_B(n: int, s: int, k: int) -> Graph:
    """Two cliques K_s (on 0..s-1) and K_{n-s} (on s..n-1) joined by k edges,
    all incident to the hub vertex 0 and to the k vertices s..s+k-1.

    k=0 gives the plain disjoint union of the two cliques.  Requires
    n >= s + k so the k far endpoints are distinct.
    """
    if s < 1 or k < 0:
        raise GraphError(f"build_B needs s >= 1 and k >= 0, got s={s}, k={k}")
    if n < s + k:
        raise GraphError(f"build_B needs n >= s + k, got n={n}, s={s}, k={k}")
    edges = list(combinations(range(s), 2))
    edges += list(combinations(range(s, n), 2))
    edges += [(0, s + j) for j in range(k)]
    return Graph(n, edges)


def build_G_family(n: int, s: int, k: int, cross) -> Graph:
    """Member of the two-clique family: K_s and K_{n-s} joined by the k given
    cross edges (i, j) with i on the K_s side (i < s) and j on the other
    side (s <= j < n).  Unlike :func:`build_B`, no common hub is required.
    """
    if s < 1 or not 1 <= s < n:
        raise GraphError(f"build_G_family needs 1 <= s < n, got n={n}, s={s}")
    cross = list(cross)
    if len(cross) != k:
        raise GraphError(f"expected {k} cross edges, got {len(cross)}")
    seen = set()
    for i, j in cross:
        if not (0 <= i < s and s <= j < n):
            raise GraphError(f"cross edge ({i},{j}) violates the side split at s={s}")
        if (i, j) in seen:
            raise GraphError(f"duplicate cross edge ({i},{j})")
        seen.add((i, j))
    edges = list(combinations(range(s), 2))
    edges += list(combinations(range(s, n), 2))
    edges += cross
    return Graph(n, edges)


# Fixture: an 11-vertex, 28-edge graph with minimum degree 4 whose edge set
# splits into two edge-disjoint spanning trees (the "bold" and "thin" groups)
# plus an 8-edge spare forest (the "dashed" group) whose components all have
# at most 3 edges.  Its spectral radius is ~5.1919.  The three edge groups
# are exposed because tests and the certificate checker exercise them.
H1_DASHED = ((0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (8, 9), (9, 10))
H1_BOLD = ((1, 3), (0, 3), (0, 2), (3, 8), (8, 10), (7, 10), (5, 7), (5, 9),
           (4, 7), (4, 6))
H1_THIN = ((1, 4), (4, 10), (6, 10), (6, 9), (7, 9), (2, 5), (2, 8), (0, 8),
           (3, 10), (2, 9))


def fixture_h1() -> Graph:
    """The 11-vertex counterexample fixture (see H1_DASHED/H1_BOLD/H1_THIN)."""
    return Graph(11, H1_DASHED + H1_BOLD + H1_THIN)


def fixture_h2() -> Graph:
    """A 33-vertex, 261-edge fixture with minimum degree 15.

    Built from K_16 (on 0..15, with the two independent edges {0,1} and
    {2,3} removed) and K_17 (on 16..32), joined by seven edges from vertices
    0..6 to the vertex w=16.  The choice of 4, 5, 6 as the three extra
    attachment vertices is canonical: vertices 4..15 are mutually symmetric,
    so every valid choice gives an isomorphic graph.
    """
    removed = {(0, 1), (2, 3)}
    edges = [e for e in combinations(range(16), 2) if e not in removed]
    edges += list(combinations(range(16, 33), 2))
    edges += [(i, 16) for i in range(7)]
    return Graph(33, edges)


# ---------------------------------------------------------------------------
# Vertex sets and partitions.
# ---------------------------------------------------------------------------

def check_vertex_set(g: Graph, vertices, allow_empty: bool = False) -> tuple[int, ...]:
    """Validate a vertex subset and return it as a sorted tuple."""
    out = sorted(vertices)
    if not allow_empty and not out:
        raise GraphError("vertex set must be nonempty")
    if len(set(out)) != len(out):
        raise GraphError("vertex set contains duplicates")
    if out and not (0 <= out[0] and out[-1] < g.n):
        raise GraphError(f"vertex set {out!r} out of range for n={g.n}")
    return tuple(out)


@dataclass(frozen=True)
class VertexPartition:
    """Partition of 0..n-1 into nonempty parts, canonically ordered.

    Parts are sorted internally and listed by smallest element, so equal
    partitions compare equal regardless of how they were produced.
    """

    n: int
    parts: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_parts(n: int, parts) -> "VertexPartition":
        canon = []
        seen: set[int] = set()
        for part in parts:
            p = tuple(sorted(part))
            if not p:
                raise GraphError("partition parts must be nonempty")
            for v in p:
                if not 0 <= v < n:
                    raise GraphError(f"partition vertex {v} out of range for n={n}")
                if v in seen:
                    raise GraphError(f"vertex {v} appears in two parts")
                seen.add(v)
            canon.append(p)
        if len(seen) != n:
            raise GraphError("partition does not cover the vertex set")
        canon.sort(key=lambda p: p[0])
        return VertexPartition(n, tuple(canon))

    @property
    def p(self) -> int:
        return len(self.parts)

    def part_of(self) -> list[int]:
        owner = [-1] * self.n
        for i, part in enumerate(self.parts):
            for v in part:
                owner[v] = i
        return owner


def partition_edge_counts(g: Graph, partition: VertexPartition):
    """Per-part internal edge counts and the symmetric cross-count matrix."""
    if partition.n != g.n:
        raise GraphError("partition is over a different vertex set")
    owner = partition.part_of()
    p = partition.p
    within = [0] * p
    cross = [[0] * p for _ in range(p)]
    for u, v in g.edges:
        a, b = owner[u], owner[v]
        if a == b:
            within[a] += 1
        else:
            cross[a][b] += 1
            cross[b][a] += 1
    return within, cross


# ---------------------------------------------------------------------------
# Structural queries.
# ---------------------------------------------------------------------------

def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(len(g.adj[v]) for v in range(g.n))


def components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Connected components as sorted tuples, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


class _DSU:
    __slots__ = ("parent", "size")

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def is_forest(g: Graph, edge_subset) -> bool:
    """True iff the given subset of E(G) is acyclic on V(G)."""
    dsu = _DSU(g.n)
    for pair in edge_subset:
        e = _normalize_edge(*pair)
        if e not in g.edge_set:
            raise GraphError(f"edge {e!r} is not in the graph")
        if not dsu.union(*e):
            return False
    return True


def max_spanning_forest(g: Graph) -> tuple[tuple[int, int], ...]:
    """Greedy maximum spanning forest in canonical edge order:
    n - (#components) edges."""
    dsu = _DSU(g.n)
    return tuple(e for e in g.edges if dsu.union(*e))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced by a nonempty vertex set, relabeled 0..|S|-1 in
    sorted order."""
    s = check_vertex_set(g, vertices)
    index = {v: i for i, v in enumerate(s)}
    sset = set(s)
    edges = [(index[u], index[v]) for u, v in g.edges if u in sset and v in sset]
    return Graph(len(s), edges)


def delete_edges(g: Graph, edge_subset) -> Graph:
    """Graph on the same vertex set with the given edges removed."""
    doomed = set()
    for pair in edge_subset:
        e = _normalize_edge(*pair)
        if e not in g.edge_set:
            raise GraphError(f"edge {e!r} is not in the graph")
        doomed.add(e)
    return Graph(g.n, (e for e in g.edges if e not in doomed))


def cross_edge_count(g: Graph, xs, ys) -> int:
    """Number of edges with one endpoint in each of two disjoint nonempty
    vertex sets."""
    x = set(check_vertex_set(g, xs))
    y = set(check_vertex_set(g, ys))
    if x & y:
        raise GraphError("cross_edge_count requires disjoint vertex sets")
    return sum(1 for u, v in g.edges
               if (u in x and v in y) or (u in y and v in x))


def edges_within(g: Graph, vertices) -> int:
    s = set(check_vertex_set(g, vertices))
    return sum(1 for u, v in g.edges if u in s and v in s)


# ---------------------------------------------------------------------------
# Edge-list text format: line 1 is "n m", then m lines "u v" (0-based,
# single space).  Lines starting with '#' are comments.  A trailing newline
# is required.
# ---------------------------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    if not text.endswith("\n"):
        raise GraphFormatError("edge-list text must end with a newline")
    rows = []
    for lineno, raw in enumerate(text.split("\n")[:-1], start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphFormatError("edge-list text has no data lines")
    head_no, head = rows[0]
    fields = head.split()
    if len(fields) != 2:
        raise GraphFormatError(f"line {head_no}: header must be 'n m'")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise GraphFormatError(f"line {head_no}: header must be two integers") from None
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for lineno, line in body:
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: edge line must be 'u v'")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: edge endpoints must be integers") from None
    try:
        return Graph(n, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
