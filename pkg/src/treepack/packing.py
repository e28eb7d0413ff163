"""Spanning-tree packing and fractional packing (graph strength).

Two independent computations live here and cross-validate each other:

* ``tau`` packs edge-disjoint spanning trees with an augmenting-path
  search over label exchanges (the graphic-matroid union algorithm), and

* ``nu_f_exact`` minimizes (total cross edges)/(parts - 1) over all vertex
  partitions with at least two parts by exhaustive enumeration in
  restricted-growth-string order, with exact rational arithmetic.

The classical equivalence -- k disjoint spanning trees exist iff the
partition minimum is at least k -- is exercised in the test suite as the
main correctness oracle for both sides.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    Graph,
    GraphError,
    VertexPartition,
    _normalize_edge,
    components,
)

NU_F_EXACT_DEFAULT_LIMIT = 12
LOCAL_SEARCH_RESTARTS = 20


@dataclass(frozen=True)
class ForestDecomposition:
    """Assignment of a subset of E(G) to t labeled edge-disjoint forests.

    ``forests[i]`` holds the edges of label i+1 in canonical order.  Labels
    1..k being spanning trees is what certificates downstream require; that
    is checked by :func:`verify_decomposition`, not assumed here.
    """

    t: int
    forests: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if self.t != len(self.forests):
            raise ValueError("label count does not match the forest list")

    @property
    def assigned(self) -> int:
        return sum(len(f) for f in self.forests)

    def forest(self, label: int) -> tuple[tuple[int, int], ...]:
        if not 1 <= label <= self.t:
            raise ValueError(f"label {label} out of range 1..{self.t}")
        return self.forests[label - 1]

    def assignment(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for label, edges in enumerate(self.forests, start=1):
            for e in edges:
                out[e] = label
        return out

    def to_json_obj(self):
        return [[list(e) for e in forest] for forest in self.forests]


class _ForestUnion:
    """Incremental union of t graphic matroids over a fixed edge order.

    Edges are offered one at a time.  An offered edge joins the union iff a
    breadth-first search over label exchanges finds an augmenting path: a
    chain e -> y1 -> y2 -> ... -> yk where each arrow means "the left edge's
    fundamental cycle in the right edge's forest contains the right edge",
    ending at an edge that fits into some forest outright.  Relabeling along
    a shortest such chain keeps every label acyclic, and greedy insertion is
    optimal because partitionable edge sets form a matroid.

    Label edge-counts never decrease during an augmentation (interior steps
    swap labels one-for-one; only the final insertion grows a label), which
    is what lets callers seed the state with spanning trees and keep them
    spanning while the remaining labels fill up.
    """

    def __init__(self, g: Graph, t: int):
        if t < 0:
            raise ValueError("forest count must be nonnegative")
        self.g = g
        self.t = t
        self.label = [0] * g.m
        self.members: list[set[int]] = [set() for _ in range(t + 1)]

    def add_forest(self) -> None:
        self.t += 1
        self.members.append(set())

    def seed(self, label: int, edge_indices) -> None:
        """Assign edges to a label without searching; caller guarantees the
        label stays a forest."""
        for idx in edge_indices:
            if self.label[idx]:
                raise ValueError(f"edge index {idx} already assigned")
            self.label[idx] = label
            self.members[label].add(idx)

    @property
    def assigned(self) -> int:
        return sum(len(s) for s in self.members[1:])

    def unassigned(self):
        return [i for i in range(self.g.m) if self.label[i] == 0]

    def _forest_struct(self, label: int):
        """Component ids plus BFS parent pointers for one forest."""
        n = self.g.n
        edges = self.g.edges
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx in sorted(self.members[label]):
            u, v = edges[idx]
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        comp = [-1] * n
        par_v = [-1] * n
        par_e = [-1] * n
        depth = [0] * n
        c = 0
        for s in range(n):
            if comp[s] != -1:
                continue
            comp[s] = c
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w, idx in adj[u]:
                    if comp[w] == -1:
                        comp[w] = c
                        par_v[w] = u
                        par_e[w] = idx
                        depth[w] = depth[u] + 1
                        queue.append(w)
            c += 1
        return comp, par_v, par_e, depth

    @staticmethod
    def _path_edges(u, v, par_v, par_e, depth):
        out = []
        while depth[u] > depth[v]:
            out.append(par_e[u])
            u = par_v[u]
        while depth[v] > depth[u]:
            out.append(par_e[v])
            v = par_v[v]
        while u != v:
            out.append(par_e[u])
            u = par_v[u]
            out.append(par_e[v])
            v = par_v[v]
        return out

    def insert(self, idx: int) -> bool:
        if self.t == 0 or self.label[idx]:
            return False
        edges = self.g.edges
        structs: dict[int, tuple] = {}
        parent: dict[int, int] = {idx: -1}
        queue = deque([idx])
        while queue:
            x = queue.popleft()
            ux, vx = edges[x]
            for i in range(1, self.t + 1):
                if self.label[x] == i:
                    continue
                st = structs.get(i)
                if st is None:
                    st = self._forest_struct(i)
                    structs[i] = st
                comp, par_v, par_e, depth = st
                if comp[ux] != comp[vx]:
                    self._augment(parent, x, i)
                    return True
                for y in self._path_edges(ux, vx, par_v, par_e, depth):
                    if y not in parent:
                        parent[y] = x
                        queue.append(y)
        return False

    def _augment(self, parent: dict[int, int], sink: int, forest: int) -> None:
        give = forest
        cur = sink
        while cur != -1:
            old = self.label[cur]
            if old:
                self.members[old].discard(cur)
            self.members[give].add(cur)
            self.label[cur] = give
            give = old
            cur = parent[cur]

    def decomposition(self) -> ForestDecomposition:
        edges = self.g.edges
        forests = tuple(
            tuple(edges[i] for i in sorted(self.members[label]))
            for label in range(1, self.t + 1)
        )
        return ForestDecomposition(self.t, forests)


def max_forest_union(g: Graph, t: int) -> ForestDecomposition:
    """Maximum-size assignment of edges to t edge-disjoint forests,
    deterministic in canonical edge order."""
    if t < 1:
        raise ValueError("forest count must be at least 1")
    state = _ForestUnion(g, t)
    for idx in range(g.m):
        state.insert(idx)
    return state.decomposition()


def tau_at_least(g: Graph, k: int) -> tuple[bool, ForestDecomposition | None]:
    """Saturation test: do k edge-disjoint spanning trees exist?

    Returns the k-tree decomposition when they do.
    """
    if g.n < 2:
        raise GraphError("spanning-tree packing needs at least 2 vertices")
    if k < 1:
        raise ValueError("tree count must be at least 1")
    target = k * (g.n - 1)
    if target > g.m:
        return False, None
    dec = max_forest_union(g, k)
    if dec.assigned == target:
        return True, dec
    return False, None


def tau(g: Graph) -> tuple[int, ForestDecomposition]:
    """Spanning-tree packing number with a witnessing decomposition.

    0 for disconnected graphs (with an empty decomposition); a single
    vertex is rejected rather than reporting an unbounded value.
    """
    if g.n < 2:
        raise GraphError("spanning-tree packing needs at least 2 vertices")
    n = g.n
    state = _ForestUnion(g, 1)
    for idx in range(g.m):
        state.insert(idx)
    best = 0
    best_dec = ForestDecomposition(0, ())
    t = 1
    while t * (n - 1) <= g.m:
        if t > state.t:
            state.add_forest()
            for idx in state.unassigned():
                state.insert(idx)
        if state.assigned == t * (n - 1):
            best = t
            best_dec = state.decomposition()
            t += 1
        else:
            break
    return best, best_dec


# ---------------------------------------------------------------------------
# Fractional packing number (graph strength).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionCertificate:
    """A vertex partition witnessing a fractional-packing ratio."""

    partition: VertexPartition
    cross_total: int
    ratio: Fraction

    def to_json_obj(self):
        return {
            "partition": [list(part) for part in self.partition.parts],
            "cross_total": self.cross_total,
            "ratio": {
                "fraction": f"{self.ratio.numerator}/{self.ratio.denominator}",
                "decimal": float(self.ratio),
            },
        }


def partition_ratio(g: Graph, partition: VertexPartition) -> PartitionCertificate:
    """Cross-edge total and ratio cross/(p-1) for a given partition (p >= 2)."""
    if partition.p < 2:
        raise GraphError("fractional packing needs at least 2 parts")
    owner = partition.part_of()
    cross = sum(1 for u, v in g.edges if owner[u] != owner[v])
    return PartitionCertificate(partition, cross, Fraction(cross, partition.p - 1))


def _singleton_partition(n: int) -> VertexPartition:
    return VertexPartition.from_parts(n, [(v,) for v in range(n)])


def nu_f_exact(g: Graph, max_n: int = NU_F_EXACT_DEFAULT_LIMIT):
    """Exact fractional packing number by exhaustive partition enumeration.

    Partitions are generated in restricted-growth order (vertex j joins an
    existing part or opens the next one).  A partial assignment is abandoned
    when the cross edges already placed cannot beat the incumbent even if
    every remaining vertex opened a new part.  Ties keep the incumbent, so
    the certificate is the all-singletons partition when that attains the
    minimum and otherwise the first minimizer in enumeration order.
    """
    n = g.n
    if not 2 <= n <= max_n:
        raise GraphError(f"exact enumeration supports 2 <= n <= {max_n}, got n={n}")
    m = g.m
    adj_mask = [0] * n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    # edges with both endpoints among vertices < j
    prefix = [0] * (n + 1)
    for j in range(1, n + 1):
        prefix[j] = sum(1 for u, v in g.edges if u < j and v < j)

    best_cert = partition_ratio(g, _singleton_partition(n))
    best_num = best_cert.ratio.numerator
    best_den = best_cert.ratio.denominator
    part_masks: list[int] = []

    def walk(j: int, within: int):
        nonlocal best_cert, best_num, best_den
        if j == n:
            p = len(part_masks)
            if p < 2:
                return
            cross = m - within
            # strict improvement only
            if cross * best_den < best_num * (p - 1):
                parts = [tuple(v for v in range(n) if mask >> v & 1)
                         for mask in part_masks]
                best_cert = PartitionCertificate(
                    VertexPartition.from_parts(n, parts),
                    cross,
                    Fraction(cross, p - 1),
                )
                best_num = best_cert.ratio.numerator
                best_den = best_cert.ratio.denominator
            return
        bit = 1 << j
        mask_j = adj_mask[j]
        p_now = len(part_masks)
        remaining = n - j - 1
        for idx in range(p_now):
            gained = (mask_j & part_masks[idx]).bit_count()
            within2 = within + gained
            cross_now = prefix[j + 1] - within2
            p_max = p_now + remaining
            if p_max < 2:
                continue
            if cross_now * best_den > best_num * (p_max - 1):
                continue
            part_masks[idx] |= bit
            walk(j + 1, within2)
            part_masks[idx] &= ~bit
        # open a new part
        p_max = p_now + 1 + remaining
        cross_now = prefix[j + 1] - within
        if p_max >= 2 and cross_now * best_den <= best_num * (p_max - 1):
            part_masks.append(bit)
            walk(j + 1, within)
            part_masks.pop()

    walk(0, 0)
    return best_cert.ratio, best_cert


def _partition_key(partition: VertexPartition):
    return partition.parts


def _steepest_descent(g: Graph, parts: list[set[int]]):
    """Steepest-descent local search over partitions.

    Moves: relocate one vertex to another part, split one vertex off into a
    new part, merge two parts.  Part count stays >= 2.  Returns the final
    certificate; fully deterministic for a given starting partition.
    """
    m = g.m
    adj = g.adj

    def ratio_of(cross: int, p: int) -> Fraction:
        return Fraction(cross, p - 1)

    owner = {}
    for i, part in enumerate(parts):
        for v in part:
            owner[v] = i
    within = sum(1 for u, v in g.edges if owner[u] == owner[v])
    cross = m - within
    p = len(parts)
    current = ratio_of(cross, p)

    while True:
        best_move = None
        best_ratio = current
        part_ids = [i for i, part in enumerate(parts) if part]
        # relocate / split
        for v in range(g.n):
            src = owner[v]
            links_src = len(adj[v] & parts[src])
            src_empties = len(parts[src]) == 1
            for dst in part_ids:
                if dst == src:
                    continue
                links_dst = len(adj[v] & parts[dst])
                new_within = within - links_src + links_dst
                new_p = p - 1 if src_empties else p
                if new_p < 2:
                    continue
                new_ratio = ratio_of(m - new_within, new_p)
                if new_ratio < best_ratio:
                    best_ratio = new_ratio
                    best_move = ("relocate", v, dst)
            if not src_empties:
                new_within = within - links_src
                new_ratio = ratio_of(m - new_within, p + 1)
                if new_ratio < best_ratio:
                    best_ratio = new_ratio
                    best_move = ("split", v, None)
        # merge
        if p > 2:
            for ai in range(len(part_ids)):
                for bi in range(ai + 1, len(part_ids)):
                    a, b = part_ids[ai], part_ids[bi]
                    between = sum(len(adj[v] & parts[b]) for v in parts[a])
                    new_ratio = ratio_of(m - within - between, p - 1)
                    if new_ratio < best_ratio:
                        best_ratio = new_ratio
                        best_move = ("merge", a, b)
        if best_move is None:
            break
        kind, x, y = best_move
        if kind == "relocate":
            src = owner[x]
            within += len(adj[x] & parts[y]) - len(adj[x] & parts[src])
            parts[src].discard(x)
            parts[y].add(x)
            owner[x] = y
            if not parts[src]:
                p -= 1
        elif kind == "split":
            src = owner[x]
            within -= len(adj[x] & parts[src])
            parts[src].discard(x)
            parts.append({x})
            owner[x] = len(parts) - 1
            p += 1
        else:  # merge
            between = sum(len(adj[v] & parts[y]) for v in parts[x])
            within += between
            for v in parts[y]:
                owner[v] = x
            parts[x] |= parts[y]
            parts[y] = set()
            p -= 1
        current = ratio_of(m - within, p)

    live = [sorted(part) for part in parts if part]
    partition = VertexPartition.from_parts(g.n, live)
    return partition_ratio(g, partition)


def nu_f_bounds(g: Graph):
    """Bracketing of the fractional packing number for any order.

    Lower bound: the spanning-tree packing number (always a valid lower
    bound for the partition minimum).  Upper bound: best partition found by
    steepest-descent local search from the all-singletons partition, the
    connected-component partition when the graph is disconnected, and 20
    seeded random partitions.  The winner is reduced deterministically by
    (ratio, canonical partition).
    """
    if g.n < 2:
        raise GraphError("fractional packing needs at least 2 vertices")
    lower = Fraction(tau(g)[0])

    starts: list[list[set[int]]] = [[{v} for v in range(g.n)]]
    comps = components(g)
    if len(comps) >= 2:
        starts.append([set(c) for c in comps])
    for seed in range(LOCAL_SEARCH_RESTARTS):
        rng = random.Random(seed)
        r = rng.randint(2, max(2, min(g.n, 5)))
        labels = [rng.randrange(r) for _ in range(g.n)]
        if len(set(labels)) < 2:
            labels[0] = (labels[0] + 1) % r
        groups: dict[int, set[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(v)
        starts.append(list(groups.values()))

    best: PartitionCertificate | None = None
    for start in starts:
        cert = _steepest_descent(g, [set(s) for s in start])
        if best is None or (cert.ratio, _partition_key(cert.partition)) < (
            best.ratio,
            _partition_key(best.partition),
        ):
            best = cert
    assert best is not None
    assert lower <= best.ratio, "packing lower bound exceeded a witnessed ratio"
    return lower, best.ratio, best


# ---------------------------------------------------------------------------
# Decomposition checking.
# ---------------------------------------------------------------------------

def decomposition_error(g: Graph, dec: ForestDecomposition,
                        require_spanning: int = 0) -> str | None:
    """Reason the decomposition is invalid, or None if it checks out.

    Valid means: all edges exist in g, no edge carries two labels, every
    label is acyclic, and the first ``require_spanning`` labels are spanning
    trees (n-1 edges, connected).
    """
    if require_spanning > dec.t:
        return f"asked for {require_spanning} spanning labels but only {dec.t} exist"
    seen: set[tuple[int, int]] = set()
    for label, forest in enumerate(dec.forests, start=1):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pair in forest:
            e = _normalize_edge(*pair)
            if e not in g.edge_set:
                return f"label {label} uses edge {e} not present in the graph"
            if e in seen:
                return f"edge {e} carries two labels"
            seen.add(e)
            ru, rv = find(e[0]), find(e[1])
            if ru == rv:
                return f"label {label} contains a cycle through edge {e}"
            parent[ru] = rv
        if label <= require_spanning:
            if len(forest) != g.n - 1:
                return (f"label {label} has {len(forest)} edges, "
                        f"a spanning tree needs {g.n - 1}")
            roots = {find(v) for v in range(g.n)}
            if len(roots) != 1:
                return f"label {label} does not span the vertex set"
    return None


def verify_decomposition(g: Graph, dec: ForestDecomposition,
                         require_spanning: int = 0) -> bool:
    return decomposition_error(g, dec, require_spanning) is None
