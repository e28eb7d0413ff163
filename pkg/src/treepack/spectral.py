"""Dense symmetric eigencomputation and spectral-graph helpers.

The eigensolver is a cyclic Jacobi iteration: sweeps of Givens rotations
over all off-diagonal positions until the largest off-diagonal magnitude
drops below 1e-12 times the max-norm of the input matrix.  For the graph
orders handled here (n <= 200) that is far more accuracy than the
4-decimal regression values need, and the terminal off-diagonal magnitude
is reported as the ``residual`` of the returned spectrum.

Quotient matrices of vertex partitions are generally nonsymmetric, but are
diagonally similar to a symmetric matrix (scale row/column i by
sqrt(|V_i|)), so their eigenvalues are computed with the same solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, GraphError, VertexPartition, partition_edge_counts

JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
INTERLACING_TOL = 1e-9
BOUNDARY_BAND = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order plus the solver's terminal residual."""

    values: tuple[float, ...]
    residual: float

    @property
    def order(self) -> int:
        return len(self.values)

    def lam(self, i: int) -> float:
        """i-th largest eigenvalue, 1-indexed."""
        if not 1 <= i <= len(self.values):
            raise ValueError(f"eigenvalue index {i} out of range 1..{len(self.values)}")
        return self.values[i - 1]


def as_symmetric(matrix) -> np.ndarray:
    """Validate a square, exactly symmetric real matrix; returns a float copy."""
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not exactly symmetric")
    return a


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def a_alpha_matrix(g: Graph, alpha: float) -> np.ndarray:
    """Degree-weighted adjacency matrix: alpha*D + (1-alpha)*A, 0 <= alpha < 1."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    a = adjacency_matrix(g) * (1.0 - alpha)
    for v in range(g.n):
        a[v, v] = alpha * len(g.adj[v])
    return a


def eigenvalues_sym(matrix) -> Spectrum:
    """All eigenvalues of a symmetric matrix, descending, via cyclic Jacobi."""
    a = as_symmetric(matrix)
    n = a.shape[0]
    if n == 0:
        return Spectrum((), 0.0)
    if n == 1:
        return Spectrum((float(a[0, 0]),), 0.0)
    scale = float(np.abs(a).max())
    if scale == 0.0:
        return Spectrum(tuple(0.0 for _ in range(n)), 0.0)
    tol = JACOBI_REL_TOL * scale
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.abs(a[off_mask]).max())
        if off < tol:
            values = tuple(sorted((float(x) for x in np.diag(a)), reverse=True))
            return Spectrum(values, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise RuntimeError("Jacobi iteration failed to converge within the sweep cap; "
                       "this should not happen for symmetric input")


def spectrum(g: Graph) -> Spectrum:
    return eigenvalues_sym(adjacency_matrix(g))


def spectrum_alpha(g: Graph, alpha: float) -> Spectrum:
    return eigenvalues_sym(a_alpha_matrix(g, alpha))


def lam(g: Graph, i: int) -> float:
    """i-th largest adjacency eigenvalue of g, 1-indexed."""
    return spectrum(g).lam(i)


def lam_alpha(g: Graph, alpha: float, i: int) -> float:
    """i-th largest eigenvalue of the degree-weighted matrix, 1-indexed."""
    return spectrum_alpha(g, alpha).lam(i)


def quotient_matrix(g: Graph, partition: VertexPartition) -> np.ndarray:
    """Part-averaged block sums of the adjacency matrix.

    Entry (i, j) for i != j is e(V_i, V_j)/|V_i|; entry (i, i) is
    2*e(G[V_i])/|V_i|.  Generally nonsymmetric for unequal part sizes.
    """
    within, cross = partition_edge_counts(g, partition)
    p = partition.p
    b = np.zeros((p, p))
    for i in range(p):
        ni = len(partition.parts[i])
        b[i, i] = 2.0 * within[i] / ni
        for j in range(p):
            if i != j:
                b[i, j] = cross[i][j] / ni
    return b


def quotient_spectrum(g: Graph, partition: VertexPartition) -> Spectrum:
    """Eigenvalues of the quotient matrix via its symmetric similarity
    (row/column i scaled by sqrt(|V_i|))."""
    within, cross = partition_edge_counts(g, partition)
    p = partition.p
    sizes = [len(part) for part in partition.parts]
    s = np.zeros((p, p))
    for i in range(p):
        s[i, i] = 2.0 * within[i] / sizes[i]
        for j in range(i + 1, p):
            val = cross[i][j] / math.sqrt(sizes[i] * sizes[j])
            s[i, j] = val
            s[j, i] = val
    return eigenvalues_sym(s)


def quotient_lambda2_2part(a1: float, a2: float, r: int, n1: int, n2: int) -> float:
    """Smaller eigenvalue of the 2x2 quotient [[a1, r/n1], [r/n2, a2]]."""
    if n1 < 1 or n2 < 1:
        raise ValueError("part sizes must be at least 1")
    if r < 0:
        raise ValueError("cross-edge count must be nonnegative")
    disc = (a1 - a2) ** 2 + 4.0 * r * r / (n1 * n2)
    return 0.5 * (a1 + a2 - math.sqrt(disc))


def hong_nikiforov_bound(n: int, m: int, delta: int) -> float:
    """Upper bound on the spectral radius from order, size and minimum degree:
    (delta-1)/2 + sqrt(2m - n*delta + (delta+1)^2/4).

    Tight for regular graphs; requires delta >= 1 and a nonnegative radicand.
    """
    if delta < 1:
        raise ValueError(f"bound requires minimum degree >= 1, got {delta}")
    radicand = 2.0 * m - n * delta + (delta + 1) ** 2 / 4.0
    if radicand < 0.0:
        raise ValueError(f"negative radicand {radicand} (n={n}, m={m}, delta={delta})")
    return (delta - 1) / 2.0 + math.sqrt(radicand)


def _values(spec) -> tuple[float, ...]:
    if isinstance(spec, Spectrum):
        return spec.values
    return tuple(float(x) for x in spec)


def check_interlacing(small, big, tol: float = INTERLACING_TOL) -> bool:
    """True iff the smaller spectrum interlaces the larger one:
    big[i] >= small[i] >= big[n-m+i] (1-indexed), within tolerance."""
    mu = _values(small)
    eta = _values(big)
    m, n = len(mu), len(eta)
    if not m < n:
        raise ValueError(f"interlacing needs |small| < |big|, got {m} vs {n}")
    for i in range(m):
        if mu[i] > eta[i] + tol:
            return False
        if mu[i] < eta[n - m + i] - tol:
            return False
    return True


def alpha_threshold(delta: int, k: int, alpha: Fraction) -> Fraction:
    """Exact second-eigenvalue threshold delta - 2(1-alpha)(k + (delta-1)/delta)/(delta+1)."""
    if delta < 1:
        raise ValueError("threshold requires minimum degree >= 1")
    base = k + Fraction(delta - 1, delta)
    return delta - 2 * (1 - alpha) * base / (delta + 1)
