"""Nonnegative integer matrices and their Perron-Frobenius data.

Entries are kept as Python integers so that matrix powers are exact; the
eigen computations convert to float64.  A matrix is *irreducible* when for
every pair ``(i, j)`` some power ``M**n`` (``n >= 1``) has a positive
``(i, j)`` entry, i.e. its positivity digraph is strongly connected (for
``1 x 1`` matrices this means the single entry is positive).
"""
import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ConvergenceError, HandlebodyError, ReducibleMatrixError

__all__ = [
    "NonNegMatrix",
    "PFResult",
    "SCCReport",
    "as_matrix",
    "is_irreducible",
    "scc_decomposition",
    "pf_eigen",
    "spectral_radius_reducible",
    "block_radii",
    "subinvariance_test",
    "collatz_wielandt_bounds",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "DEFAULT_SLACK",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000
DEFAULT_SLACK = 1e-9


class NonNegMatrix:
    """Square matrix of nonnegative Python integers (immutable)."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        if isinstance(rows, NonNegMatrix):
            rows = rows.rows
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise HandlebodyError("matrix must have positive dimension")
        clean = []
        for r in rows:
            if len(r) != n:
                raise HandlebodyError("matrix must be square")
            row = []
            for x in r:
                if isinstance(x, (bool, np.bool_)) or int(x) != x:
                    raise HandlebodyError(f"matrix entries must be integers, got {x!r}")
                x = int(x)
                if x < 0:
                    raise HandlebodyError(f"matrix entries must be nonnegative, got {x}")
                row.append(x)
            clean.append(tuple(row))
        self._rows = tuple(clean)

    @property
    def rows(self):
        return self._rows

    @property
    def dim(self):
        return len(self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if isinstance(other, NonNegMatrix):
            return self._rows == other._rows
        try:
            return self._rows == NonNegMatrix(other)._rows
        except (HandlebodyError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"NonNegMatrix({[list(r) for r in self._rows]})"

    def tolist(self):
        return [list(r) for r in self._rows]

    def to_array(self, dtype=float):
        return np.array(self._rows, dtype=dtype)

    def __matmul__(self, other):
        other = as_matrix(other)
        if other.dim != self.dim:
            raise HandlebodyError("dimension mismatch")
        cols = list(zip(*other.rows))
        return NonNegMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])

    def __le__(self, other):
        """Entrywise comparison."""
        other = as_matrix(other)
        return all(a <= b for r, s in zip(self._rows, other.rows) for a, b in zip(r, s))

    def power(self, n):
        """Exact ``M**n`` for ``n >= 0`` by repeated squaring."""
        if n < 0:
            raise ValueError("negative power")
        result = NonNegMatrix([[int(i == j) for j in range(self.dim)] for i in range(self.dim)])
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def permuted(self, perm):
        """Simultaneous row/column permutation: new[i][j] = old[perm[i]][perm[j]]."""
        return NonNegMatrix([[self._rows[p][q] for q in perm] for p in perm])

    def submatrix(self, indices):
        return NonNegMatrix([[self._rows[p][q] for q in indices] for p in indices])

    def transpose(self):
        return NonNegMatrix(list(zip(*self._rows)))


def as_matrix(m):
    return m if isinstance(m, NonNegMatrix) else NonNegMatrix(m)


@dataclass(frozen=True)
class PFResult:
    eigenvalue: float
    vector: np.ndarray
    residual: float
    iterations: int


@dataclass(frozen=True)
class SCCReport:
    """Strong components of the positivity digraph.

    ``components`` is listed in a topological order of the condensation:
    an arc ``i -> j`` (``m_ij > 0``) between different components always
    goes from an earlier component to a later one.  Permuting the matrix by
    the concatenated components puts it in block upper-triangular form.
    """

    components: tuple
    condensation_arcs: tuple

    @property
    def irreducible_candidate(self):
        return len(self.components) == 1

    @property
    def order(self):
        return [i for comp in self.components for i in comp]


def _positivity(m):
    return [[j for j, x in enumerate(row) if x > 0] for row in m.rows]


def scc_decomposition(m):
    m = as_matrix(m)
    n = m.dim
    a = m.to_array() > 0
    ncomp, labels = connected_components(csr_matrix(a), directed=True, connection="strong")
    members = [[] for _ in range(ncomp)]
    for i, lab in enumerate(labels):
        members[lab].append(i)
    arcs = set()
    succ = [set() for _ in range(ncomp)]
    indeg = [0] * ncomp
    for i, row in enumerate(_positivity(m)):
        for j in row:
            s, t = labels[i], labels[j]
            if s != t and t not in succ[s]:
                succ[s].add(t)
                indeg[t] += 1
    # Kahn's algorithm; ties broken by smallest member index for determinism
    heap = [(min(members[c]), c) for c in range(ncomp) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for t in sorted(succ[c]):
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, (min(members[t]), t))
    position = {c: k for k, c in enumerate(order)}
    for s in range(ncomp):
        for t in succ[s]:
            arcs.add((position[s], position[t]))
    assert len(order) == ncomp and n == sum(len(c) for c in members)
    return SCCReport(
        components=tuple(tuple(members[c]) for c in order),
        condensation_arcs=tuple(sorted(arcs)),
    )


def is_irreducible(m):
    m = as_matrix(m)
    if m.dim == 1:
        return m[0, 0] > 0
    return len(scc_decomposition(m).components) == 1


def collatz_wielandt_bounds(m, v):
    """``(min_i (Mv)_i / v_i, max_i (Mv)_i / v_i)`` for a positive vector ``v``."""
    a = as_matrix(m).to_array()
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise HandlebodyError("Collatz-Wielandt bounds need a strictly positive vector")
    r = (a @ v) / v
    return float(r.min()), float(r.max())


def pf_eigen(m, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Perron-Frobenius eigenvalue and eigenvector of an irreducible matrix.

    Power iteration on ``M + I``, which is primitive whenever ``M`` is
    irreducible, from the all-ones vector with max-norm normalisation.  The
    eigenvalue estimate is the midpoint of the Collatz-Wielandt bounds, which
    bracket the spectral radius at every step.  Iteration stops once the
    bracket width and the residual ``||Mv - lambda v||_inf`` are both at most
    ``tol * max(1, lambda)``; the relative scaling keeps the test meaningful
    for large entries, where float64 cannot resolve an absolute ``1e-12``.
    """
    m = as_matrix(m)
    if not is_irreducible(m):
        raise ReducibleMatrixError(
            "matrix is reducible; use spectral_radius_reducible for its spectral radius"
        )
    a = m.to_array()
    n = m.dim
    shifted = a + np.eye(n)
    v = np.ones(n)
    lam = 0.0
    residual = np.inf
    for it in range(1, max_iter + 1):
        w = shifted @ v
        v = w / w.max()
        mv = a @ v
        ratios = mv / v
        lo, hi = ratios.min(), ratios.max()
        lam = 0.5 * (lo + hi)
        residual = float(np.max(np.abs(mv - lam * v)))
        scale = max(1.0, lam)
        if hi - lo <= tol * scale and residual <= tol * scale:
            return PFResult(float(lam), v, residual, it)
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations (residual {residual:.3e})",
        residual=residual,
        iterations=max_iter,
    )


def spectral_radius_reducible(m, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Spectral radius of any nonnegative matrix.

    Maximum over the diagonal blocks of the SCC condensation; a block that is
    a single index with zero diagonal contributes 0.
    """
    m = as_matrix(m)
    best = 0.0
    for comp in scc_decomposition(m).components:
        block = m.submatrix(comp)
        if is_irreducible(block):
            best = max(best, pf_eigen(block, tol=tol, max_iter=max_iter).eigenvalue)
    return best


def block_radii(m, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """``[(component, radius), ...]`` for every diagonal block of the condensation."""
    m = as_matrix(m)
    out = []
    for comp in scc_decomposition(m).components:
        block = m.submatrix(comp)
        r = pf_eigen(block, tol=tol, max_iter=max_iter).eigenvalue if is_irreducible(block) else 0.0
        out.append((comp, r))
    return out


def subinvariance_test(m, v, lam, slack=DEFAULT_SLACK):
    """Compare ``Mv`` against ``lam * v`` row by row.

    Returns ``"le"`` when ``(Mv)_i <= lam v_i`` for every row (so the
    spectral radius is at most ``lam``), ``"lt"`` when in addition some row
    is strict by more than ``slack`` (spectral radius strictly below
    ``lam``), and ``"inconclusive"`` when some row exceeds ``lam v_i`` by
    more than ``slack``.
    """
    m = as_matrix(m)
    if not is_irreducible(m):
        raise ReducibleMatrixError("subinvariance_test needs an irreducible matrix")
    v = np.asarray(v, dtype=float)
    if v.shape != (m.dim,):
        raise HandlebodyError("vector dimension does not match matrix")
    if np.any(v < 0) or not np.any(v > 0):
        raise HandlebodyError("vector must be nonnegative and nonzero")
    diff = m.to_array() @ v - lam * v
    if np.any(diff > slack):
        return "inconclusive"
    if np.any(diff < -slack):
        return "lt"
    return "le"
