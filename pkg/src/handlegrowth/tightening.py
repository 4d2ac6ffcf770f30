"""Tightening moves on incidence matrices.

A tightening move rewrites one row ``i0`` of the incidence matrix by an
integer vector ``d``.  When the weighted gain ``sum_j d_j w_j`` against the
Perron-Frobenius weights ``w`` is negative, the row inequality
``(M'w)_i0 < lambda w_i0`` holds while every other row stays an equality,
so the growth rate strictly drops.  If ``M'`` becomes reducible, the growth
is carried by its dominant irreducible diagonal block, which also has
smaller spectral radius.

Whether a move is realised by an actual disc in the handlebody cannot be
read off the matrix; outcomes record that realisability is the caller's
assertion.
"""
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import MoveError, MoveNotRealizable, NotATighteningCandidate, ReducibleMatrixError
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    NonNegMatrix,
    as_matrix,
    block_radii,
    is_irreducible,
    pf_eigen,
    spectral_radius_reducible,
)

__all__ = [
    "WeightSystem",
    "TighteningMove",
    "MoveOutcome",
    "PowerGrowth",
    "standard_weights",
    "move_gain",
    "apply_move",
    "evaluate_move",
    "swap_moves",
    "free_moves",
    "search_moves",
    "growth_of_power",
    "GAIN_ZERO",
]

GAIN_ZERO = 1e-9


@dataclass(frozen=True)
class WeightSystem:
    """Positive weights on the 1-handles (edges).

    ``standard`` marks the Perron-Frobenius eigenvector of ``matrix``,
    normalised to max-norm 1, with ``eigenvalue`` its growth rate.
    """

    weights: np.ndarray
    standard: bool = False
    eigenvalue: float = None
    matrix: NonNegMatrix = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or np.any(w <= 0):
            raise MoveError("weights must be a vector of strictly positive reals")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    def is_eigenvector(self, m, tol=1e-9):
        a = as_matrix(m).to_array()
        return bool(np.max(np.abs(a @ self.weights - self.eigenvalue * self.weights)) <= tol * max(1.0, self.eigenvalue))


@dataclass(frozen=True)
class TighteningMove:
    row: int
    delta: tuple
    realizability: str = "user-asserted"

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))

    def to_dict(self):
        return {"row": self.row, "delta": list(self.delta)}


@dataclass(frozen=True)
class MoveOutcome:
    move: TighteningMove
    matrix_before: NonNegMatrix
    matrix_after: NonNegMatrix
    gain: float
    branch: str  # "irreducible" or "restricted"
    growth_before: float
    growth_after: float
    subsystem: tuple = None
    submatrix: NonNegMatrix = None
    blocks: list = field(default=None, compare=False)

    @property
    def reduction(self):
        return self.growth_before - self.growth_after


@dataclass(frozen=True)
class PowerGrowth:
    n: int
    growth_of_power: float
    power_of_growth: float

    @property
    def relative_difference(self):
        return abs(self.growth_of_power - self.power_of_growth) / max(abs(self.power_of_growth), 1e-300)


def standard_weights(m, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    m = as_matrix(m)
    if not is_irreducible(m):
        raise ReducibleMatrixError("standard weights need an irreducible incidence matrix")
    pf = pf_eigen(m, tol=tol, max_iter=max_iter)
    return WeightSystem(pf.vector, standard=True, eigenvalue=pf.eigenvalue, matrix=m)


def _weights_array(w):
    return w.weights if isinstance(w, WeightSystem) else np.asarray(w, dtype=float)


def move_gain(move, w):
    """Weighted gain ``sum_j d_j w_j`` of a move."""
    w = _weights_array(w)
    if len(move.delta) != len(w):
        raise MoveError("move and weights have different dimensions")
    return float(np.dot(np.asarray(move.delta, dtype=float), w))


def apply_move(m, move):
    m = as_matrix(m)
    if not 0 <= move.row < m.dim:
        raise MoveError(f"row {move.row} out of range")
    if len(move.delta) != m.dim:
        raise MoveError("move and matrix have different dimensions")
    rows = m.tolist()
    new_row = [a + d for a, d in zip(rows[move.row], move.delta)]
    if min(new_row) < 0:
        raise MoveNotRealizable(f"move not realizable: row {move.row} would become {new_row}")
    rows[move.row] = new_row
    return NonNegMatrix(rows)


def evaluate_move(m, move, weights=None, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Apply ``move`` and report the change in growth rate.

    ``weights`` defaults to the standard weights of ``m``; pass them in when
    evaluating many moves on one matrix.
    """
    m = as_matrix(m)
    if weights is None:
        weights = standard_weights(m, tol=tol, max_iter=max_iter)
    elif not is_irreducible(m):
        raise ReducibleMatrixError("evaluate_move needs an irreducible matrix")
    gain = move_gain(move, weights)
    if gain >= -GAIN_ZERO:
        raise NotATighteningCandidate(f"not a tightening candidate: weighted gain {gain:.6g} is not negative")
    after = apply_move(m, move)
    before = weights.eigenvalue
    if before is None:
        before = pf_eigen(m, tol=tol, max_iter=max_iter).eigenvalue
    if is_irreducible(after):
        growth = pf_eigen(after, tol=tol, max_iter=max_iter).eigenvalue
        outcome = MoveOutcome(move, m, after, gain, "irreducible", before, growth)
    else:
        blocks = block_radii(after, tol=tol, max_iter=max_iter)
        comp, growth = max(blocks, key=lambda cb: cb[1])
        outcome = MoveOutcome(
            move, m, after, gain, "restricted", before, growth,
            subsystem=comp, submatrix=after.submatrix(comp), blocks=blocks,
        )
    if not outcome.growth_after < outcome.growth_before:
        raise MoveError(
            f"growth did not decrease ({before!r} -> {outcome.growth_after!r}); weights are not the PF vector of m"
        )
    return outcome


def swap_moves(m):
    """Moves trading ``2c`` crossings of edge ``p`` for ``2c`` of edge ``q`` in one row."""
    m = as_matrix(m)
    k = m.dim
    for i in range(k):
        for p in range(k):
            for q in range(k):
                if p == q:
                    continue
                for c in range(1, m[i, p] // 2 + 1):
                    d = [0] * k
                    d[p] = -2 * c
                    d[q] = 2 * c
                    yield TighteningMove(i, tuple(d))


def free_moves(m, max_delta=2):
    """Every nonzero integer row delta with entries in ``[-max_delta, max_delta]``."""
    m = as_matrix(m)
    k = m.dim
    for i in range(k):
        ranges = [range(max(-max_delta, -m[i, j]), max_delta + 1) for j in range(k)]
        for d in product(*ranges):
            if any(d):
                yield TighteningMove(i, d)


def _candidates(m, catalog, max_delta):
    if catalog == "swap":
        return swap_moves(m)
    if catalog == "free":
        return free_moves(m, max_delta=max_delta)
    if isinstance(catalog, str):
        raise MoveError(f"unknown move catalog {catalog!r}")
    return iter(catalog)


def search_moves(m, catalog="swap", max_delta=2, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Evaluate every candidate move with negative gain and rank the outcomes.

    ``catalog`` is ``"swap"``, ``"free"`` (bounded by ``max_delta``) or an
    explicit iterable of :class:`TighteningMove`.  Outcomes are sorted by
    resulting growth, then gain, row and delta.
    """
    m = as_matrix(m)
    w = standard_weights(m, tol=tol, max_iter=max_iter)
    outcomes = []
    seen = set()
    for move in _candidates(m, catalog, max_delta):
        key = (move.row, move.delta)
        if key in seen:
            continue
        seen.add(key)
        if move_gain(move, w) >= -GAIN_ZERO:
            continue
        try:
            outcomes.append(evaluate_move(m, move, weights=w, tol=tol, max_iter=max_iter))
        except MoveNotRealizable:
            continue
    outcomes.sort(key=lambda o: (o.growth_after, o.gain, o.move.row, o.move.delta))
    return outcomes


def growth_of_power(m, n, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Compare the growth of ``M**n`` (exact integer power) with ``lambda(M)**n``."""
    m = as_matrix(m)
    if n < 1:
        raise ValueError("power must be a positive integer")
    lam = pf_eigen(m, tol=tol, max_iter=max_iter).eigenvalue
    mn = m.power(n)
    lam_n = spectral_radius_reducible(mn, tol=tol, max_iter=max_iter)
    return PowerGrowth(n, lam_n, lam**n)
