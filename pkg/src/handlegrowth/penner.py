"""Penner pairs, twist words and boundary dilatations.

A Penner pair is two curve systems ``C`` and ``D`` on a surface, described
here only by their geometric intersection numbers.  Twisting along ``C``
in one direction and along ``D`` in the other, with every curve used at
least once, gives a pseudo-Anosov map.  Its dilatation is the
Perron-Frobenius eigenvalue of the product of the twist matrices: the twist
along ``c`` acts on a weight vector over ``C ∪ D`` by
``w(c) += sum_y i(c, y) w(y)`` and leaves the other weights alone.

Twist words are written in composition order, as in ``T_b^+ ∘ T_a^-``: the
rightmost letter is applied first and the product matrix is
``T(letters[0]) @ T(letters[1]) @ ...``.

Filling and efficient intersection depend on the actual embedding and are
recorded as caller-supplied certificates; only necessary conditions are
checked.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import PennerError, PennerHypothesisError
from .graphs import ValidationReport
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, NonNegMatrix, is_irreducible, pf_eigen

__all__ = [
    "PennerPair",
    "DualArc",
    "BoundaryPairData",
    "PennerProduct",
    "GrowthComparison",
    "parse_twist_word",
    "validate_pair",
    "twist_matrix",
    "penner_product",
    "build_boundary_pair",
    "compare_growth",
    "DELTA",
]

DELTA = "dDelta"


class PennerPair:
    """Two curve systems with their intersection numbers.

    ``intersections`` maps pairs of curve ids to nonnegative integers (order
    within a pair does not matter; missing pairs are 0), or is a full
    symmetric matrix in the order ``C + D``.
    """

    def __init__(self, C, D, intersections, genus=None, boundary=None, certificates=None):
        self.C = tuple(C)
        self.D = tuple(D)
        self.genus = genus
        self.boundary = boundary
        self.certificates = dict(certificates or {})
        names = self.curves
        if len(set(names)) != len(names):
            raise PennerError("curve ids must be distinct across both families")
        self._index = {c: i for i, c in enumerate(names)}
        n = len(names)
        if isinstance(intersections, dict):
            mat = np.zeros((n, n), dtype=np.int64)
            for (x, y), k in intersections.items():
                if x not in self._index or y not in self._index:
                    raise PennerError(f"intersection given for unknown curve pair ({x}, {y})")
                i, j = self._index[x], self._index[y]
                if mat[i, j] and mat[i, j] != k:
                    raise PennerError(f"conflicting intersection numbers for ({x}, {y})")
                mat[i, j] = mat[j, i] = k
        else:
            mat = np.array(intersections, dtype=np.int64)
            if mat.shape != (n, n):
                raise PennerError("intersection matrix must be square over C + D")
        self.intersections = mat

    @property
    def curves(self):
        return self.C + self.D

    def index(self, curve):
        try:
            return self._index[curve]
        except KeyError:
            raise PennerError(f"unknown curve {curve!r}") from None

    def family(self, curve):
        if curve in self.C:
            return "C"
        if curve in self.D:
            return "D"
        raise PennerError(f"unknown curve {curve!r}")

    def i(self, x, y):
        return int(self.intersections[self.index(x), self.index(y)])

    def __repr__(self):
        return f"PennerPair(C={list(self.C)}, D={list(self.D)})"


def validate_pair(p):
    """Machine-check the necessary conditions for a Penner pair.

    Filling cannot be decided from intersection numbers; the report notes
    whether it was asserted by the caller.
    """
    rep = ValidationReport()
    mat = p.intersections
    if not p.C or not p.D:
        rep.violations.append("both curve families must be nonempty")
    if np.any(mat < 0):
        rep.violations.append("intersection numbers must be nonnegative")
    if not np.array_equal(mat, mat.T):
        rep.violations.append("intersection matrix is not symmetric")
    if np.any(np.diag(mat) != 0):
        rep.violations.append("self-intersection numbers must be zero for simple curves")
    nc = len(p.C)
    for fam, lo, hi in (("C", 0, nc), ("D", nc, len(p.curves))):
        block = mat[lo:hi, lo:hi]
        if np.any(block != 0):
            rep.violations.append(f"curves within family {fam} intersect (families must be disjoint)")
    for c in p.curves:
        i = p.index(c)
        opp = mat[i, nc:] if i < nc else mat[i, :nc]
        if not np.any(opp > 0):
            rep.violations.append(f"curve {c} misses the opposite family (pair cannot fill)")
    if p.C and p.D and not _bipartite_connected(mat):
        rep.violations.append("intersection graph is disconnected (pair cannot fill a connected surface)")
    if p.genus is not None and p.boundary is not None and 2 - 2 * p.genus - p.boundary >= 0:
        rep.violations.append("surface must have negative Euler characteristic")
    fills = p.certificates.get("fills")
    rep.notes.append("necessary checks only; filling " + ("asserted by caller" if fills else "not certified"))
    if not p.certificates.get("no_parallel"):
        rep.notes.append("absence of parallel components not certified")
    return rep


def _bipartite_connected(mat):
    n = len(mat)
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in np.nonzero(mat[x] > 0)[0]:
            if int(y) not in seen:
                seen.add(int(y))
                stack.append(int(y))
    return len(seen) == n


def twist_matrix(p, curve):
    """Action of the twist along ``curve`` on weights over ``C + D``."""
    i = p.index(curve)
    m = np.eye(len(p.curves), dtype=np.int64)
    m[i] += p.intersections[i]
    return NonNegMatrix(m)


def parse_twist_word(word):
    """Accept ``[("a", +1), ...]``, ``[{"curve": "a", "sign": "+"}, ...]`` or ``"a+ b-"``."""
    if isinstance(word, str):
        word = [(tok[:-1], tok[-1]) for tok in word.split()]
    out = []
    for item in word:
        if isinstance(item, dict):
            curve, sign = item["curve"], item["sign"]
        else:
            curve, sign = item
        if sign in ("+", 1, "+1", "right"):
            sign = 1
        elif sign in ("-", -1, "-1", "left"):
            sign = -1
        else:
            raise PennerHypothesisError(f"bad twist sign {sign!r}")
        out.append((curve, sign))
    return tuple(out)


@dataclass(frozen=True)
class PennerProduct:
    matrix: NonNegMatrix
    lambda_boundary: float
    word: tuple
    signs: dict = field(default_factory=dict)


def _check_word(p, word):
    if not word:
        raise PennerHypothesisError("Penner hypothesis violated: empty twist word")
    fam_signs = {"C": set(), "D": set()}
    for curve, sign in word:
        fam_signs[p.family(curve)].add(sign)
    for fam, signs in fam_signs.items():
        if len(signs) > 1:
            raise PennerHypothesisError(f"sign inconsistency: family {fam} twisted in both directions")
    if fam_signs["C"] and fam_signs["D"] and fam_signs["C"] == fam_signs["D"]:
        raise PennerHypothesisError("sign inconsistency: C and D must be twisted in opposite directions")
    missing = [c for c in p.curves if c not in {curve for curve, _ in word}]
    if missing:
        raise PennerHypothesisError(f"Penner hypothesis violated: no twist along {missing}")
    return {fam: next(iter(s)) for fam, s in fam_signs.items()}


def penner_product(p, word, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    word = parse_twist_word(word)
    signs = _check_word(p, word)
    if not _bipartite_connected(p.intersections):
        raise PennerError("intersection graph is disconnected; the product cannot be irreducible")
    prod = NonNegMatrix(np.eye(len(p.curves), dtype=np.int64))
    for curve, _ in word:
        prod = prod @ twist_matrix(p, curve)
    if not is_irreducible(prod):
        raise PennerError("twist product is reducible")
    lam = pf_eigen(prod, tol=tol, max_iter=max_iter).eigenvalue
    return PennerProduct(prod, lam, word, signs)


@dataclass(frozen=True)
class DualArc:
    """Arc meeting the curve systems once, on ``gamma``, away from ``C ∩ D``."""

    gamma: str
    meets: int = 1
    other_intersections: dict = field(default_factory=dict)


@dataclass
class BoundaryPairData:
    """Curves on the boundary of ``S × I`` built from a pair and a dual arc.

    ``Q`` is the level-0 copy of the family not containing ``gamma``, the
    level-1 copy of the family containing it, and the boundary of the
    band-summed disc; ``R`` is the rest.  ``provenance`` maps each new curve
    to ``(tag, original curve)``.
    """

    Q: tuple
    R: tuple
    intersections: np.ndarray
    provenance: dict
    convention: str
    genus: int = None
    certificates: dict = field(default_factory=dict)

    def i(self, x, y):
        names = self.Q + self.R
        return int(self.intersections[names.index(x), names.index(y)])

    def to_pair(self):
        return PennerPair(
            self.Q, self.R, self.intersections,
            genus=self.genus, boundary=0, certificates=self.certificates,
        )


def _level(c, k):
    return f"{c}@{k}"


def build_boundary_pair(p, arc):
    """Penner pair on the boundary of ``S × I`` from a pair on ``S`` and a dual arc.

    With ``gamma`` in ``C``, ``Q = D_0 ∪ C_1 ∪ {∂Δ}`` and ``R = C_0 ∪ D_1``.
    Same-level copies keep their intersection numbers, copies on different
    levels are disjoint.  The disc boundary meets ``S_0`` in two arcs
    parallel to the dual arc, hence crosses ``gamma_0`` twice and misses the
    rest of level 0; on ``S_1`` it runs along both sides of ``gamma_1``,
    crossing each ``d_1`` twice per point of ``gamma ∩ d``.  If ``gamma`` is
    in ``D`` the roles of the families are exchanged.
    """
    if p.boundary != 1:
        raise PennerError("the surface must have exactly one boundary component")
    if arc.meets != 1:
        raise PennerError(f"dual arc must meet C ∪ D in exactly one point, got {arc.meets}")
    if any(k for c, k in arc.other_intersections.items() if c != arc.gamma):
        raise PennerError("dual arc meets curves other than gamma")
    fam = p.family(arc.gamma)
    if fam == "C":
        X, Y, convention = p.C, p.D, "gamma in C"
    else:
        X, Y, convention = p.D, p.C, "gamma in D: families swapped"
    Q = tuple(_level(y, 0) for y in Y) + tuple(_level(x, 1) for x in X) + (DELTA,)
    R = tuple(_level(x, 0) for x in X) + tuple(_level(y, 1) for y in Y)
    names = Q + R
    idx = {c: k for k, c in enumerate(names)}
    mat = np.zeros((len(names), len(names)), dtype=np.int64)

    def put(a, b, k):
        mat[idx[a], idx[b]] = mat[idx[b], idx[a]] = k

    for x in X:
        for y in Y:
            k = p.i(x, y)
            put(_level(x, 0), _level(y, 0), k)
            put(_level(x, 1), _level(y, 1), k)
    put(DELTA, _level(arc.gamma, 0), 2)
    for y in Y:
        put(DELTA, _level(y, 1), 2 * p.i(arc.gamma, y))
    provenance = {DELTA: ("boundary-of-disc", arc.gamma)}
    for c in X + Y:
        provenance[_level(c, 0)] = ("level-0 copy", c)
        provenance[_level(c, 1)] = ("level-1 copy", c)
    genus = 2 * p.genus if p.genus is not None else None
    return BoundaryPairData(Q, R, mat, provenance, convention, genus=genus, certificates=dict(p.certificates))


@dataclass(frozen=True)
class GrowthComparison:
    growth: float
    lambda_boundary: float
    consistent: bool

    @property
    def message(self):
        if self.consistent:
            return "consistent with tightness"
        return "inconsistent: lamination not tight or data mismatch"


def compare_growth(lam, p, word, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Check a handle growth rate against the boundary dilatation.

    A tight lamination has growth at most the dilatation on the boundary;
    a larger value is reported, never raised.  The dilatation is only known
    to within ``tol * max(1, lambda)``, so equality is judged at that scale.
    """
    prod = penner_product(p, word, tol=tol, max_iter=max_iter)
    lam_d = prod.lambda_boundary
    return GrowthComparison(float(lam), lam_d, float(lam) <= lam_d + tol * max(1.0, lam_d))
