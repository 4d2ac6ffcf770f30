import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from handlegrowth.errors import PennerError, PennerHypothesisError
from handlegrowth.penner import (
    DELTA,
    DualArc,
    PennerPair,
    build_boundary_pair,
    compare_growth,
    parse_twist_word,
    penner_product,
    twist_matrix,
    validate_pair,
)

from helpers import GOLDEN, eig_oracle


def torus():
    return PennerPair(["a0"], ["a1"], {("a0", "a1"): 1}, genus=1, boundary=1,
                      certificates={"fills": True, "no_parallel": True})


TORUS_WORD = [("a1", +1), ("a0", -1)]


def chain():
    return PennerPair(["c"], ["d1", "d2"], {("c", "d1"): 1, ("c", "d2"): 1})


class TestValidate:
    def test_torus_ok(self):
        rep = validate_pair(torus())
        assert rep.ok
        assert any("asserted" in n for n in rep.notes)

    def test_uncertified_filling_is_noted(self):
        rep = validate_pair(chain())
        assert rep.ok
        assert any("not certified" in n for n in rep.notes)

    def test_zero_intersection(self):
        p = PennerPair(["a"], ["b"], {("a", "b"): 0})
        rep = validate_pair(p)
        assert not rep.ok
        assert any("misses" in v for v in rep.violations)

    def test_within_family(self):
        p = PennerPair(["a", "b"], ["c"], {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1})
        assert any("within family C" in v for v in validate_pair(p).violations)

    def test_disconnected(self):
        p = PennerPair(["a", "b"], ["c", "d"], {("a", "c"): 1, ("b", "d"): 2})
        assert any("disconnected" in v for v in validate_pair(p).violations)

    def test_euler_characteristic(self):
        p = PennerPair(["a"], ["b"], {("a", "b"): 1}, genus=1, boundary=0)
        assert any("Euler" in v for v in validate_pair(p).violations)

    def test_unknown_curve(self):
        with pytest.raises(PennerError):
            PennerPair(["a"], ["b"], {("a", "z"): 1})


class TestTwistMatrix:
    def test_torus(self):
        p = torus()
        assert twist_matrix(p, "a0") == [[1, 1], [0, 1]]
        assert twist_matrix(p, "a1") == [[1, 0], [1, 1]]

    def test_disjoint_curve_is_identity(self):
        p = PennerPair(["a", "b"], ["c"], {("a", "c"): 1})
        assert twist_matrix(p, "b") == np.eye(3, dtype=int).tolist()

    def test_chain_row(self):
        assert twist_matrix(chain(), "c").rows[0] == (1, 1, 1)


class TestWord:
    def test_string_form(self):
        assert parse_twist_word("a+ b-") == (("a", 1), ("b", -1))

    def test_dict_form(self):
        assert parse_twist_word([{"curve": "a", "sign": "-"}]) == (("a", -1),)

    def test_bad_sign(self):
        with pytest.raises(PennerHypothesisError):
            parse_twist_word([("a", 0)])


class TestProduct:
    def test_torus_golden(self):
        r = penner_product(torus(), TORUS_WORD)
        assert abs(r.lambda_boundary - GOLDEN) <= 1e-9
        assert r.matrix == [[1, 1], [1, 2]]
        assert r.signs == {"C": -1, "D": 1}

    def test_chain_against_hand_product(self):
        r = penner_product(chain(), "c+ d1- d2-")
        assert r.matrix == [[3, 1, 1], [1, 1, 0], [1, 0, 1]]
        assert r.lambda_boundary == pytest.approx(2 + 3**0.5, abs=1e-12)

    def test_empty_word(self):
        with pytest.raises(PennerHypothesisError, match="empty"):
            penner_product(torus(), [])

    def test_missing_curve(self):
        with pytest.raises(PennerHypothesisError, match="no twist along"):
            penner_product(chain(), "c+ d1-")

    def test_sign_inconsistency(self):
        with pytest.raises(PennerHypothesisError, match="sign inconsistency"):
            penner_product(torus(), [("a1", 1), ("a0", 1)])
        with pytest.raises(PennerHypothesisError, match="sign inconsistency"):
            penner_product(chain(), "c+ d1- d2+")

    def test_repeated_letters_allowed(self):
        r = penner_product(torus(), "a1+ a1+ a0-")
        # T(a1) T(a1) T(a0) = [[1,0],[2,1]] [[1,1],[0,1]]
        assert r.matrix == [[1, 1], [2, 3]]
        assert r.lambda_boundary == pytest.approx(2 + 3**0.5, abs=1e-12)


def _random_pair(rng):
    nc, nd = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    C = [f"c{i}" for i in range(nc)]
    D = [f"d{j}" for j in range(nd)]
    inter = {}
    for i, c in enumerate(C):
        for j, d in enumerate(D):
            if rng.random() < 0.6 or (i == 0 or j == 0):
                inter[(c, d)] = int(rng.integers(1, 3))
    return PennerPair(C, D, inter)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_products(seed):
    rng = np.random.default_rng(seed)
    p = _random_pair(rng)
    letters = list(p.C) + list(p.D) + [str(x) for x in rng.choice(p.curves, size=int(rng.integers(0, 3)))]
    rng.shuffle(letters)
    sc = 1 if rng.random() < 0.5 else -1
    word = [(c, sc if p.family(c) == "C" else -sc) for c in letters]
    r = penner_product(p, word)
    rev = penner_product(p, list(reversed(word)))
    arr = r.matrix.to_array().astype(float)
    assert r.lambda_boundary > 1
    assert round(np.linalg.det(arr)) == 1
    assert r.lambda_boundary == pytest.approx(rev.lambda_boundary, rel=1e-9)
    assert r.lambda_boundary == pytest.approx(eig_oracle(arr), rel=1e-9)


class TestBoundaryPair:
    def test_torus_sizes_and_intersections(self):
        bp = build_boundary_pair(torus(), DualArc("a0"))
        assert bp.Q == ("a1@0", "a0@1", DELTA)
        assert bp.R == ("a0@0", "a1@1")
        assert bp.i(DELTA, "a0@0") == 2
        assert bp.i(DELTA, "a1@1") == 2
        assert bp.i("a0@0", "a1@0") == 1
        assert bp.i("a0@0", "a1@1") == 0
        assert bp.genus == 2
        assert validate_pair(bp.to_pair()).ok

    def test_gamma_in_D_swaps(self):
        bp = build_boundary_pair(torus(), DualArc("a1"))
        assert "swapped" in bp.convention
        assert bp.Q == ("a0@0", "a1@1", DELTA)
        assert bp.i(DELTA, "a1@0") == 2

    def test_delta_scales_with_intersections(self):
        p = PennerPair(["g"], ["y", "z"], {("g", "y"): 3, ("g", "z"): 1}, genus=2, boundary=1)
        bp = build_boundary_pair(p, DualArc("g"))
        assert bp.i(DELTA, "y@1") == 6
        assert bp.i(DELTA, "z@1") == 2
        assert bp.i(DELTA, "y@0") == 0

    def test_arc_meeting_twice(self):
        with pytest.raises(PennerError, match="exactly one point"):
            build_boundary_pair(torus(), DualArc("a0", meets=2))

    def test_boundary_count(self):
        p = PennerPair(["a0"], ["a1"], {("a0", "a1"): 1}, genus=1, boundary=2)
        with pytest.raises(PennerError, match="one boundary component"):
            build_boundary_pair(p, DualArc("a0"))

    def test_boundary_pair_product(self):
        bp = build_boundary_pair(torus(), DualArc("a0")).to_pair()
        word = [(c, 1) for c in bp.C] + [(c, -1) for c in bp.D]
        r = penner_product(bp, word)
        assert r.lambda_boundary == pytest.approx(eig_oracle(r.matrix.tolist()), rel=1e-12)
        assert r.lambda_boundary > GOLDEN


class TestCompare:
    @pytest.mark.parametrize("lam, ok", [(2.0, True), (3.0, False), (GOLDEN, True), (GOLDEN + 1e-6, False)])
    def test_torus(self, lam, ok):
        c = compare_growth(lam, torus(), TORUS_WORD)
        assert c.consistent is ok
        assert ("inconsistent" in c.message) is (not ok)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_boundary_pair_preserves_validity(seed):
    rng = np.random.default_rng(seed)
    base = _random_pair(rng)
    p = PennerPair(base.C, base.D, base.intersections, genus=int(rng.integers(1, 4)), boundary=1)
    gamma = str(rng.choice(p.curves))
    bp = build_boundary_pair(p, DualArc(gamma))
    assert len(bp.Q) == len(p.C) + len(p.D) + 1
    assert len(bp.R) == len(p.C) + len(p.D)
    assert validate_pair(p).ok
    assert validate_pair(bp.to_pair()).ok
