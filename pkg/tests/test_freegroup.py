import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from handlegrowth.errors import GraphError, WordError
from handlegrowth.freegroup import (
    FreeEndomorphism,
    abelianization,
    apply_endo,
    compose_endos,
    elementary_nielsen,
    format_word,
    induced_pi1_map,
    inverse_word,
    is_surjective,
    parse_word,
    reduce_word,
)
from handlegrowth.graphs import Graph, GraphMap, compose_maps, identity_map

from helpers import random_nielsen_product, random_word


def E(*images):
    return FreeEndomorphism([parse_word(w) for w in images])


class TestWords:
    def test_parse_and_format(self):
        assert parse_word("x1 x2- x1") == (1, -2, 1)
        assert format_word((1, -2, 1)) == "x1 x2- x1"
        assert parse_word("") == ()

    def test_unknown_symbol(self):
        with pytest.raises(WordError):
            parse_word("x1 y2")
        with pytest.raises(WordError):
            parse_word("x3", rank=2)

    @pytest.mark.parametrize("word, expected", [
        ((1, -1, 2), (2,)),
        ((1, 2, -2, -1), ()),
        ((-1, -1), (-1, -1)),
        ((2, 1, -1, 1), (2, 1)),
    ])
    def test_reduce(self, word, expected):
        assert reduce_word(word) == expected

    def test_inverse(self):
        w = (1, -2, 3)
        assert inverse_word(w) == (-3, 2, -1)
        assert reduce_word(w + inverse_word(w)) == ()


class TestEndomorphisms:
    def test_apply(self):
        e = E("x1 x2", "x2")
        assert apply_endo(e, parse_word("x1 x2-")) == (1,)
        assert apply_endo(e, parse_word("x1-")) == (-2, -1)

    def test_compose_order(self):
        a = E("x1 x2", "x2")
        b = E("x2", "x1")
        ab = compose_endos(a, b)
        # a∘b: x1 -> a(x2) = x2, x2 -> a(x1) = x1 x2
        assert ab == E("x2", "x1 x2")

    def test_rank_mismatch(self):
        with pytest.raises(WordError):
            compose_endos(FreeEndomorphism.identity(2), FreeEndomorphism.identity(3))

    def test_abelianization(self):
        e = E("x1 x2 x1", "x2- x1")
        np.testing.assert_array_equal(abelianization(e), [[2, 1], [1, -1]])


class TestSurjective:
    @pytest.mark.parametrize("images, expected", [
        (("x1 x2", "x2"), True),
        (("x1 x1", "x2"), False),
        (("x1", "x2 x1 x2 x1- x2-"), False),
        (("x2 x1", "x1- x2- x1"), True),
        (("x1 x2 x1-", "x1"), True),
        (("", "x2"), False),
    ])
    def test_examples(self, images, expected):
        assert is_surjective(E(*images)) is expected

    def test_identity_rank_three(self):
        assert is_surjective(FreeEndomorphism.identity(3))

    def test_unimodular_but_not_onto(self):
        e = E("x1", "x2 x1 x2 x1- x2-")
        assert round(abs(np.linalg.det(abelianization(e)))) == 1
        assert not is_surjective(e)

    def test_elementary_generators(self):
        for r in (1, 2, 3):
            for e in elementary_nielsen(r):
                assert is_surjective(e)

    def test_random_nielsen_products(self):
        rng = np.random.default_rng(31)
        for _ in range(60):
            rank = int(rng.integers(1, 4))
            e, inv = random_nielsen_product(rng, rank, int(rng.integers(1, 8)))
            assert is_surjective(e)
            assert compose_endos(e, inv) == FreeEndomorphism.identity(rank)
            assert compose_endos(inv, e) == FreeEndomorphism.identity(rank)

    def test_surjective_implies_unimodular(self):
        rng = np.random.default_rng(32)
        hits = 0
        for _ in range(300):
            rank = int(rng.integers(1, 4))
            e = FreeEndomorphism([random_word(rng, rank, 3) for _ in range(rank)], rank=rank)
            if is_surjective(e):
                hits += 1
                assert round(abs(np.linalg.det(abelianization(e)))) == 1
        assert hits > 0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_composition_laws(seed):
    rng = np.random.default_rng(seed)
    rank = int(rng.integers(1, 4))
    e1 = FreeEndomorphism([random_word(rng, rank, 4) for _ in range(rank)], rank=rank)
    e2 = FreeEndomorphism([random_word(rng, rank, 4) for _ in range(rank)], rank=rank)
    w = random_word(rng, rank, 6)
    c = compose_endos(e1, e2)
    assert apply_endo(c, w) == apply_endo(e1, apply_endo(e2, w))
    np.testing.assert_array_equal(abelianization(c), abelianization(e2) @ abelianization(e1))


class TestInducedPi1:
    def test_rose_reads_off_images(self):
        f = GraphMap.on_rose({"a": "a b", "b": "~a"})
        assert induced_pi1_map(f) == E("x1 x2", "x1-")

    def test_theta_identity(self):
        g = Graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")])
        e = induced_pi1_map(identity_map(g), tree=["a"])
        assert e == FreeEndomorphism.identity(2)

    def test_theta_generators(self):
        g = Graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")])
        # exchange b and c, keep a
        f = GraphMap(g, g, {"u": "u", "v": "v"}, {"a": "a", "b": "c", "c": "b"})
        assert induced_pi1_map(f, tree=["a"]) == E("x2", "x1")

    def test_barbell_swap(self):
        g = Graph(["u", "v"], [("a", "u", "u"), ("b", "u", "v"), ("c", "v", "v")])
        f = GraphMap(g, g, {"u": "v", "v": "u"}, {"a": "c", "b": "~b", "c": "a"})
        e = induced_pi1_map(f, tree=["b"])
        assert e == E("x2", "x1")
        assert is_surjective(e)

    def test_tree_must_span(self):
        g = Graph(["u", "v"], [("a", "u", "u"), ("b", "u", "v"), ("c", "v", "v")])
        with pytest.raises(GraphError):
            induced_pi1_map(identity_map(g), tree=[])
        with pytest.raises(GraphError):
            induced_pi1_map(identity_map(g), tree=["z"])

    def test_functorial_on_rose(self):
        rng = np.random.default_rng(33)
        checked = 0
        for _ in range(40):
            e1 = FreeEndomorphism([random_word(rng, 2, 3) or (1,) for _ in range(2)], rank=2)
            e2 = FreeEndomorphism([random_word(rng, 2, 3) or (2,) for _ in range(2)], rank=2)
            try:
                f12 = compose_maps(_rose_map(e1), _rose_map(e2))
            except GraphError:
                continue  # the reduced composite collapsed an edge
            assert induced_pi1_map(f12) == compose_endos(e1, e2)
            checked += 1
        assert checked > 20


def _rose_map(e):
    names = "abcd"
    return GraphMap.on_rose({
        names[i]: " ".join(("~" if k < 0 else "") + names[abs(k) - 1] for k in w)
        for i, w in enumerate(e.images)
    })
