import itertools
import random

import numpy as np
import pytest

from wordmaps.errors import BudgetExceeded
from wordmaps.fields import make_field
from wordmaps.kernel import evaluate_image
from wordmaps.oracle import (
    Mat2, brute_psl2_image, brute_trace_image, enumerate_sl2, random_matrix_oracle, realize_triple,
    sl2_array, sl2_order, word_value, word_values_array,
)
from wordmaps.trace import trace_polynomial
from wordmaps.words import IDENTITY, X1, Word, commutator, multiply, parse, theorem_word

from conftest import C, PANEL

ODD_Q = [(3, 1), (5, 1), (7, 1), (3, 2)]


def mat(F, a, b, c, d):
    return Mat2(F(a), F(b), F(c), F(d))


class TestMat2:
    def test_arithmetic(self):
        F = make_field(5)
        x = mat(F, 1, 2, 3, 2)
        assert x.det() == 1 * 2 - 2 * 3
        y = mat(F, 0, 1, -1, 0)
        assert y.det() == 1 and y.trace() == 0
        assert y ** 4 == Mat2.identity(F)
        assert y @ y.inverse() == Mat2.identity(F)
        assert -(-y) == y

    def test_negative_power(self):
        F = make_field(7)
        x = mat(F, 2, 1, 1, 1)
        assert x ** -3 == (x ** 3).inverse()


class TestEnumeration:
    @pytest.mark.parametrize("p, n, count", [(3, 1, 24), (5, 1, 120), (7, 1, 336), (3, 2, 720)])
    def test_counts(self, p, n, count):
        F = make_field(p, n)
        mats = list(enumerate_sl2(F))
        assert len(mats) == count == sl2_order(F.q)
        assert len(set(mats)) == count
        assert all(m.det() == 1 for m in mats)

    @pytest.mark.parametrize("p, n", ODD_Q)
    def test_array_matches_objects(self, p, n):
        F = make_field(p, n)
        arr = sl2_array(F)
        assert [tuple(r) for r in arr.tolist()] == [m.indices() for m in enumerate_sl2(F)]

    def test_limit(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_sl2(make_field(11), limit=1000))


class TestWordValue:
    def test_examples(self):
        F = make_field(5)
        x = mat(F, 1, 1, 0, 1)
        I = Mat2.identity(F)
        assert word_value(IDENTITY, x, x) == I
        assert word_value(X1, x, I) == x
        assert word_value(C, I, I) == I

    def test_homomorphism(self):
        F = make_field(7)
        rng = random.Random(1)
        group = list(enumerate_sl2(F))
        for _ in range(30):
            x, y = rng.choice(group), rng.choice(group)
            u, v = theorem_word(1), parse("x2^3 x1^-1")
            assert word_value(multiply(u, v), x, y) == word_value(u, x, y) @ word_value(v, x, y)

    def test_vectorized_matches_objects(self):
        F = make_field(5)
        tab = F.tables()
        S = sl2_array(F)
        rng = np.random.default_rng(0)
        X = S[rng.integers(0, len(S), 50)]
        Y = S[rng.integers(0, len(S), 50)]
        for w in PANEL.values():
            W = word_values_array(w, X, Y, tab)
            for i in range(50):
                x = Mat2(*(F.element_at(int(v)) for v in X[i]))
                y = Mat2(*(F.element_at(int(v)) for v in Y[i]))
                assert tuple(W[i].tolist()) == word_value(w, x, y).indices()

    @pytest.mark.parametrize("name", sorted(PANEL))
    def test_trace_identity_exhaustive_q3(self, name):
        # every pair in SL2(3)^2 satisfies tr w(x, y) = tau(w)(tr x, tr y, tr xy)
        F = make_field(3)
        tau = trace_polynomial(PANEL[name])
        group = list(enumerate_sl2(F))
        for x, y in itertools.product(group, repeat=2):
            assert word_value(PANEL[name], x, y).trace() == tau(x.trace(), y.trace(), (x @ y).trace())


class TestBruteImage:
    def test_generator(self):
        assert brute_trace_image(X1, make_field(3)).is_full()

    def test_theorem_word_q3(self):
        image = brute_trace_image(theorem_word(2), make_field(3))
        assert 0 not in image and len(image) == 2
        assert image.evaluations == 576

    def test_theorem_word_q5_recorded(self):
        # p = 5 equals 2k + 1, outside the theorem; just record agreement with the kernel
        F = make_field(5)
        brute = brute_trace_image(theorem_word(2), F)
        assert brute.evaluations == 14400
        assert brute == evaluate_image(trace_polynomial(theorem_word(2)), F)

    @pytest.mark.parametrize("p, n", ODD_Q)
    @pytest.mark.parametrize("name", sorted(PANEL))
    def test_matches_kernel(self, p, n, name):
        F = make_field(p, n)
        w = PANEL[name]
        assert brute_trace_image(w, F) == evaluate_image(trace_polynomial(w), F)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            brute_trace_image(X1, make_field(7), budget=1000)


class TestPSL:
    def test_generator_surjective(self):
        img = brute_psl2_image(X1, make_field(3))
        assert img.group_order == 12 and not img.proper and img.missed == ()

    def test_theorem_word_q3(self):
        img = brute_psl2_image(theorem_word(2), make_field(3))
        assert img.proper
        assert img.missed
        for m in img.missed:
            assert m.trace() == 0
            assert m @ m == -Mat2.identity(make_field(3))  # order 2 in PSL2

    def test_commutator_q5(self):
        img = brute_psl2_image(commutator(Word.gen(1), Word.gen(2)), make_field(5))
        assert img.group_order == 60 and img.image_size == 60

    def test_to_dict(self):
        doc = brute_psl2_image(theorem_word(2), make_field(3)).to_dict()
        assert doc["proper"] is True and doc["group_order"] == 12
        assert all(entry["trace"] == [0] for entry in doc["missed"])


class TestRealize:
    @pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (7, 1), (3, 2)])
    def test_every_triple(self, p, n):
        F = make_field(p, n)
        for s, t, u in itertools.product(F.elements(), repeat=3):
            pair = realize_triple(s, t, u, F)
            assert pair is not None
            x, y = pair
            assert x.det() == 1 and y.det() == 1
            assert (x.trace(), y.trace(), (x @ y).trace()) == (s, t, u)

    def test_examples(self):
        F = make_field(3)
        x, y = realize_triple(0, 0, 0, F)
        assert x.trace() == 0 and y.trace() == 0 and (x @ y).trace() == 0
        x, y = realize_triple(2, 2, 2, make_field(11))
        assert x == mat(make_field(11), 0, 1, -1, 2)


class TestRandomOracle:
    def test_product(self):
        assert random_matrix_oracle(parse("x1 x2"), 1000, 65521) == 0

    def test_theorem_words(self):
        for k in (1, 2, 3):
            assert random_matrix_oracle(theorem_word(k), 2000, 65521, seed=k) == 0

    def test_random_length_15(self):
        rng = random.Random(5)
        letters = [(rng.choice([1, 2]), rng.choice([-1, 1])) for _ in range(40)]
        w = Word.of(letters)
        assert random_matrix_oracle(w, 1000, 65521) == 0

    def test_detects_wrong_polynomial(self, monkeypatch):
        import wordmaps.oracle as oracle
        monkeypatch.setattr(oracle, "trace_polynomial", lambda w: trace_polynomial(w) + 1)
        assert random_matrix_oracle(C, 50, 65521) == 50
