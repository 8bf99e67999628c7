import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings

from wordmaps.certificate import METHOD, Certificate, certify_missing_trace, dumps
from wordmaps.errors import BudgetExceeded
from wordmaps.fields import make_field
from wordmaps.kernel import AttainedSet, evaluate_image
from wordmaps.trace import S, T, TracePolynomial, U, evaluate, trace_polynomial
from wordmaps.words import X1, theorem_word

from conftest import PANEL, words


def naive_image(tau, field):
    """Element-by-element evaluation through FqElement arithmetic."""
    elems = list(field.elements())
    return {evaluate(tau, s, t, u).index for s, t, u in itertools.product(elems, repeat=3)}


class TestEvaluateImage:
    def test_projection(self):
        image = evaluate_image(S, make_field(3))
        assert image.is_full() and len(image) == 3
        assert image.evaluations == 27

    def test_square_minus_two(self):
        F = make_field(3)
        image = evaluate_image(S * S - 2, F)
        assert sorted(a.index for a in image.attained()) == [1, 2]
        assert image.missing() == [F.zero]

    def test_theorem_word_q3(self):
        F = make_field(3)
        image = evaluate_image(trace_polynomial(theorem_word(2)), F)
        assert 0 not in image
        assert 1 in image and 2 in image

    def test_constant(self):
        image = evaluate_image(TracePolynomial.constant(2), make_field(5))
        assert [a.index for a in image.attained()] == [2]

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1), (7, 1), (3, 3)])
    @pytest.mark.parametrize("name", sorted(PANEL))
    def test_matches_naive(self, p, n, name):
        F = make_field(p, n)
        tau = trace_polynomial(PANEL[name])
        image = evaluate_image(tau, F)
        assert set(np.flatnonzero(image.bitmap)) == naive_image(tau, F)

    @settings(max_examples=25, deadline=None)
    @given(words(5))
    def test_random_words_match_naive(self, w):
        F = make_field(5)
        tau = trace_polynomial(w)
        assert set(np.flatnonzero(evaluate_image(tau, F).bitmap)) == naive_image(tau, F)

    def test_large_coefficients_reduced(self):
        F = make_field(7)
        tau = 10**30 * S + 7 * T - U
        assert evaluate_image(tau, F) == evaluate_image(S * (10**30 % 7) - U, F)

    @pytest.mark.parametrize("threads", [2, 3, 5])
    def test_thread_count_irrelevant(self, threads):
        F = make_field(3, 2)
        tau = trace_polynomial(theorem_word(2))
        assert evaluate_image(tau, F, threads=threads) == evaluate_image(tau, F, threads=1)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            evaluate_image(S, make_field(7), budget=7**3 - 1)
        assert evaluate_image(S, make_field(7), budget=7**3).is_full()


class TestAttainedSet:
    def test_from_indices(self):
        F = make_field(5)
        a = AttainedSet.from_indices(F, [0, 3])
        assert 3 in a and F(3) in a and 1 not in a
        assert len(a) == 2 and not a.is_full()
        assert [x.index for x in a.missing()] == [1, 2, 4]


class TestCertificate:
    def test_q3(self):
        cert = certify_missing_trace(theorem_word(2), make_field(3), k=2)
        assert cert.missing and cert.evaluations == 27
        assert cert.method == METHOD
        assert cert.deduction is not None
        assert [list(a.coeffs) for a in cert.full_missing_set] == [[0]]

    def test_q27(self):
        cert = certify_missing_trace(theorem_word(2), make_field(3, 3), k=2)
        assert cert.missing and cert.evaluations == 19683

    def test_not_missing(self):
        cert = certify_missing_trace(X1, make_field(5))
        assert not cert.missing and cert.full_missing_set == ()
        assert cert.deduction is None

    def test_other_target(self):
        cert = certify_missing_trace(theorem_word(2), make_field(3), target=1)
        assert not cert.missing
        assert cert.target == 1

    def test_json_document(self):
        cert = certify_missing_trace(theorem_word(2), make_field(3, 2), k=2)
        doc = json.loads(cert.to_json())
        assert doc["field"] == {"p": 3, "n": 2, "q": 9, "modulus": [1, 0, 1]}
        assert doc["word"] == "x1^4 x2 x1^-2 x2^-1 x1^2 x2 x1^-2 x2^-1"
        assert doc["evaluations"] == 729 and doc["k"] == 2
        assert "library_version" in doc
        assert doc["missing"] == ([0, 0] in doc["full_missing_set"])

    def test_json_is_stable(self):
        a = certify_missing_trace(theorem_word(2), make_field(3, 3), k=2).to_json()
        b = certify_missing_trace(theorem_word(2), make_field(3, 3), k=2, threads=4).to_json()
        assert a == b

    def test_invariants_enforced(self):
        F = make_field(3)
        with pytest.raises(ValueError):
            Certificate("x1", None, F, F(0), True, (), 27, "s")
        with pytest.raises(ValueError):
            Certificate("x1", None, F, F(0), False, (), 26, "s")

    def test_dumps_sorted(self):
        assert dumps({"b": 1, "a": [2]}) == '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'
