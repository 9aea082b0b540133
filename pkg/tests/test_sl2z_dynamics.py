from __future__ import annotations

import math
import random

import pytest

from catentropy.corpus import random_word
from catentropy.errors import DomainError, ParseError
from catentropy.exact_linalg import ExactMatrix
from catentropy.sl2z_dynamics import (
    Context,
    Sl2Class,
    Sl2Element,
    TwistWord,
    classify_sl2,
    crosscheck_with_lattice,
    matrix_report,
    parse_word,
    trichotomy_report,
    word_to_matrix,
)

M = ExactMatrix.from_rows


def test_generator_matrices_a2cy3():
    assert word_to_matrix(parse_word(["T1"], Context.A2CY3)).m == M([[1, 1], [0, 1]])
    assert word_to_matrix(parse_word(["T2"], Context.A2CY3)).m == M([[1, 0], [-1, 1]])


def test_generator_matrices_elliptic():
    assert word_to_matrix(parse_word(["T"], Context.ELLIPTIC)).m == M([[1, 0], [1, 1]])
    assert word_to_matrix(parse_word(["S"], Context.ELLIPTIC)).m == M([[0, 1], [-1, 0]])


def test_word_product():
    # T1 * T2^-1 = [[1,1],[0,1]] [[1,0],[1,1]] = [[2,1],[1,1]]
    w = parse_word(["T1", "T2^-1"], Context.A2CY3)
    assert word_to_matrix(w).m == M([[2, 1], [1, 1]])


def test_adjacent_letters_merge():
    w = TwistWord.from_letters([(1, 2), (1, 3), (2, 1)], Context.A2CY3)
    assert w.letters == ((1, 5), (2, 1))


def test_merge_can_cancel_to_empty():
    w = TwistWord.from_letters([(1, 2), (1, -2)], Context.A2CY3)
    assert w.letters == ()
    with pytest.raises(DomainError):
        word_to_matrix(w)
    rep = trichotomy_report(w)  # identity
    assert rep.classification is Sl2Class.ELLIPTIC_OR_CENTRAL


def test_parse_rejects_bad_tokens():
    with pytest.raises(ParseError):
        parse_word(["T3"], Context.A2CY3)
    with pytest.raises(ParseError):
        parse_word(["T1"], Context.ELLIPTIC)
    with pytest.raises(ParseError):
        parse_word(["T1^0"], Context.A2CY3)


def test_parse_ignores_shift_markers():
    w = parse_word(["T1", "[5]", "T2", "[-2]"], Context.A2CY3)
    assert w.letters == ((1, 1), (2, 1))


def test_sl2_element_validates_determinant():
    with pytest.raises(DomainError):
        Sl2Element(M([[2, 0], [0, 1]]))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, 1], [-1, 0]], Sl2Class.ELLIPTIC_OR_CENTRAL),
        ([[1, 0], [1, 1]], Sl2Class.PARABOLIC_NON_CENTRAL),
        ([[2, 1], [1, 1]], Sl2Class.HYPERBOLIC),
        ([[-1, 0], [0, -1]], Sl2Class.ELLIPTIC_OR_CENTRAL),
        ([[1, 0], [0, 1]], Sl2Class.ELLIPTIC_OR_CENTRAL),
        ([[1, 1], [-1, 0]], Sl2Class.ELLIPTIC_OR_CENTRAL),
    ],
)
def test_classify_examples(rows, expected):
    assert classify_sl2(Sl2Element(M(rows))) is expected


def test_trichotomy_parabolic_generator():
    rep = trichotomy_report(parse_word(["T1"], Context.A2CY3))
    assert rep.classification is Sl2Class.PARABOLIC_NON_CENTRAL
    assert rep.h_cat_float == 0.0
    assert rep.h_pol == 1
    assert not rep.pseudo_anosov


def test_trichotomy_central_power():
    rep = trichotomy_report(parse_word(["T1", "T2"] * 3, Context.A2CY3))
    assert rep.classification is Sl2Class.ELLIPTIC_OR_CENTRAL
    assert rep.h_cat_float == 0.0 and rep.h_pol == 0


def test_trichotomy_hyperbolic_value():
    rep = trichotomy_report(parse_word(["T1", "T2^-1"], Context.A2CY3))
    assert rep.classification is Sl2Class.HYPERBOLIC
    assert rep.h_cat_exact == "log((3+sqrt(5))/2)"
    assert abs(rep.h_cat_float - math.log((3 + math.sqrt(5)) / 2)) < 1e-12
    assert rep.h_pol == 0
    assert rep.pseudo_anosov


def test_trichotomy_elliptic_fourier_transform():
    rep = trichotomy_report(parse_word(["S"], Context.ELLIPTIC))
    assert rep.classification is Sl2Class.ELLIPTIC_OR_CENTRAL
    assert rep.h_pol == 0
    assert not rep.pseudo_anosov  # flag is specific to the quiver context


def test_trichotomy_parabolic_line_bundle_twist():
    rep = trichotomy_report(parse_word(["T"], Context.ELLIPTIC))
    assert rep.classification is Sl2Class.PARABOLIC_NON_CENTRAL
    assert rep.h_pol == 1


def test_crosscheck_examples():
    for tokens, ctx in [
        (["T1"], Context.A2CY3),
        (["T1", "T2^-1"], Context.A2CY3),
        (["S"], Context.ELLIPTIC),
    ]:
        out = crosscheck_with_lattice(parse_word(tokens, ctx))
        assert out["consistent"], (tokens, out)


def test_center_detection_powers():
    for k in range(1, 6):
        w = TwistWord.from_letters([(1, 1), (2, 1)] * (3 * k), Context.A2CY3)
        assert word_to_matrix(w).is_plus_minus_identity


def test_determinant_always_one():
    rng = random.Random(13)
    for ctx in (Context.A2CY3, Context.ELLIPTIC):
        for _ in range(40):
            w = random_word(rng, context=ctx)
            assert word_to_matrix(w).m.det() == 1


def test_conjugation_invariance():
    rng = random.Random(14)
    for _ in range(30):
        w = random_word(rng)
        g = random_word(rng, max_letters=4)
        inv = tuple((gen, -exp) for gen, exp in reversed(g.letters))
        conj = TwistWord.from_letters(g.letters + w.letters + inv, w.context)
        a, b = trichotomy_report(w), trichotomy_report(conj)
        assert (a.classification, a.h_pol, a.trace) == (
            b.classification,
            b.h_pol,
            b.trace,
        )
        assert abs(a.h_cat_float - b.h_cat_float) < 1e-12


def test_powers_preserve_h_pol():
    rng = random.Random(15)
    for _ in range(15):
        w = random_word(rng, max_letters=5)
        base = trichotomy_report(w).h_pol
        for m in range(1, 5):
            wm = TwistWord.from_letters(w.letters * m, w.context)
            assert trichotomy_report(wm).h_pol == base


def test_exhaustive_trace_rule_small_entries():
    span = range(-5, 6)
    seen = 0
    for a in span:
        for b in span:
            for c in span:
                for d in span:
                    if a * d - b * c != 1:
                        continue
                    seen += 1
                    g = Sl2Element(M([[a, b], [c, d]]))
                    cls = classify_sl2(g)
                    t = abs(a + d)
                    if t > 2:
                        assert cls is Sl2Class.HYPERBOLIC
                    elif t < 2:
                        assert cls is Sl2Class.ELLIPTIC_OR_CENTRAL
                    elif g.is_plus_minus_identity:
                        assert cls is Sl2Class.ELLIPTIC_OR_CENTRAL
                    else:
                        assert cls is Sl2Class.PARABOLIC_NON_CENTRAL
    # 308 determinant-1 matrices have all entries in [-5, 5]
    assert seen == 308


def test_matrix_report_context_flag():
    g = Sl2Element(M([[2, 1], [1, 1]]))
    assert matrix_report(g, Context.A2CY3).pseudo_anosov
    assert not matrix_report(g, Context.ELLIPTIC).pseudo_anosov
    assert not matrix_report(g).pseudo_anosov
