from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallpfa import linalg as la
from smallpfa.automaton import WeightedAutomaton, all_values, merge_start, validate
from smallpfa.construction import (
    F1,
    PI0,
    PI1,
    U,
    U_INV,
    V,
    V_INV,
    a0_matrix,
    a_matrix,
    add_sink_state,
    b_matrix,
    backward_automaton,
    backward_pfa,
    blend_with_uniform,
    choose_alpha,
    construction_constants,
    equality_value,
    forward_pfa,
    gadget_words,
    normalization_constant,
    normalize_start,
    uniform,
)
from smallpfa.pcp import PcpInstance, is_solution
from smallpfa.rationals import fractional_value

CLASSIC = PcpInstance("01", [("1", "101"), ("10", "00"), ("011", "11")])
STRUCTURED5 = PcpInstance(
    "01", [("0", "01"), ("10", "01"), ("1", "0"), ("00", "11"), ("10", "0")], start_index=1, end_index=5
)

gadget = st.lists(st.sampled_from(["11", "12"]), max_size=5).map("".join)
nonempty_gadget = st.lists(st.sampled_from(["11", "12"]), min_size=1, max_size=5).map("".join)


def template_a(v, w):
    """The conjugated gadget written out entry by entry."""
    x, y = fractional_value(v), fractional_value(w)
    p, q = F(1, 10 ** len(v)), F(1, 10 ** len(w))
    return la.matrix([
        [1, 0, 0, 0, 0, 0],
        [x, p, 0, 0, 0, 0],
        [x * x + (1 - p * p) / 99, 2 * p * x, p * p, 0, 0, 0],
        [y, 0, 0, q, 0, 0],
        [F(99, 105) * y * y, 0, 0, F(198, 105) * q * y, q * q, 0],
        [x * y, p * y, 0, q * x, 0, p * q],
    ])


def words_upto(n, alphabet):
    for m in range(n + 1):
        yield from product(alphabet, repeat=m)


# -- gadgets -----------------------------------------------------------------------


def test_a0_examples():
    assert a0_matrix("", "") == la.identity(6)
    m = a0_matrix("11", "12")
    assert m[1][0] == F(11, 100) and m[1][1] == F(1, 100)
    assert m[5][0] == F(33, 2500)


@pytest.mark.parametrize("v", ["13", "1", "21"])
def test_a0_rejects_non_gadget_words(v):
    with pytest.raises(ValueError):
        a0_matrix(v, "11")


def test_a_examples():
    assert a_matrix("", "") == la.identity(6)
    assert a_matrix("11", "")[2][0] == F(121, 10000) + (1 - F(1, 10000)) / 99
    m = a_matrix("11", "12")
    assert m[4][0] == F(99, 105) * F(12, 100) ** 2
    assert m[4][3] == F(198, 105) * F(1, 100) * F(12, 100)


@given(gadget, gadget)
def test_a_matches_template(v, w):
    assert a_matrix(v, w) == template_a(v, w)


@given(gadget, gadget)
def test_equality_closed_form(v, w):
    x, y = fractional_value(v), fractional_value(w)
    expected = -((x - y) ** 2) + F(1, 10 ** (2 * len(v))) / 99
    assert la.dot(la.vecmat(PI1, a_matrix(v, w)), F1) == expected == equality_value(v, w)


@given(gadget, gadget)
def test_simple_start_vector_gives_negative_square(v, w):
    x, y = fractional_value(v), fractional_value(w)
    assert la.dot(la.vecmat(PI0, a0_matrix(v, w)), F1) == -((x - y) ** 2)


@given(gadget, gadget, gadget, gadget)
def test_multiplicative_law(v1, w1, v2, w2):
    for make in (a0_matrix, a_matrix, b_matrix):
        assert la.matmul(make(v1, w1), make(v2, w2)) == make(v1 + v2, w1 + w2)


def test_equality_detection_small():
    words = ["".join(b) for n in range(4) for b in product(["11", "12"], repeat=n)]
    for v in words:
        for w in words:
            x = equality_value(v, w)
            assert x != 0 and (x > 0) == (v == w)


def test_constants():
    c = construction_constants()
    assert la.matmul(U, U_INV) == la.identity(6)
    assert la.matmul(V, V_INV) == la.identity(6)
    assert la.inverse(U) == U_INV
    assert sum(PI1) == F(-5, 99)
    assert la.vecmat(PI0, U_INV) == PI1
    assert c["pi2"] == (F(1, 99), F(1, 99), -1 + F(1, 99), F(1, 99), -1 - F(5, 99), 2 + F(1, 99))
    assert sum(c["pi2"]) == 0
    assert c["J"](7) == la.constant(7, F(1, 7))


def test_b_examples():
    assert la.col_sums(b_matrix("11", "12")) == (1,) * 6
    assert la.min_entry(b_matrix("1112", "1211")) > 0


@given(gadget, gadget)
def test_b_column_sums(v, w):
    b = b_matrix(v, w)
    assert la.vecmat((1,) * 6, b) == (1,) * 6


@given(nonempty_gadget, nonempty_gadget)
def test_b_positive_for_nonempty_words(v, w):
    assert la.min_entry(b_matrix(v, w)) > 0


def test_b_with_empty_word_has_zero_entries():
    assert la.min_entry(b_matrix("", "11")) <= 0


# -- pipeline stages -----------------------------------------------------------------


def classic_sink():
    bs = [b_matrix(v, w) for v, w in gadget_words(CLASSIC)]
    return add_sink_state(bs, la.vecmat(PI1, V), la.matvec(V_INV, F1))


def test_add_sink_state_shape():
    cs, start, end = classic_sink()
    for c in cs:
        assert len(c) == 7
        assert c[6] == (0,) * 6 + (1,)
        assert la.row_sums(c) == (1,) * 7
        assert la.col_sums(c) == (1,) * 7
    assert start[6] == 0
    assert end[6] == 0
    assert la.vecmat(start, uniform(7)) == (0,) * 7


def test_sink_seeding_for_nonzero_start():
    b = b_matrix("11", "12")
    start = la.vecmat(la.vecmat(PI1, V), b_matrix("1211", "11"))
    start = tuple(x + 1 for x in start)
    cs, s, e = add_sink_state([b], start, la.matvec(V_INV, F1))
    assert sum(s) == 0
    assert s[6] == -sum(start)
    assert la.vecmat(s, uniform(7)) == (0,) * 7
    # the sink coordinate never feeds back, so values are unchanged
    assert la.dot(la.vecmat(s, cs[0]), e) == la.dot(la.vecmat(start, b), la.matvec(V_INV, F1))


def test_add_sink_state_requires_column_sums():
    with pytest.raises(ValueError):
        add_sink_state([a_matrix("11", "12")], PI1, F1)


def test_blend_examples():
    cs, start, end = classic_sink()
    assert choose_alpha(cs) == F(1, 100)
    ds = blend_with_uniform(cs, F(1, 100))
    j = uniform(7)
    for c, d in zip(cs, ds):
        assert la.min_entry(d) > 0
        assert la.row_sums(d) == (1,) * 7 and la.col_sums(d) == (1,) * 7
        assert la.matmul(j, c) == j == la.matmul(c, j)


def test_blend_identity():
    cs, start, end = classic_sink()
    alpha = F(1, 100)
    ds = blend_with_uniform(cs, alpha)
    syms = ("1", "2", "3")
    before = all_values(WeightedAutomaton(syms, dict(zip(syms, cs)), start, end), 4)
    after = all_values(WeightedAutomaton(syms, dict(zip(syms, ds)), start, end), 4)
    for word, x in before.items():
        assert after[word] == alpha ** len(word) * x


def test_blend_rejects_large_alpha():
    cs, _, _ = classic_sink()
    with pytest.raises(ValueError, match=r"entry \(\d+,\d+\)"):
        blend_with_uniform(cs, 1)
    with pytest.raises(ValueError):
        blend_with_uniform(cs, 0)
    with pytest.raises(ValueError):
        blend_with_uniform([a_matrix("11", "")], F(1, 100))


def test_normalize_start_examples():
    _, start, _ = classic_sink()
    assert normalization_constant(start) == 2
    dist, offset = normalize_start(start, 7)
    assert offset == F(1, 7)
    assert dist == tuple((2 + x) / 14 for x in start)
    assert sum(dist) == 1 and min(dist) >= 0
    assert normalize_start((0,) * 4) == ((F(1, 4),) * 4, F(1, 4))
    with pytest.raises(ValueError):
        normalize_start((1, 0))
    with pytest.raises(ValueError):
        normalize_start((1, -1), 3)


def test_normalization_is_affine_shift():
    cs, start, end = classic_sink()
    ds = blend_with_uniform(cs, F(1, 100))
    syms = ("1", "2", "3")
    dist, offset = normalize_start(start, 7)
    old = all_values(WeightedAutomaton(syms, dict(zip(syms, ds)), start, end), 3)
    new = all_values(WeightedAutomaton(syms, dict(zip(syms, ds)), dist, end), 3)
    for word, x in old.items():
        assert new[word] == offset + x / 14
        assert (new[word] > offset) == (x > 0)


# -- full pipelines -------------------------------------------------------------------


def test_forward_classic():
    pfa = forward_pfa(CLASSIC)
    assert pfa.dim == 7 and pfa.cutpoint == F(1, 7) and pfa.strict
    report = validate(pfa)
    assert report.ok
    assert report.properties["positive"] and report.properties["zero_one_output"]
    assert pfa.value(tuple("1323")) > F(1, 7)
    assert pfa.metadata["alpha"] == "1/100"
    assert pfa.metadata["empty_word_is_spurious"]
    # empty product: 1/7 plus the scaled start term pi1 . f1 = 1/99
    assert pfa.value(()) == F(1, 7) + F(1, 99) / 14


def test_forward_classic_exhaustive():
    pfa = forward_pfa(CLASSIC)
    for word, x in all_values(pfa.automaton, 4).items():
        if word:
            assert x != pfa.cutpoint
            assert (x > pfa.cutpoint) == is_solution(CLASSIC, [int(s) for s in word])


def test_forward_merged_structured():
    pfa = forward_pfa(STRUCTURED5)
    assert pfa.alphabet == ("1", "2", "3", "4")
    assert validate(pfa).ok
    for word, x in all_values(pfa.automaton, 4).items():
        seq = tuple(int(s) for s in reversed(word)) + (5,)
        assert (x > pfa.cutpoint) == is_solution(STRUCTURED5, seq)
    with pytest.raises(ValueError):
        forward_pfa(CLASSIC, reverse_and_merge=True)


def test_forward_alpha_override():
    pfa = forward_pfa(CLASSIC, alpha=F(1, 1000))
    assert pfa.metadata["alpha"] == "1/1000"
    assert pfa.accepts(tuple("1323")) and not pfa.accepts(tuple("13"))


def test_merge_start_value():
    pfa = forward_pfa(STRUCTURED5, reverse_and_merge=False)
    merged = merge_start(pfa.automaton, "5")
    assert merged.value(()) == pfa.automaton.value(("5",))
    assert merged.value(("1", "3")) == pfa.automaton.value(("5", "1", "3"))
    assert len(merged.alphabet) == len(pfa.alphabet) - 1


def test_backward_identity_and_shape():
    aut = backward_automaton(STRUCTURED5)
    pi2, f2 = la.vecmat(PI1, V), la.matvec(V_INV, F1)
    bs = {str(i): b_matrix(v, w) for i, (v, w) in enumerate(gadget_words(STRUCTURED5), 1)}
    for word in words_upto(3, aut.alphabet):
        x = pi2
        for s in reversed(word):
            x = la.vecmat(x, bs[s])
        assert aut.value(word) == F(1, 6) + la.dot(x, f2) / 12
    for m in aut.matrices.values():
        assert la.row_sums(m) == (1,) * 6 and la.min_entry(m) > 0
    assert sum(aut.end) == 1 and all(0 <= x <= 1 for x in aut.end)
    assert aut.start == la.unit(6, 0)


def test_backward_pfa_semantics():
    pfa = backward_pfa(STRUCTURED5)
    report = validate(pfa)
    assert report.ok and report.properties["deterministic_start"]
    assert not report.properties["zero_one_output"]
    for word in words_upto(4, pfa.alphabet):
        seq = (1,) + tuple(int(s) for s in reversed(word))
        assert pfa.accepts(word) == is_solution(STRUCTURED5, seq)


def test_backward_preconditions():
    with pytest.raises(ValueError, match="nonempty"):
        backward_pfa(PcpInstance("01", [("0", ""), ("1", "1")], start_index=1))
    with pytest.raises(ValueError):
        backward_pfa(CLASSIC)
    assert backward_pfa(CLASSIC, merge=False).dim == 6
