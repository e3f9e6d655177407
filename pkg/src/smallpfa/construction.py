"""Matrix gadgets for word pairs and the pipelines that turn them into PFAs.

For digit words ``v, w`` over the blocks ``11``/``12`` the 6x6 matrix
``A0(v, w)`` stores ``0.v``, ``0.w``, their squares and product together with
the matching powers of ``1/10``; these matrices multiply like the word pairs
concatenate. Two similarity transforms and a start vector turn a product into
``-(0.v - 0.w)**2 + 10**(-2|v|)/99``, which is positive exactly when ``v == w``.

The forward pipeline then adds a sink state (row sums 1), blends with the
uniform matrix (positivity), and shifts the start vector to a distribution,
giving a 7-state PFA with cutpoint 1/7. The backward pipeline transposes the
column-stochastic gadgets to get a 6-state PFA with fractional outputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg as la
from .automaton import Pfa, WeightedAutomaton, merge_end, merge_start
from .pcp import PcpInstance, reverse
from .rationals import check_gadget_word, format_rational, fractional_value, pow10_neg, recode_binary

F = Fraction

U = la.matrix([
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [F(1, 99), 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, F(99, 105), 0],
    [0, 0, 0, 0, 0, 1],
])
U_INV = la.matrix([
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [F(-1, 99), 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, F(105, 99), 0],
    [0, 0, 0, 0, 0, 1],
])
V = la.matrix([[1] * 6] + [[int(i == j) for j in range(6)] for i in range(1, 6)])
V_INV = la.matrix([[1] + [-1] * 5] + [[int(i == j) for j in range(6)] for i in range(1, 6)])

PI0 = la.vector([0, 0, -1, 0, -1, 2])
PI1 = la.vector([F(1, 99), 0, -1, 0, F(-105, 99), 2])
F1 = la.unit(6, 0)


def uniform(n: int) -> la.Matrix:
    return la.constant(n, F(1, n))


def construction_constants() -> dict:
    return {
        "U": U,
        "U_inv": U_INV,
        "V": V,
        "V_inv": V_INV,
        "J": uniform,
        "pi0": PI0,
        "pi1": PI1,
        "pi2": la.vecmat(PI1, V),
        "f1": F1,
    }


def a0_matrix(v: str, w: str) -> la.Matrix:
    check_gadget_word(v)
    check_gadget_word(w)
    x, y = fractional_value(v), fractional_value(w)
    p, q = pow10_neg(len(v)), pow10_neg(len(w))
    return la.matrix([
        [1, 0, 0, 0, 0, 0],
        [x, p, 0, 0, 0, 0],
        [x * x, 2 * p * x, p * p, 0, 0, 0],
        [y, 0, 0, q, 0, 0],
        [y * y, 0, 0, 2 * q * y, q * q, 0],
        [x * y, p * y, 0, q * x, 0, p * q],
    ])


def a_matrix(v: str, w: str) -> la.Matrix:
    # conjugating this way round yields the tiny positive 1/99 term for PI1;
    # note PI1 = PI0 @ U_INV
    return la.matmul(la.matmul(U, a0_matrix(v, w)), U_INV)


def b_matrix(v: str, w: str) -> la.Matrix:
    """Column-stochastic gadget; strictly positive when both words are nonempty."""
    return la.matmul(la.matmul(V_INV, a_matrix(v, w)), V)


def equality_value(v: str, w: str) -> Fraction:
    """Closed form of ``pi1 @ A(v, w) @ f1``."""
    d = fractional_value(v) - fractional_value(w)
    return -d * d + pow10_neg(2 * len(v)) / 99


def add_sink_state(matrices, start, end):
    """Append a state whose column restores row sums 1 and which never feeds back.

    Inputs must have column sums exactly 1, so the result is doubly summing
    (all row and column sums 1). The start vector's new coordinate absorbs the
    negative of its sum, making the padded start sum to 0; the end vector is
    padded with 0, so word values do not change.
    """
    out = []
    for m in matrices:
        if any(t != 1 for t in la.col_sums(m)):
            raise ValueError("add_sink_state needs column sums 1")
        n = len(m)
        rows = [row + (1 - sum(row),) for row in m]
        rows.append((la.ZERO,) * n + (la.ONE,))
        out.append(tuple(rows))
    start = tuple(start) + (-sum(start),)
    end = tuple(end) + (la.ZERO,)
    return out, start, end


def choose_alpha(matrices, min_exponent: int = 2) -> Fraction:
    """Largest ``10**-p`` (``p >= min_exponent``) that keeps every blended entry positive."""
    n = len(matrices[0])
    low = min(la.min_entry(m) for m in matrices)
    p = min_exponent
    while True:
        alpha = pow10_neg(p)
        if (1 - alpha) / n + alpha * low > 0:
            return alpha
        p += 1


def blend_with_uniform(matrices, alpha) -> list:
    """``(1 - alpha) J + alpha C`` for each C; every entry must come out positive.

    With row and column sums 1, ``J C = C J = J``; for a start vector summing
    to 0 every product term containing ``J`` vanishes, so a word of length m
    gets exactly ``alpha**m`` times its old value.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n = len(matrices[0])
    base = (1 - alpha) / n
    out = []
    for idx, m in enumerate(matrices):
        if any(t != 1 for t in la.row_sums(m) + la.col_sums(m)):
            raise ValueError(f"matrix {idx}: row/column sums must be 1 before blending")
        d = tuple(tuple(base + alpha * x for x in row) for row in m)
        for i, row in enumerate(d):
            for j, x in enumerate(row):
                if x <= 0:
                    raise ValueError(
                        f"alpha={alpha} too large: matrix {idx} entry ({i + 1},{j + 1}) becomes {x}"
                    )
        out.append(d)
    return out


def normalization_constant(start) -> int:
    return max(1, math.ceil(-min(start)))


def normalize_start(start, n: int | None = None):
    """Shift a zero-sum start vector to a distribution.

    Returns ``((c + start) / (c n), 1/n)`` with ``c = max(1, ceil(-min))``.
    Under column-stochastic matrices and an end vector with entry sum 1 a word
    with old value ``x`` gets the new value ``1/n + x/(c n)``: the cutpoint
    moves from 0 to the returned offset and signs are kept.
    """
    start = la.vector(start)
    n = len(start) if n is None else n
    if len(start) != n:
        raise ValueError("dimension mismatch")
    if sum(start) != 0:
        raise ValueError(f"start vector must sum to 0, sums to {sum(start)}")
    c = normalization_constant(start)
    return tuple((c + x) / (c * n) for x in start), F(1, n)


def gadget_words(instance: PcpInstance) -> list:
    """Digit-word pairs for each word pair, over the blocks 11/12."""
    return [(recode_binary(p.top, instance.alphabet), recode_binary(p.bottom, instance.alphabet)) for p in instance.pairs]


def symbols(k: int) -> tuple:
    return tuple(str(i) for i in range(1, k + 1))


def _stage(report, name, mats, start, end, **extra):
    entry = {
        "stage": name,
        "states": len(start),
        "symbols": len(mats),
        "start_checksum": la.checksum(start),
        "end_checksum": la.checksum(end),
        "matrix_checksums": [la.checksum(m) for m in mats],
    }
    entry.update(extra)
    report.append(entry)


def forward_pfa(p: PcpInstance, reverse_and_merge: bool | None = None, alpha=None) -> Pfa:
    """7-state PFA, cutpoint 1/7, accepting exactly the encoded PCP solutions.

    Without merging, symbol ``i`` stands for pair ``i`` and the empty word is
    accepted as well (the empty product). With ``reverse_and_merge`` the words
    are reversed, the forced end pair becomes the first factor and is folded
    into the start distribution; then word ``u`` is accepted iff
    ``reversed(u) + (end_index,)`` solves ``p``, and the empty word means the
    end pair alone.
    """
    if reverse_and_merge is None:
        reverse_and_merge = p.end_index is not None
    if reverse_and_merge and p.end_index is None:
        raise ValueError("merging needs an instance with a forced end pair")
    inst = reverse(p) if reverse_and_merge else p
    report = []
    words = gadget_words(inst)
    bs = [b_matrix(v, w) for v, w in words]
    pi2 = la.vecmat(PI1, V)
    f2 = la.matvec(V_INV, F1)
    _stage(report, "column-stochastic gadgets", bs, pi2, f2)
    cs, pi3, f3 = add_sink_state(bs, pi2, f2)
    _stage(report, "sink state", cs, pi3, f3)
    alpha = choose_alpha(cs) if alpha is None else Fraction(alpha)
    ds = blend_with_uniform(cs, alpha)
    _stage(report, "uniform blend", ds, pi3, f3, alpha=format_rational(alpha))
    pi4, offset = normalize_start(pi3, len(pi3))
    _stage(report, "start normalization", ds, pi4, f3, offset=format_rational(offset))
    aut = WeightedAutomaton(symbols(inst.k), dict(zip(symbols(inst.k), ds)), pi4, f3)
    if reverse_and_merge:
        aut = merge_start(aut, str(inst.start_index))
        _stage(report, "merge start pair", list(aut.matrices.values()), aut.start, aut.end, merged=str(inst.start_index))
    meta = {
        "variant": "forward7",
        "alpha": format_rational(alpha),
        "normalization_offset": format_rational(offset),
        "normalization_constant": normalization_constant(pi3),
        "merged_pair": inst.start_index if reverse_and_merge else None,
        "reversed_words": reverse_and_merge,
        "empty_word_is_spurious": not reverse_and_merge,
        "stages": report,
    }
    return Pfa(aut, offset * sum(f3), strict=True, stochastic_kind="doubly", metadata=meta)


def backward_automaton(p: PcpInstance) -> WeightedAutomaton:
    """Transposed gadgets with start ``e1`` and end ``((2, ..., 2) + pi2) / 12``.

    Its value on ``i_m ... i_1`` is ``1/6 + pi2 B_{i_1} ... B_{i_m} f2 / 12``.
    """
    if p.has_empty_word():
        raise ValueError("backward construction needs nonempty words in every pair (positivity of the gadgets)")
    bs = [b_matrix(v, w) for v, w in gadget_words(p)]
    for i, b in enumerate(bs, 1):
        if la.min_entry(b) <= 0:
            raise AssertionError(f"gadget {i} is not positive")
    pi2 = la.vecmat(PI1, V)
    end, _ = normalize_start(pi2, 6)
    syms = symbols(p.k)
    return WeightedAutomaton(syms, {s: la.transpose(b) for s, b in zip(syms, bs)}, la.matvec(V_INV, F1), end)


def backward_pfa(p: PcpInstance, merge: bool = True) -> Pfa:
    """6-state row-stochastic PFA with a deterministic start state, cutpoint 1/6.

    With ``merge``, the forced start pair's transposed matrix is folded into
    the output vector; word ``u`` is then accepted iff
    ``(start_index,) + reversed(u)`` solves ``p``.
    """
    if merge and p.start_index is None:
        raise ValueError("backward construction needs an instance with a forced start pair")
    aut = backward_automaton(p)
    report = []
    _stage(report, "transposed gadgets", list(aut.matrices.values()), aut.start, aut.end)
    if merge:
        aut = merge_end(aut, str(p.start_index))
        _stage(report, "merge start pair into output", list(aut.matrices.values()), aut.start, aut.end)
    meta = {
        "variant": "backward6",
        "merged_pair": p.start_index if merge else None,
        "reversed_words": True,
        "stages": report,
    }
    return Pfa(aut, F(1, 6), strict=True, stochastic_kind="row", metadata=meta)
