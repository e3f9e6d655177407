"""Reduction of a k-symbol automaton with an absorbing first state to two symbols.

Symbol ``i`` of ``k`` is coded as ``a^(i-1) b`` for ``i < k`` and ``a^(k-1)``
for the last symbol. The binary automaton keeps the absorbing state once and
``k - 1`` copies of the remaining ``d - 1`` states, one per count of pending
``a`` letters, so it has ``(k-1)(d-1) + 1`` states. A trailing partial codeword
``a^i`` leaves the value unchanged, because the output vector repeats the
original outputs in every copy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .automaton import Pfa, WeightedAutomaton, merge_start
from .construction import (
    F1,
    PI1,
    _stage,
    a_matrix,
    add_sink_state,
    blend_with_uniform,
    choose_alpha,
    gadget_words,
    normalization_constant,
    normalize_start,
    symbols,
)
from .pcp import PcpInstance, reverse
from .rationals import format_rational


@dataclass(frozen=True)
class TauCode:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("a binary code needs at least two symbols")

    @property
    def codewords(self) -> tuple:
        return tuple("a" * i + "b" for i in range(self.k - 1)) + ("a" * (self.k - 1),)

    def codeword(self, i: int) -> str:
        if not 1 <= i <= self.k:
            raise IndexError(f"index {i} out of range 1..{self.k}")
        return self.codewords[i - 1]

    def encode(self, indices) -> str:
        return "".join(self.codeword(i) for i in indices)

    def decode_prefix(self, word: str) -> tuple[tuple, str]:
        """Decode the longest decodable prefix; return it and the leftover ``a^i``."""
        out = []
        pending = 0
        for c in word:
            if c == "b":
                out.append(pending + 1)
                pending = 0
            elif c == "a":
                pending += 1
                if pending == self.k - 1:
                    out.append(self.k)
                    pending = 0
            else:
                raise ValueError(f"letter {c!r} not in {{a, b}}")
        return tuple(out), "a" * pending

    def decode(self, word: str) -> tuple:
        indices, rest = self.decode_prefix(word)
        if rest:
            raise ValueError(f"{word!r} ends inside a codeword")
        return indices


def tau_encode(code: TauCode, indices) -> str:
    return code.encode(indices)


def is_absorbing_first(m) -> bool:
    return m[0] == la.unit(len(m), 0)


def reduce_to_two(automaton: WeightedAutomaton) -> tuple[WeightedAutomaton, TauCode]:
    """Two-symbol automaton over ``("a", "b")`` simulating ``automaton``.

    The i-th symbol of ``automaton.alphabet`` gets the i-th codeword. Every
    matrix must have first row ``(1, 0, ..., 0)``. For ``k == 2`` the result
    is just a renaming (first symbol -> ``b``, second -> ``a``).
    """
    syms = automaton.alphabet
    k, d = len(syms), automaton.dim
    code = TauCode(k)
    mats = [automaton.matrix(s) for s in syms]
    for s, m in zip(syms, mats):
        if not is_absorbing_first(m):
            raise ValueError(f"matrix {s!r}: first row must be (1, 0, ..., 0)")
    D = d - 1
    n = (k - 1) * D + 1

    def block(b):
        # first index of copy b of the non-absorbing states
        return 1 + b * D

    def place(rows, b, m):
        # copy b's rows behave like m: c_i into state 0, C_hat into copy 0
        for r in range(D):
            row = rows[block(b) + r]
            row[0] = m[1 + r][0]
            for c in range(D):
                row[1 + c] = m[1 + r][1 + c]

    ma = [[la.ZERO] * n for _ in range(n)]
    mb = [[la.ZERO] * n for _ in range(n)]
    ma[0][0] = mb[0][0] = la.ONE
    for b in range(k - 1):
        place(mb, b, mats[b])
        if b < k - 2:
            for r in range(D):
                ma[block(b) + r][block(b + 1) + r] = la.ONE
        else:
            place(ma, b, mats[k - 1])
    start = automaton.start + (la.ZERO,) * (n - d)
    end = automaton.end[:1] + automaton.end[1:] * (k - 1)
    out = WeightedAutomaton(("a", "b"), {"a": ma, "b": mb}, start, end)
    return out, code


def column_fix(matrices, start, end):
    """Add a state whose row makes every column sum 1: ``[[M, 0], [s, 1]]``.

    The new state starts with 0 mass and nothing flows into it, so values are
    unchanged; its end entry is 0.
    """
    out = []
    for m in matrices:
        n = len(m)
        fix = tuple(1 - t for t in la.col_sums(m))
        rows = [row + (la.ZERO,) for row in m]
        rows.append(fix + (la.ONE,))
        out.append(tuple(rows))
    return out, tuple(start) + (la.ZERO,), tuple(end) + (la.ZERO,)


def weighted_automaton(p: PcpInstance) -> WeightedAutomaton:
    """Gadgets ``A(v_i, w_i)`` with start ``pi1`` and end ``e1`` (value > 0 iff solution)."""
    syms = symbols(p.k)
    mats = {s: a_matrix(v, w) for s, (v, w) in zip(syms, gadget_words(p))}
    return WeightedAutomaton(syms, mats, PI1, F1)


def two_matrix_pfa(p: PcpInstance, merge: bool | None = None, alpha=None) -> Pfa:
    """Two-symbol PFA with cutpoint ``1/n``.

    With ``merge`` (default when ``p`` declares a forced end pair) the words
    are reversed and the forced pair's gadget is folded into the start vector
    before binarizing, so ``k`` pairs give ``5(k - 2) + 3`` states. Without
    merging, ``5(k - 1) + 3`` states and the empty index word, together with
    binary words that decode to it, is accepted spuriously.

    A binary word ``u`` is accepted iff the longest decodable prefix of ``u``
    (symbols in alphabet order of the merged automaton, see metadata) is, after
    undoing reversal and merging, a PCP solution.
    """
    if merge is None:
        merge = p.end_index is not None
    if merge and p.end_index is None:
        raise ValueError("merging needs an instance with a forced end pair")
    inst = reverse(p) if merge else p
    report = []
    aut = weighted_automaton(inst)
    _stage(report, "weighted gadgets", list(aut.matrices.values()), aut.start, aut.end)
    if merge:
        aut = merge_start(aut, str(inst.start_index))
        _stage(report, "merge start pair", list(aut.matrices.values()), aut.start, aut.end)
    binary, code = reduce_to_two(aut)
    mats = [binary.matrices["a"], binary.matrices["b"]]
    _stage(report, "binary reduction", mats, binary.start, binary.end)
    mats, start, end = column_fix(mats, binary.start, binary.end)
    _stage(report, "column fix", mats, start, end)
    mats, start, end = add_sink_state(mats, start, end)
    _stage(report, "sink state", mats, start, end)
    alpha = choose_alpha(mats) if alpha is None else Fraction(alpha)
    mats = blend_with_uniform(mats, alpha)
    _stage(report, "uniform blend", mats, start, end, alpha=format_rational(alpha))
    n = len(start)
    start_dist, offset = normalize_start(start, n)
    _stage(report, "start normalization", mats, start_dist, end, offset=format_rational(offset))
    final = WeightedAutomaton(("a", "b"), {"a": mats[0], "b": mats[1]}, start_dist, end)
    meta = {
        "variant": "two-matrix",
        "alpha": format_rational(alpha),
        "normalization_offset": format_rational(offset),
        "normalization_constant": normalization_constant(start),
        "merged_pair": inst.start_index if merge else None,
        "reversed_words": merge,
        "tau_code": dict(zip(aut.alphabet, code.codewords)),
        "empty_word_is_spurious": not merge,
        "stages": report,
    }
    return Pfa(final, offset * sum(end), strict=True, stochastic_kind="doubly", metadata=meta)
