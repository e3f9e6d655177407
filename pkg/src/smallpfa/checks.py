"""Named verification suites shared by the CLI and the experiment scripts.

Each suite returns a :class:`CheckResult`; ``passed`` is False as soon as one
exact comparison fails, and ``detail`` carries counts or the first failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg as la
from .automaton import Pfa, WeightedAutomaton, all_values, iter_words, shift_cutpoint
from .binarize import TauCode, reduce_to_two, two_matrix_pfa, weighted_automaton
from .construction import (
    F1,
    PI1,
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
    forward_pfa,
    gadget_words,
    normalization_constant,
    normalize_start,
    symbols,
    uniform,
)
from .pcp import PcpInstance, apply, bounded_solve, is_solution
from .semithue import (
    SemiThueSystem,
    SymbolCode,
    bounded_derives,
    check_code_substring,
    hhh_counterexample,
    reduction_chain,
)

DEFAULT_SEED = 20240607

CLASSIC = PcpInstance("01", [("1", "101"), ("10", "00"), ("011", "11")])
# synthetic words; every solution starts with pair 1 and ends with pair 5
STRUCTURED5 = PcpInstance(
    "01",
    [("0", "01"), ("10", "01"), ("1", "0"), ("00", "11"), ("10", "0")],
    start_index=1,
    end_index=5,
)
STRUCTURED7 = PcpInstance(
    "01",
    [("0", "01"), ("10", "01"), ("1", "0"), ("00", "11"), ("01", "1"), ("11", "1"), ("10", "0")],
    start_index=1,
    end_index=7,
)
TOY_SYSTEM = SemiThueSystem("ab", [("ab", "ba")])


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, **self.detail}


def gadget_word(rng: random.Random, max_digits: int) -> str:
    return "".join(rng.choice(("11", "12")) for _ in range(rng.randint(0, max_digits // 2)))


def gadget_words_upto(max_digits: int):
    for n in range(max_digits // 2 + 1):
        for blocks in product(("11", "12"), repeat=n):
            yield "".join(blocks)


def check_multiplicative(trials: int = 1000, max_digits: int = 10, seed: int = DEFAULT_SEED) -> CheckResult:
    rng = random.Random(seed)
    for t in range(trials):
        v1, w1, v2, w2 = (gadget_word(rng, max_digits) for _ in range(4))
        for name, make in (("A0", a0_matrix), ("A", a_matrix), ("B", b_matrix)):
            if la.matmul(make(v1, w1), make(v2, w2)) != make(v1 + v2, w1 + w2):
                return CheckResult("multiplicative", False, {"trial": t, "matrix": name, "words": [v1, w1, v2, w2]})
    return CheckResult("multiplicative", True, {"trials": trials, "max_digits": max_digits, "seed": seed})


def check_equality_detection(max_digits: int = 8) -> CheckResult:
    words = list(gadget_words_upto(max_digits))
    for v in words:
        for w in words:
            x = la.dot(la.vecmat(PI1, a_matrix(v, w)), F1)
            if x == 0 or (x > 0) != (v == w):
                return CheckResult("equality-detection", False, {"v": v, "w": w, "value": str(x)})
    return CheckResult("equality-detection", True, {"pairs": len(words) ** 2, "max_digits": max_digits})


def check_column_sums(trials: int = 500, max_digits: int = 10, seed: int = DEFAULT_SEED) -> CheckResult:
    rng = random.Random(seed)
    positive_checked = 0
    for t in range(trials):
        v, w = gadget_word(rng, max_digits), gadget_word(rng, max_digits)
        b = b_matrix(v, w)
        if any(s != 1 for s in la.col_sums(b)):
            return CheckResult("column-sums", False, {"trial": t, "v": v, "w": w})
        if v and w:
            positive_checked += 1
            if la.min_entry(b) <= 0:
                return CheckResult("column-sums", False, {"trial": t, "v": v, "w": w, "reason": "not positive"})
    return CheckResult("column-sums", True, {"trials": trials, "positive_checked": positive_checked, "seed": seed})


def toy_sink_automaton(p: PcpInstance = CLASSIC) -> tuple:
    """Sink-extended column-stochastic gadgets of ``p`` with their vectors."""
    bs = [b_matrix(v, w) for v, w in gadget_words(p)]
    return add_sink_state(bs, la.vecmat(PI1, V), la.matvec(V_INV, F1))


def check_blend(max_len: int = 4) -> CheckResult:
    cs, start, end = toy_sink_automaton()
    n = len(start)
    if la.vecmat(start, uniform(n)) != (0,) * n:
        return CheckResult("blend", False, {"reason": "start @ J != 0"})
    alpha = choose_alpha(cs)
    ds = blend_with_uniform(cs, alpha)
    syms = symbols(len(cs))
    before = all_values(WeightedAutomaton(syms, dict(zip(syms, cs)), start, end), max_len)
    after = all_values(WeightedAutomaton(syms, dict(zip(syms, ds)), start, end), max_len)
    for word, x in before.items():
        if after[word] != alpha ** len(word) * x:
            return CheckResult("blend", False, {"word": list(word), "reason": "blend identity"})
    dist, offset = normalize_start(start, n)
    c = normalization_constant(start)
    normed = all_values(WeightedAutomaton(syms, dict(zip(syms, ds)), dist, end), max_len)
    for word, x in after.items():
        if normed[word] != offset + x / (c * n):
            return CheckResult("blend", False, {"word": list(word), "reason": "normalization shift"})
    return CheckResult("blend", True, {"words": len(before), "alpha": str(alpha), "offset": str(offset)})


def check_proposition(max_len: int = 3, alphabet: str = "xyz") -> CheckResult:
    code = SymbolCode(alphabet)
    letters = code.symbols
    splits = 0
    for n in range(max_len + 1):
        for u in product(letters, repeat=n):
            u = "".join(u)
            enc = code.encode(u)
            for alpha in letters:
                cw = code.encode(alpha)
                pos = enc.find(cw)
                while pos >= 0:
                    try:
                        check_code_substring(code, u, enc[:pos], alpha, enc[pos + len(cw):])
                    except ValueError as exc:
                        return CheckResult("proposition", False, {"u": u, "alpha": alpha, "offset": pos, "error": str(exc)})
                    splits += 1
                    pos = enc.find(cw, pos + 1)
    return CheckResult("proposition", True, {"splits": splits, "max_len": max_len})


def check_hhh_counterexample() -> CheckResult:
    inst, witness = hhh_counterexample()
    top, bottom = apply(inst, witness)
    ok = is_solution(inst, witness) and witness[0] != 1 and inst.pair(2).bottom == ""
    return CheckResult("hhh-counterexample", ok, {"witness": list(witness), "word": top, "equal": top == bottom})


def check_forward(max_len: int = 5) -> CheckResult:
    pfa = forward_pfa(CLASSIC, reverse_and_merge=False)
    checked = 0
    for word, x in all_values(pfa.automaton, max_len).items():
        if not word:
            continue
        checked += 1
        expected = is_solution(CLASSIC, [int(s) for s in word])
        if x == pfa.cutpoint or (x > pfa.cutpoint) != expected:
            return CheckResult("forward", False, {"word": list(word), "value": str(x)})
    return CheckResult("forward", True, {"words": checked, "states": pfa.dim, "cutpoint": str(pfa.cutpoint)})


def check_binary_reduction(max_len: int = 4, max_binary: int = 8) -> CheckResult:
    aut = weighted_automaton(CLASSIC)
    binary, code = reduce_to_two(aut)
    index_values = all_values(aut, max(max_len, max_binary))
    for word, x in all_values(aut, max_len).items():
        if binary.value(code.encode([int(s) for s in word])) != x:
            return CheckResult("binary-reduction", False, {"word": list(word), "reason": "tau equivalence"})
    for word, x in all_values(binary, max_binary).items():
        prefix, _ = code.decode_prefix("".join(word))
        if x != index_values[tuple(str(i) for i in prefix)]:
            return CheckResult("binary-reduction", False, {"word": "".join(word), "reason": "partial codeword"})
    return CheckResult("binary-reduction", True, {"states": binary.dim})


def two_matrix_expected(p: PcpInstance, pfa: Pfa, word) -> bool:
    """Whether binary ``word`` should be accepted, by decoding back to pair indices."""
    syms = [int(s) for s in pfa.metadata["tau_code"]]
    prefix, _ = TauCode(len(syms)).decode_prefix("".join(word))
    seq = [syms[i - 1] for i in prefix]
    if pfa.metadata["reversed_words"]:
        return is_solution(p, tuple(reversed(seq)) + (p.end_index,))
    return not seq or is_solution(p, seq)


def check_two_matrix(max_len: int = 8) -> CheckResult:
    detail = {}
    for name, p in (("classic", CLASSIC), ("structured5", STRUCTURED5)):
        pfa = two_matrix_pfa(p)
        for word in iter_words("ab", max_len):
            if pfa.accepts(word) != two_matrix_expected(p, pfa, word):
                return CheckResult("two-matrix", False, {"instance": name, "word": "".join(word)})
        detail[name] = pfa.dim
    return CheckResult("two-matrix", detail == {"classic": 13, "structured5": 18}, {"states": detail})


def check_backward(max_len: int = 4) -> CheckResult:
    p = STRUCTURED5
    aut = backward_automaton(p)
    forward = WeightedAutomaton(aut.alphabet, {s: la.transpose(m) for s, m in aut.matrices.items()}, la.vecmat(PI1, V), la.matvec(V_INV, F1))
    fwd = all_values(forward, max_len)
    for word, x in all_values(aut, max_len).items():
        if x != Fraction(1, 6) + fwd[word[::-1]] / 12:
            return CheckResult("backward", False, {"word": list(word), "reason": "backward identity"})
    pfa = backward_pfa(p)
    base = {w for w in iter_words(pfa.alphabet, max_len) if pfa.accepts(w)}
    for new in (Fraction(1, 12), Fraction(1, 2)):
        shifted = shift_cutpoint(pfa, new)
        if {w for w in iter_words(pfa.alphabet, max_len) if shifted.accepts(w)} != base:
            return CheckResult("backward", False, {"reason": f"cutpoint shift to {new}"})
    return CheckResult("backward", True, {"accepted": sorted("".join(w) for w in base)})


def check_semithue_chain(max_steps: int = 40, max_overhang: int = 200) -> CheckResult:
    detail = {}
    for source, target, reachable in (("ab", "ba", True), ("ba", "ab", False)):
        derived = bool(bounded_derives(TOY_SYSTEM, source, target, depth=5))
        found = {k: bounded_solve(inst, max_steps, max_overhang) for k, inst in reduction_chain(TOY_SYSTEM, source, target).items()}
        statuses = {k: r.status for k, r in found.items()}
        detail[f"{source}->{target}"] = {"derives": derived, **statuses}
        if derived != reachable:
            return CheckResult("semithue-chain", False, detail)
        want = "solved" if reachable else "closed"
        if any(s != want for s in statuses.values()):
            return CheckResult("semithue-chain", False, detail)
    return CheckResult("semithue-chain", True, detail)


SUITES = {
    "multiplicative": check_multiplicative,
    "equality-detection": check_equality_detection,
    "column-sums": check_column_sums,
    "blend": check_blend,
    "proposition": check_proposition,
    "hhh-counterexample": check_hhh_counterexample,
    "forward": check_forward,
    "binary-reduction": check_binary_reduction,
    "two-matrix": check_two_matrix,
    "backward": check_backward,
    "semithue-chain": check_semithue_chain,
}
