"""Weighted automata, PFAs, exact evaluation and bounded emptiness search.

The value of a word ``s_1 ... s_m`` is ``start @ M[s_1] @ ... @ M[s_m] @ end``
with the start vector as a row on the left. Symbols are strings; a word is any
sequence of symbols (a plain ``str`` works when all symbols are one character).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import linalg as la
from .rationals import format_rational, parse_rational

FORMAT_VERSION = 1
STOCHASTIC_KINDS = ("row", "column", "doubly", "none")


@dataclass(frozen=True)
class WeightedAutomaton:
    alphabet: tuple
    matrices: dict  # symbol -> Matrix
    start: tuple
    end: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        missing = [s for s in self.alphabet if s not in self.matrices]
        if missing:
            raise ValueError(f"no matrix for symbols {missing}")
        object.__setattr__(self, "matrices", {s: la.matrix(self.matrices[s]) for s in self.alphabet})
        object.__setattr__(self, "start", la.vector(self.start))
        object.__setattr__(self, "end", la.vector(self.end))
        n = len(self.start)
        if len(self.end) != n or any(len(m) != n for m in self.matrices.values()):
            raise ValueError("matrix and vector dimensions disagree")

    @property
    def dim(self) -> int:
        return len(self.start)

    def matrix(self, symbol) -> la.Matrix:
        try:
            return self.matrices[symbol]
        except KeyError:
            raise KeyError(f"symbol {symbol!r} not in alphabet {self.alphabet}") from None

    def run(self, word, start=None) -> la.Vector:
        x = self.start if start is None else start
        for s in word:
            x = la.vecmat(x, self.matrix(s))
        return x

    def value(self, word) -> Fraction:
        return la.dot(self.run(word), self.end)

    def value_right_to_left(self, word) -> Fraction:
        f = self.end
        for s in reversed(list(word)):
            f = la.matvec(self.matrix(s), f)
        return la.dot(self.start, f)

    def map(self, fn) -> "WeightedAutomaton":
        return WeightedAutomaton(self.alphabet, {s: fn(m) for s, m in self.matrices.items()}, self.start, self.end)


def merge_start(automaton: WeightedAutomaton, symbol) -> WeightedAutomaton:
    """Fold ``symbol``'s matrix into the start vector and drop the symbol.

    The new automaton's value on ``s`` equals the old value on ``symbol + s``.
    """
    m = automaton.matrix(symbol)
    rest = tuple(s for s in automaton.alphabet if s != symbol)
    return WeightedAutomaton(rest, {s: automaton.matrices[s] for s in rest}, la.vecmat(automaton.start, m), automaton.end)


def merge_end(automaton: WeightedAutomaton, symbol) -> WeightedAutomaton:
    """Fold ``symbol``'s matrix into the end vector; value on ``s`` = old value on ``s + symbol``."""
    m = automaton.matrix(symbol)
    rest = tuple(s for s in automaton.alphabet if s != symbol)
    return WeightedAutomaton(rest, {s: automaton.matrices[s] for s in rest}, automaton.start, la.matvec(m, automaton.end))


@dataclass(frozen=True)
class Pfa:
    automaton: WeightedAutomaton
    cutpoint: Fraction
    strict: bool = True
    stochastic_kind: str = "row"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cutpoint", Fraction(self.cutpoint))
        if self.stochastic_kind not in STOCHASTIC_KINDS:
            raise ValueError(f"stochastic_kind must be one of {STOCHASTIC_KINDS}")

    @property
    def dim(self) -> int:
        return self.automaton.dim

    @property
    def alphabet(self) -> tuple:
        return self.automaton.alphabet

    def value(self, word) -> Fraction:
        return self.automaton.value(word)

    def accepts(self, word) -> bool:
        return self.compare(self.value(word))

    def compare(self, v: Fraction) -> bool:
        return v > self.cutpoint if self.strict else v >= self.cutpoint


def value(pfa, word) -> Fraction:
    return pfa.value(word)


def accepts(pfa: Pfa, word) -> bool:
    return pfa.accepts(word)


@dataclass
class EmptinessResult:
    """``word`` is the first accepted word found, or None.

    ``bounded`` is always True: absence of a word only covers the searched
    lengths and never proves the language empty.
    """

    word: Optional[tuple]
    max_len: int
    checked: int
    bounded: bool = True

    def __bool__(self):
        return self.word is not None


def iter_words(alphabet, max_len: int, include_empty: bool = True):
    """All words up to ``max_len`` in shortlex order (alphabet order breaks ties)."""
    level = [()]
    if include_empty:
        yield ()
    for _ in range(max_len):
        level = [w + (s,) for w in level for s in alphabet]
        yield from level


def bounded_emptiness(pfa: Pfa, max_len: int, exclude_empty: bool = False) -> EmptinessResult:
    """Shortest accepted word of length ``<= max_len``, shortlex tie-break."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    a = pfa.automaton
    checked = 0
    if not exclude_empty:
        checked += 1
        if pfa.compare(la.dot(a.start, a.end)):
            return EmptinessResult((), max_len, checked)
    # level-by-level so every prefix vector is computed once
    level = [((), a.start)]
    for _ in range(max_len):
        nxt = []
        for word, x in level:
            for s in a.alphabet:
                y = la.vecmat(x, a.matrices[s])
                checked += 1
                if pfa.compare(la.dot(y, a.end)):
                    return EmptinessResult(word + (s,), max_len, checked)
                nxt.append((word + (s,), y))
        level = nxt
    return EmptinessResult(None, max_len, checked)


def accepted_words(pfa: Pfa, max_len: int, include_empty: bool = True):
    """Every accepted word up to ``max_len`` with its value, shortlex order."""
    a = pfa.automaton
    out = []
    if include_empty and pfa.compare(la.dot(a.start, a.end)):
        out.append(((), la.dot(a.start, a.end)))
    level = [((), a.start)]
    for _ in range(max_len):
        nxt = []
        for word, x in level:
            for s in a.alphabet:
                y = la.vecmat(x, a.matrices[s])
                v = la.dot(y, a.end)
                if pfa.compare(v):
                    out.append((word + (s,), v))
                nxt.append((word + (s,), y))
        level = nxt
    return out


def all_values(automaton: WeightedAutomaton, max_len: int) -> dict:
    """``{word: value}`` for every word up to ``max_len`` (prefix vectors shared)."""
    out = {(): la.dot(automaton.start, automaton.end)}
    level = [((), automaton.start)]
    for _ in range(max_len):
        nxt = []
        for word, x in level:
            for s in automaton.alphabet:
                y = la.vecmat(x, automaton.matrices[s])
                out[word + (s,)] = la.dot(y, automaton.end)
                nxt.append((word + (s,), y))
        level = nxt
    return out


def shift_cutpoint(pfa: Pfa, new_cutpoint) -> Pfa:
    """Move the cutpoint by an affine change of the output vector.

    Lowering scales outputs by ``new/old``. Raising maps ``f`` to
    ``1 - c + c f`` with ``c = (1 - new)/(1 - old)``, which relies on the
    products applied to the all-ones column staying all-ones (row-stochastic
    matrices) and on the start vector summing to 1.
    """
    new = Fraction(new_cutpoint)
    old = pfa.cutpoint
    if not 0 < new < 1:
        raise ValueError(f"cutpoint must lie strictly between 0 and 1, got {new}")
    if not 0 < old < 1:
        raise ValueError(f"current cutpoint {old} is outside (0, 1)")
    a = pfa.automaton
    if new == old:
        return pfa
    if new < old:
        c = new / old
        end = tuple(c * x for x in a.end)
    else:
        if pfa.stochastic_kind not in ("row", "doubly") or sum(a.start) != 1:
            raise ValueError("raising the cutpoint needs row-stochastic matrices and a start distribution")
        c = (1 - new) / (1 - old)
        end = tuple(1 - c + c * x for x in a.end)
    meta = dict(pfa.metadata, cutpoint_shift={"from": format_rational(old), "to": format_rational(new), "factor": format_rational(c)})
    return replace(pfa, automaton=WeightedAutomaton(a.alphabet, a.matrices, a.start, end), cutpoint=new, metadata=meta)


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list
    properties: dict

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(pfa: Pfa) -> ValidationReport:
    """Check every PFA invariant exactly; violations name the offending row/column."""
    a = pfa.automaton
    bad = []
    kind = pfa.stochastic_kind
    positive = True
    for s in a.alphabet:
        m = a.matrices[s]
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x <= 0:
                    positive = False
                if x < 0 and kind != "none":
                    bad.append(f"matrix {s!r}: entry ({i + 1},{j + 1}) = {x} is negative")
        if kind in ("row", "doubly"):
            for i, t in enumerate(la.row_sums(m)):
                if t != 1:
                    bad.append(f"matrix {s!r}: row {i + 1} sums to 1 + ({t - 1})")
        if kind in ("column", "doubly"):
            for j, t in enumerate(la.col_sums(m)):
                if t != 1:
                    bad.append(f"matrix {s!r}: column {j + 1} sums to 1 + ({t - 1})")
    if any(x < 0 for x in a.start):
        bad.append("start vector has negative entries")
    if sum(a.start) != 1:
        bad.append(f"start vector sums to {sum(a.start)}")
    if any(not 0 <= x <= 1 for x in a.end):
        bad.append("output vector has entries outside [0, 1]")
    props = {
        "states": a.dim,
        "symbols": len(a.alphabet),
        "positive": positive,
        "row_stochastic": all(all(t == 1 for t in la.row_sums(a.matrices[s])) for s in a.alphabet),
        "column_stochastic": all(all(t == 1 for t in la.col_sums(a.matrices[s])) for s in a.alphabet),
        "deterministic_start": sorted(a.start) == [0] * (a.dim - 1) + [1],
        "zero_one_output": all(x in (0, 1) for x in a.end),
    }
    return ValidationReport(bad, props)


# -- serialization ---------------------------------------------------------------


def _rows(m):
    return [[format_rational(x) for x in row] for row in m]


def to_json(pfa: Pfa) -> dict:
    a = pfa.automaton
    out = {
        "version": FORMAT_VERSION,
        "orientation": "row-vector-left",
        "states": a.dim,
        "alphabet": list(a.alphabet),
        "matrices": {s: _rows(a.matrices[s]) for s in a.alphabet},
        "start": [format_rational(x) for x in a.start],
        "output": [format_rational(x) for x in a.end],
        "cutpoint": format_rational(pfa.cutpoint),
        "strict": pfa.strict,
        "stochastic_kind": pfa.stochastic_kind,
    }
    if pfa.metadata:
        out["metadata"] = pfa.metadata
    return out


def from_json(data: dict) -> Pfa:
    if "version" not in data:
        raise ValueError("PFA file lacks a version field")
    if data["version"] != FORMAT_VERSION:
        raise ValueError(f"unsupported PFA format version {data['version']}")
    try:
        alphabet = data["alphabet"]
        automaton = WeightedAutomaton(
            alphabet,
            {s: [[parse_rational(x) for x in row] for row in data["matrices"][s]] for s in alphabet},
            [parse_rational(x) for x in data["start"]],
            [parse_rational(x) for x in data["output"]],
        )
        pfa = Pfa(
            automaton,
            parse_rational(data["cutpoint"]),
            strict=bool(data.get("strict", True)),
            stochastic_kind=data.get("stochastic_kind", "row"),
            metadata=data.get("metadata", {}),
        )
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed PFA file: {exc!r}") from None
    if "states" in data and data["states"] != automaton.dim:
        raise ValueError(f"states field {data['states']} disagrees with dimension {automaton.dim}")
    return pfa


def dumps(pfa: Pfa) -> str:
    return json.dumps(to_json(pfa), indent=1) + "\n"


def dump(pfa: Pfa, path) -> None:
    Path(path).write_text(dumps(pfa))


def load(path) -> Pfa:
    return from_json(json.loads(Path(path).read_text()))
