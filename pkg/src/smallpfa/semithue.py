"""Semi-Thue rewriting and its reduction to (G)PCP instances over {a, b}.

The chain is: semi-Thue system and target word -> GPCP whose only variable
word is the start pair's bottom -> PCP with bracket/star markers forcing the
start and end pairs -> PCP over {a, b} by a fixed-length code.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .pcp import PcpInstance, WordPair, gpcp

SEPARATOR = "#"
STEP4_ALPHABET = ("a", "b", "[", "]", "*")
STEP5_CODE = {"a": "aaa", "b": "bbb", "[": "bba", "]": "aba", "*": "bab"}


@dataclass(frozen=True)
class SemiThueSystem:
    alphabet: tuple
    rules: tuple  # of (l, r)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple((l, r) for l, r in self.rules))
        letters = set(self.alphabet)
        for l, r in self.rules:
            if set(l + r) - letters:
                raise ValueError(f"rule {l!r} -> {r!r} leaves the alphabet")

    @property
    def k(self) -> int:
        return len(self.rules)


def one_step(system: SemiThueSystem, u: str) -> set:
    """All words reachable from ``u`` by rewriting one occurrence of one rule."""
    out = set()
    for l, r in system.rules:
        # an empty left side occurs at every position, including the end
        start = 0
        while True:
            pos = u.find(l, start)
            if pos < 0:
                break
            out.add(u[:pos] + r + u[pos + len(l):])
            start = pos + 1
    return out


@dataclass
class DeriveResult:
    status: str  # "solved", "closed" or "bounded"
    derivation: Optional[list] = None

    def __bool__(self):
        return self.derivation is not None


def bounded_derives(system: SemiThueSystem, source: str, target: str, depth: int) -> DeriveResult:
    """Shortest derivation ``source ->* target`` using at most ``depth`` steps."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    parents = {source: None}
    frontier = deque([(source, 0)])
    pruned = False
    while frontier:
        word, d = frontier.popleft()
        if word == target:
            chain = []
            while word is not None:
                chain.append(word)
                word = parents[word]
            return DeriveResult("solved", chain[::-1])
        # sorted for a deterministic tie-break between equally short derivations
        for nxt in sorted(one_step(system, word)):
            if nxt in parents:
                continue
            if d == depth:
                pruned = True
                continue
            parents[nxt] = word
            frontier.append((nxt, d + 1))
    return DeriveResult("bounded" if pruned else "closed")


# -- binary code for Sigma + {#} ---------------------------------------------


class SymbolCode:
    """Codewords ``bab, baab, baaab, ...``; ``#`` gets the first one.

    Besides being injective, the family has the property that a codeword only
    occurs inside an encoded string where it encodes that very symbol.
    """

    def __init__(self, alphabet):
        alphabet = tuple(alphabet)
        if SEPARATOR in alphabet:
            raise ValueError(f"{SEPARATOR!r} is reserved for the separator")
        self.symbols = (SEPARATOR,) + alphabet
        self.table = {s: "b" + "a" * (i + 1) + "b" for i, s in enumerate(self.symbols)}
        self._inverse = {w: s for s, w in self.table.items()}

    def encode(self, u) -> str:
        try:
            return "".join(self.table[s] for s in u)
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} has no codeword") from None

    def decode(self, x: str) -> str:
        """Inverse of :meth:`encode`; raises ValueError if ``x`` is not an encoding."""
        out = []
        i = 0
        while i < len(x):
            j = x.find("b", i + 1) if x[i] == "b" else -1
            if j < 0 or x[i + 1 : j].strip("a"):
                raise ValueError(f"not decodable at offset {i}: {x!r}")
            word = x[i : j + 1]
            if word not in self._inverse:
                raise ValueError(f"unknown codeword {word!r}")
            out.append(self._inverse[word])
            i = j + 1
        return "".join(out)

    def __repr__(self):
        return f"SymbolCode({self.table})"


def encode(code: SymbolCode, u) -> str:
    return code.encode(u)


def check_code_substring(code: SymbolCode, u: str, x: str, alpha: str, y: str) -> tuple[str, str]:
    """Given ``<u> = x <alpha> y``, return ``(v, w)`` with ``<v> = x``, ``<w> = y``.

    Raises ValueError when the split is not of that form or cannot be decoded;
    the latter would contradict the substring property of the code.
    """
    if x + code.encode(alpha) + y != code.encode(u):
        raise ValueError("split does not reproduce the encoding of u")
    v, w = code.decode(x), code.decode(y)
    if v + alpha + w != u:
        raise ValueError(f"decoded split {v!r}+{alpha!r}+{w!r} differs from {u!r}")
    return v, w


# -- the reduction chain ---------------------------------------------------------


def gpcp_from_semithue(system: SemiThueSystem, target: str, source: str) -> PcpInstance:
    """GPCP with ``k + 4`` nonempty pairs: start, end, rule pairs, two copy pairs.

    Rule pairs carry an extra trailing ``b``; every codeword starts with ``b``,
    so this only postpones copying that letter and keeps the words nonempty.
    """
    code = SymbolCode(system.alphabet)
    sep = SEPARATOR
    pairs = [
        (code.encode(sep), code.encode(sep + source + sep)),
        (code.encode(sep + target + sep), code.encode(sep)),
    ]
    pairs += [(code.encode(l) + "b", code.encode(r) + "b") for l, r in system.rules]
    pairs += [("a", "a"), ("b", "b")]
    return gpcp(("a", "b"), pairs)


def sigma(u: str) -> str:
    """Star before every letter."""
    return "".join("*" + c for c in u)


def rho(u: str) -> str:
    """Star after every letter."""
    return "".join(c + "*" for c in u)


def gpcp_to_pcp(g: PcpInstance) -> PcpInstance:
    """Plain PCP whose solutions are forced to start with pair 1 and end with pair 2.

    Requires every word to be nonempty: with an empty word, a pair other than
    the start pair may be able to open a solution.
    """
    if g.kind != "gpcp":
        raise ValueError("expected a GPCP instance")
    if set(g.alphabet) - {"a", "b"}:
        raise ValueError(f"expected a GPCP over {{a, b}}, got {g.alphabet}")
    for i, p in enumerate(g.pairs, 1):
        if not p.top or not p.bottom:
            raise ValueError(f"pair {i} has an empty word; all words must be nonempty")
    (v1, w1), (v2, w2) = (g.pairs[0].top, g.pairs[0].bottom), (g.pairs[1].top, g.pairs[1].bottom)
    pairs = [
        ("[" + sigma(v1), "[" + sigma(w1) + "*"),
        ("*" + rho(v2) + "]", rho(w2) + "]"),
    ]
    pairs += [(sigma(p.top), rho(p.bottom)) for p in g.pairs[2:]]
    return PcpInstance(STEP4_ALPHABET, pairs, start_index=1, end_index=2)


def binarize_alphabet(p: PcpInstance) -> PcpInstance:
    """Recode the five-letter marker alphabet with the fixed-length code."""
    if tuple(p.alphabet) != STEP4_ALPHABET:
        raise ValueError(f"alphabet must be {STEP4_ALPHABET} in this order, got {p.alphabet}")

    def enc(word):
        return "".join(STEP5_CODE[c] for c in word)

    return PcpInstance(
        ("a", "b"),
        [(enc(q.top), enc(q.bottom)) for q in p.pairs],
        start_index=p.start_index,
        end_index=p.end_index,
    )


def reduction_chain(system: SemiThueSystem, source: str, target: str) -> dict:
    g = gpcp_from_semithue(system, target, source)
    p5 = gpcp_to_pcp(g)
    return {"gpcp": g, "pcp5": p5, "pcp2": binarize_alphabet(p5)}


def hhh_counterexample() -> tuple[PcpInstance, tuple]:
    """Three-pair instance with an empty word whose solution avoids the start pair first.

    Pairs are ``(h(b_i), g(b_i))`` under the binary code ``* -> aba``,
    ``u -> abba``, ``v -> abbba``, ``w -> abbbba``; ``g(b_2)`` is empty and
    ``b_2 b_1 b_3`` is a solution.
    """
    phi = {"*": "aba", "u": "abba", "v": "abbba", "w": "abbbba"}

    def enc(word):
        return "".join(phi[c] for c in word)

    pairs = [
        WordPair(enc("*v*w"), enc("*")),
        WordPair(enc("*u"), enc("")),
        WordPair(enc("**"), enc("u*v*w**")),
    ]
    return PcpInstance(("a", "b"), pairs, start_index=1, end_index=3), (2, 1, 3)


# -- JSON --------------------------------------------------------------------


def system_from_json(data: dict) -> tuple[SemiThueSystem, str, str]:
    try:
        system = SemiThueSystem(data["alphabet"], [(r["l"], r["r"]) for r in data["rules"]])
        source, target = data["source"], data["target"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed semi-Thue file: missing {exc}") from None
    for word in (source, target):
        if set(word) - set(system.alphabet):
            raise ValueError(f"word {word!r} leaves the alphabet")
    return system, source, target


def system_to_json(system: SemiThueSystem, source: str, target: str) -> dict:
    return {
        "alphabet": list(system.alphabet),
        "rules": [{"l": l, "r": r} for l, r in system.rules],
        "source": source,
        "target": target,
    }


def load_system(path):
    return system_from_json(json.loads(Path(path).read_text()))
