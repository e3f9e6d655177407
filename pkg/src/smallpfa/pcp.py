"""PCP and GPCP instances: concatenation, solution checks, bounded search.

Pair indices are 1-based throughout, as in the usual statement of the problem.
A GPCP instance reserves pair 1 as the start pair and pair 2 as the end pair;
its solutions have the shape ``1, i_2, ..., i_{m-1}, 2`` with middle indices
from ``3..k``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

DEFAULT_MAX_OVERHANG = 64


@dataclass(frozen=True)
class WordPair:
    top: str
    bottom: str

    def reversed(self) -> "WordPair":
        return WordPair(self.top[::-1], self.bottom[::-1])


@dataclass(frozen=True)
class PcpInstance:
    """Ordered word pairs over an ordered alphabet.

    ``start_index``/``end_index`` mark pairs that every solution is known to
    begin/end with (structured instances). They are declarations, not checked.
    ``kind == "gpcp"`` switches the solution semantics to the generalized
    problem, where pair 1 starts and pair 2 ends every solution.
    """

    alphabet: tuple
    pairs: tuple
    start_index: Optional[int] = None
    end_index: Optional[int] = None
    kind: str = "pcp"

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(
            self, "pairs", tuple(p if isinstance(p, WordPair) else WordPair(*p) for p in self.pairs)
        )
        if self.kind not in ("pcp", "gpcp"):
            raise ValueError(f"unknown instance kind {self.kind!r}")
        k = len(self.pairs)
        if k < (2 if self.kind == "gpcp" else 1):
            raise ValueError(f"{self.kind} instance needs more pairs, got {k}")
        letters = set(self.alphabet)
        if len(letters) != len(self.alphabet):
            raise ValueError("alphabet has repeated symbols")
        for i, pair in enumerate(self.pairs, 1):
            for word in (pair.top, pair.bottom):
                bad = set(word) - letters
                if bad:
                    raise ValueError(f"pair {i} uses symbols {sorted(bad)} outside the alphabet")
        for idx in (self.start_index, self.end_index):
            if idx is not None and not 1 <= idx <= k:
                raise ValueError(f"structure index {idx} out of range 1..{k}")

    @property
    def k(self) -> int:
        return len(self.pairs)

    def pair(self, i: int) -> WordPair:
        if not 1 <= i <= self.k:
            raise IndexError(f"pair index {i} out of range 1..{self.k}")
        return self.pairs[i - 1]

    def has_empty_word(self) -> bool:
        return any(not p.top or not p.bottom for p in self.pairs)


def gpcp(alphabet, pairs) -> PcpInstance:
    return PcpInstance(alphabet, pairs, kind="gpcp")


def apply(instance: PcpInstance, indices: Sequence[int]) -> tuple[str, str]:
    """Concatenate tops and bottoms along ``indices``."""
    pairs = [instance.pair(i) for i in indices]
    return "".join(p.top for p in pairs), "".join(p.bottom for p in pairs)


def has_gpcp_shape(instance: PcpInstance, indices: Sequence[int]) -> bool:
    return (
        len(indices) >= 2
        and indices[0] == 1
        and indices[-1] == 2
        and all(i >= 3 for i in indices[1:-1])
    )


def is_solution(instance: PcpInstance, indices: Sequence[int]) -> bool:
    indices = list(indices)
    if not indices:
        return False
    if instance.kind == "gpcp" and not has_gpcp_shape(instance, indices):
        return False
    top, bottom = apply(instance, indices)
    return top == bottom


def reverse(instance: PcpInstance) -> PcpInstance:
    """Reverse every word; a forced end pair becomes a forced start pair.

    Solutions map to solutions by reversing the index sequence. Reversal is
    only defined for plain PCP instances; the GPCP shape is not symmetric.
    """
    if instance.kind != "pcp":
        raise ValueError("only plain PCP instances can be reversed")
    return PcpInstance(
        instance.alphabet,
        [p.reversed() for p in instance.pairs],
        start_index=instance.end_index,
        end_index=instance.start_index,
    )


# -- bounded search ----------------------------------------------------------

BALANCED = ("", "")


def _step(state, pair: WordPair):
    """Configuration after appending ``pair``; ``None`` if the rows disagree.

    A configuration is ``(leader, overhang)`` where ``leader`` names the longer
    row and ``overhang`` is its unmatched suffix; ``("", "")`` means balanced.
    """
    leader, over = state
    if leader == "bottom":
        top, bottom = pair.top, over + pair.bottom
    else:
        top, bottom = over + pair.top, pair.bottom
    if top.startswith(bottom):
        rest = top[len(bottom):]
        return ("top", rest) if rest else BALANCED
    if bottom.startswith(top):
        rest = bottom[len(top):]
        return ("bottom", rest) if rest else BALANCED
    return None


@dataclass
class SolveResult:
    """Outcome of a bounded search.

    ``status`` is ``"solved"``, ``"closed"`` (every reachable configuration
    was expanded and none closes a solution) or ``"bounded"`` (some
    configuration was cut off by ``max_steps`` or ``max_overhang``).
    """

    status: str
    solution: Optional[tuple] = None
    explored: int = 0

    def __bool__(self):
        return self.solution is not None


def bounded_solve(
    instance: PcpInstance,
    max_steps: int = 12,
    max_overhang: int = DEFAULT_MAX_OVERHANG,
    visit: Optional[Callable[[tuple], None]] = None,
) -> SolveResult:
    """Breadth-first search for a shortest, lexicographically least solution.

    Configurations are deduplicated, so a ``"closed"`` result means the
    configuration graph reachable within ``max_overhang`` is finite and has no
    path back to the balanced state; when nothing was pruned this is a proof
    of unsolvability. ``visit`` is called with the index path of each newly
    discovered (non-balanced) configuration.
    """
    if max_steps < 1 or max_overhang < 1:
        raise ValueError("limits must be positive")
    k = instance.k
    is_g = instance.kind == "gpcp"
    if is_g:
        first_choices, middle, closing = [1], list(range(3, k + 1)), [2]
    else:
        first_choices, middle, closing = list(range(1, k + 1)), list(range(1, k + 1)), []

    # parent pointers keep paths cheap to store; the root is kept apart from
    # the balanced configuration because GPCP prefixes may rebalance midway
    root = ("root", "")
    parents: dict = {root: (None, None)}
    frontier = deque([(root, 0)])
    pruned = False
    explored = 0

    def path(key):
        out = []
        while True:
            key, idx = parents[key]
            if idx is None:
                return tuple(reversed(out))
            out.append(idx)

    # GPCP nodes reserve one step for the closing end pair
    child_limit = max_steps - 1 if is_g else max_steps
    while frontier:
        key, depth = frontier.popleft()
        state = BALANCED if key == root else key
        explored += 1
        if is_g and depth > 0:
            for i in closing:
                if _step(state, instance.pair(i)) == BALANCED:
                    return SolveResult("solved", path(key) + (i,), explored)
        for i in first_choices if depth == 0 else middle:
            nxt = _step(state, instance.pair(i))
            if nxt is None:
                continue
            if nxt == BALANCED and not is_g:
                return SolveResult("solved", path(key) + (i,), explored)
            if nxt in parents:
                continue
            if depth + 1 > child_limit or len(nxt[1]) > max_overhang:
                pruned = True
                continue
            parents[nxt] = (key, i)
            if visit is not None:
                visit(path(nxt))
            frontier.append((nxt, depth + 1))
    return SolveResult("bounded" if pruned else "closed", None, explored)


def enumerate_solutions(instance: PcpInstance, max_len: int):
    """Brute force: every solution of length ``<= max_len`` in shortlex order."""
    from itertools import product

    for m in range(1, max_len + 1):
        for seq in product(range(1, instance.k + 1), repeat=m):
            if is_solution(instance, seq):
                yield seq


# -- JSON --------------------------------------------------------------------


def to_json(instance: PcpInstance) -> dict:
    out = {
        "kind": instance.kind,
        "alphabet": list(instance.alphabet),
        "pairs": [{"top": p.top, "bottom": p.bottom} for p in instance.pairs],
    }
    if instance.start_index is not None:
        out["start_index"] = instance.start_index
    if instance.end_index is not None:
        out["end_index"] = instance.end_index
    return out


def from_json(data: dict) -> PcpInstance:
    try:
        pairs = [(p["top"], p["bottom"]) for p in data["pairs"]]
        alphabet = data["alphabet"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed instance: missing {exc}") from None
    return PcpInstance(
        alphabet,
        pairs,
        start_index=data.get("start_index"),
        end_index=data.get("end_index"),
        kind=data.get("kind", "pcp"),
    )


def load(path) -> PcpInstance:
    return from_json(json.loads(Path(path).read_text()))


def dump(instance: PcpInstance, path) -> None:
    Path(path).write_text(json.dumps(to_json(instance), indent=2) + "\n")
