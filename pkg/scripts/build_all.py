"""Build every PFA variant for the bundled instances and summarize them.

Writes PFA files and build reports to ``results/`` (or the directory given as
the first argument) and prints one line per build.
"""

import json
import sys
from pathlib import Path

from smallpfa import automaton as io
from smallpfa import pcp
from smallpfa.automaton import accepted_words, validate
from smallpfa.binarize import TauCode, two_matrix_pfa
from smallpfa.construction import backward_pfa, forward_pfa

ROOT = Path(__file__).resolve().parents[1]

BUILDS = [
    ("classic", "forward7", lambda p: forward_pfa(p), 5),
    ("classic", "two-matrix", lambda p: two_matrix_pfa(p), 8),
    ("structured5", "forward7", lambda p: forward_pfa(p), 4),
    ("structured5", "backward6", lambda p: backward_pfa(p), 4),
    ("structured5", "two-matrix", lambda p: two_matrix_pfa(p), 8),
    ("structured7", "two-matrix", lambda p: two_matrix_pfa(p), 6),
]


def first_genuine(pfa, max_len):
    """Shortest accepted word that does not stand for the empty index word."""
    code = TauCode(len(pfa.metadata["tau_code"])) if "tau_code" in pfa.metadata else None
    for word, _ in accepted_words(pfa, max_len):
        empty = not word if code is None else not code.decode_prefix("".join(word))[0]
        if not (empty and pfa.metadata.get("empty_word_is_spurious")):
            return word
    return None


def main(out_dir):
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, variant, build, max_len in BUILDS:
        inst = pcp.load(ROOT / "instances" / f"{name}.json")
        pfa = build(inst)
        io.dump(pfa, out_dir / f"{name}-{variant}.json")
        rep = validate(pfa)
        first = first_genuine(pfa, max_len)
        row = {
            "instance": name,
            "variant": variant,
            "states": pfa.dim,
            "symbols": len(pfa.alphabet),
            "cutpoint": str(pfa.cutpoint),
            "valid": rep.ok,
            "first_accepted": "".join(first) if first is not None else None,
            "searched_up_to": max_len,
        }
        print(json.dumps(row))


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "results")
