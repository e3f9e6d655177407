"""Push a semi-Thue word problem through the reduction chain and search each stage.

Usage: python scripts/semithue_chain.py [system.json] [max_steps] [max_overhang]
"""

import sys
from pathlib import Path

from smallpfa.pcp import bounded_solve
from smallpfa.semithue import bounded_derives, load_system, reduction_chain

ROOT = Path(__file__).resolve().parents[1]


def main(path, max_steps=40, max_overhang=200):
    system, source, target = load_system(path)
    d = bounded_derives(system, source, target, depth=max_steps)
    print(f"{source} ->* {target}: {d.status} {' -> '.join(d.derivation or [])}")
    for stage, inst in reduction_chain(system, source, target).items():
        r = bounded_solve(inst, max_steps, max_overhang)
        longest = max(len(p.top) + len(p.bottom) for p in inst.pairs)
        print(f"{stage:5s} {inst.k} pairs, longest pair {longest} letters: {r.status} {list(r.solution or [])} ({r.explored} configurations)")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else ROOT / "instances" / "toy_semithue.json", *map(int, args[1:3]))
