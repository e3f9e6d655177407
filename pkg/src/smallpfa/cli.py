"""Command line front end: build, eval, solve, check, convert, counterexample.

Exit codes: 0 ok, 1 a checked invariant failed, 2 bad input, 3 a pipeline
precondition does not hold for the given instance.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import automaton as pfa_io
from . import pcp as pcp_io
from .automaton import bounded_emptiness, validate
from .binarize import two_matrix_pfa
from .checks import DEFAULT_SEED, SUITES
from .construction import backward_pfa, forward_pfa
from .pcp import apply, bounded_solve, is_solution
from .rationals import format_rational, parse_rational
from .semithue import bounded_derives, hhh_counterexample, reduction_chain, system_from_json

OK, INVARIANT_FAILED, BAD_INPUT, PRECONDITION = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def emit(obj, path=None):
    text = json.dumps(obj, indent=1, sort_keys=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(BAD_INPUT, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(BAD_INPUT, f"{path} is not valid JSON: {exc}") from None


def load_with(loader, path):
    data = read_json(path)
    try:
        return loader(data)
    except (ValueError, TypeError) as exc:
        raise CliError(BAD_INPUT, f"{path}: {exc}") from None


def split_word(text: str, alphabet) -> tuple:
    """``"1,3,2"`` splits on commas; otherwise one character per symbol."""
    if text == "":
        return ()
    word = tuple(text.split(",")) if "," in text else tuple(text)
    unknown = sorted(set(word) - set(alphabet))
    if unknown:
        raise CliError(BAD_INPUT, f"symbols {unknown} not in alphabet {list(alphabet)}")
    return word


def at_least(name, value, low):
    if value is not None and value < low:
        raise CliError(BAD_INPUT, f"--{name} must be at least {low}")


# -- subcommands -----------------------------------------------------------------


def cmd_build(args):
    inst = load_with(pcp_io.from_json, args.instance)
    alpha = None
    if args.alpha is not None:
        try:
            alpha = parse_rational(args.alpha)
        except (ValueError, ZeroDivisionError):
            raise CliError(BAD_INPUT, f"--alpha {args.alpha!r} is not a rational p/q") from None
        if alpha <= 0:
            raise CliError(BAD_INPUT, "--alpha must be positive")
    try:
        if args.variant == "forward7":
            pfa = forward_pfa(inst, reverse_and_merge=args.merge, alpha=alpha)
        elif args.variant == "backward6":
            if alpha is not None:
                raise CliError(BAD_INPUT, "--alpha does not apply to the backward variant")
            pfa = backward_pfa(inst, merge=True if args.merge is None else args.merge)
        else:
            pfa = two_matrix_pfa(inst, merge=args.merge, alpha=alpha)
    except (ValueError, AssertionError) as exc:
        raise CliError(PRECONDITION, f"{args.variant}: {exc}") from None
    if not args.strict:
        pfa = replace(pfa, strict=False)
    report = validate(pfa)
    summary = {
        "variant": args.variant,
        "states": pfa.dim,
        "symbols": len(pfa.alphabet),
        "cutpoint": format_rational(pfa.cutpoint),
        "valid": report.ok,
        "violations": report.violations,
        **report.properties,
        **{k: v for k, v in pfa.metadata.items() if k != "stages"},
        "stages": pfa.metadata.get("stages", []),
    }
    if args.output:
        pfa_io.dump(pfa, args.output)
    else:
        sys.stdout.write(pfa_io.dumps(pfa))
    if args.report:
        emit(summary, args.report)
    print(f"built {args.variant}: {pfa.dim} states, {len(pfa.alphabet)} symbols, cutpoint {pfa.cutpoint}", file=sys.stderr)
    return OK if report.ok else INVARIANT_FAILED


def cmd_eval(args):
    pfa = load_with(pfa_io.from_json, args.pfa)
    rows = []
    for text in args.word:
        word = split_word(text, pfa.alphabet)
        x = pfa.value(word)
        rows.append({"word": list(word), "value": format_rational(x), "accepted": pfa.accepts(word)})
    for r in rows:
        print(f"{','.join(r['word']) or '<empty>'}\t{r['value']}\t{'accept' if r['accepted'] else 'reject'}")
    return OK


def cmd_solve(args):
    at_least("max-steps", args.max_steps, 1)
    at_least("max-overhang", args.max_overhang, 1)
    at_least("max-len", args.max_len, 0)
    at_least("depth", args.depth, 0)
    if args.pcp:
        inst = load_with(pcp_io.from_json, args.pcp)
        r = bounded_solve(inst, args.max_steps, args.max_overhang)
        out = {"status": r.status, "solution": list(r.solution) if r.solution else None, "explored": r.explored}
        if r.solution:
            out["word"] = apply(inst, r.solution)[0]
    elif args.semithue:
        system, source, target = load_with(system_from_json, args.semithue)
        r = bounded_derives(system, source, target, args.depth)
        out = {"status": r.status, "derivation": r.derivation}
    else:
        pfa = load_with(pfa_io.from_json, args.pfa)
        r = bounded_emptiness(pfa, args.max_len, exclude_empty=args.exclude_empty)
        out = {
            "status": "found" if r else "bounded",
            "word": list(r.word) if r else None,
            "value": format_rational(pfa.value(r.word)) if r else None,
            "max_len": r.max_len,
            "checked": r.checked,
        }
    emit(out)
    return OK


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    at_least("trials", args.trials, 1)
    at_least("max-len", args.max_len, 0)
    failed = False
    for name in names:
        fn = SUITES[name]
        kwargs = {}
        if name in ("multiplicative", "column-sums"):
            kwargs["seed"] = args.seed
            if args.trials is not None:
                kwargs["trials"] = args.trials
        if args.max_len is not None:
            key = {"equality-detection": "max_digits", "proposition": "max_len", "forward": "max_len",
                   "blend": "max_len", "backward": "max_len", "two-matrix": "max_len"}.get(name)
            if key:
                kwargs[key] = args.max_len
        result = fn(**kwargs)
        failed |= not result.passed
        print(json.dumps(result.to_json(), sort_keys=False))
    return INVARIANT_FAILED if failed else OK


def cmd_convert(args):
    system, source, target = load_with(system_from_json, args.semithue)
    chain = reduction_chain(system, source, target)
    names = ["gpcp", "pcp5", "pcp2"] if args.emit_all else ["pcp2"]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        pcp_io.dump(chain[name], out_dir / f"{name}.json")
        inst = chain[name]
        print(f"{out_dir / (name + '.json')}: {inst.kind}, {inst.k} pairs over {''.join(inst.alphabet)}")
    return OK


def cmd_counterexample(args):
    inst, witness = hhh_counterexample()
    top, bottom = apply(inst, witness)
    out = {
        "instance": pcp_io.to_json(inst),
        "witness": list(witness),
        "top": top,
        "bottom": bottom,
        "is_solution": is_solution(inst, witness),
        "starts_with_pair_1": witness[0] == 1,
        "empty_words": [i for i, p in enumerate(inst.pairs, 1) if not p.top or not p.bottom],
    }
    emit(out)
    return OK if out["is_solution"] and not out["starts_with_pair_1"] else INVARIANT_FAILED


# -- parser ------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="smallpfa", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with defaults for the subcommand's flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a PFA from a PCP instance")
    p.add_argument("instance")
    p.add_argument("--variant", choices=["forward7", "backward6", "two-matrix"], default="forward7")
    p.add_argument("--merge", dest="merge", action="store_true", default=None, help="fold the forced pair into a vector")
    p.add_argument("--no-merge", dest="merge", action="store_false")
    p.add_argument("--alpha", help="blend constant p/q (default: largest 10^-p keeping entries positive)")
    p.add_argument("--weak", dest="strict", action="store_false", default=True, help="accept on value >= cutpoint")
    p.add_argument("-o", "--output")
    p.add_argument("--report", help="write the build report JSON here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="exact value of words under a PFA")
    p.add_argument("pfa")
    p.add_argument("--word", action="append", required=True, help="symbols, comma separated unless single characters")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="bounded search on a PCP, semi-Thue system or PFA")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pcp")
    group.add_argument("--semithue")
    group.add_argument("--pfa")
    p.add_argument("--max-steps", type=int, default=12)
    p.add_argument("--max-overhang", type=int, default=pcp_io.DEFAULT_MAX_OVERHANG)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--exclude-empty", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-len", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="semi-Thue system to GPCP, PCP and binary PCP")
    p.add_argument("--semithue", required=True)
    p.add_argument("--emit-all", action="store_true", help="also write the intermediate instances")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("counterexample", help="print and verify the three-pair counterexample")
    p.set_defaults(func=cmd_counterexample)
    return parser, sub


def parse(argv):
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_json(args.config)
        if not isinstance(cfg, dict):
            raise CliError(BAD_INPUT, "config file must hold a JSON object")
        # config values become defaults, so explicit flags still win
        sub.choices[args.command].set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
