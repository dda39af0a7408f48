"""Command-line interface.

Exit codes: 0 success / verified, 1 verification mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import UnaryPLError
from .grammar import load_grammar
from .pumping import (
    PI_MODES,
    LanguageSource,
    enumerate_family,
    grammar_witness,
    load_witness,
    tuple_generate,
    tuple_normalize,
)
from .pipeline import Config, regularize, tuple_json

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
GRAMMAR_SUFFIX = ".cfg"


class InputError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _source(args) -> LanguageSource:
    if not args.grammar:
        raise InputError("a grammar file is required")
    try:
        g = load_grammar(args.grammar)
    except OSError as exc:
        raise InputError(f"cannot read {args.grammar}: {exc.strerror or exc}") from exc
    source = LanguageSource.from_grammar(g, name=str(args.grammar))
    witness_path = getattr(args, "witness", None)
    if witness_path:
        try:
            witness = load_witness(witness_path)
        except OSError as exc:
            raise InputError(f"cannot read {witness_path}: {exc.strerror or exc}") from exc
        source = LanguageSource.from_oracle(source.contains, witness, name=source.name)
    return source


def _config(args) -> Config:
    return Config(
        z_max=args.zmax,
        max_length=args.max,
        b_override=args.b,
        pi_mode=args.pi_mode,
        filter_mode=not args.no_filter,
    )


def _fmt_set(values) -> str:
    return "{" + ", ".join(map(str, sorted(values))) + "}"


def _fmt_linear(ls) -> str:
    off = ls.offset[0]
    if not ls.periods:
        return str(off)
    return f"{off} + " + " + ".join(f"N*{p[0]}" for p in ls.periods)


def _render_result(result) -> str:
    v = result.verification
    lines = [
        f"b: {v.b}",
        f"low set (lengths < b): {_fmt_set(result.low_set)}",
        "tuples: " + (" ".join(map(str, sorted(result.tuples))) or "(none)"),
        f"regex: {result.regex}",
        f"eventually periodic: threshold={result.eps.threshold} period={result.eps.period} "
        f"low={_fmt_set(result.eps.low)} cyc={_fmt_set(result.eps.cyc)}",
        f"minimal dfa: tail={result.dfa.tail} cycle={result.dfa.cycle} "
        f"accepting={_fmt_set(result.dfa.accepting)}",
        "semilinear: " + (" | ".join(_fmt_linear(c) for c in result.semilinear.components) or "∅"),
    ]
    lines.extend(_render_report(v))
    return "\n".join(lines)


def _render_report(v) -> list[str]:
    lines = [f"pi mode: {v.pi_mode}"]
    for d in v.tuples_discarded:
        lines.append(f"discarded {d.tuple}: first escape at {d.first_escape}")
    if v.tuples_certified:
        lines.append("certified by lineage: " + " ".join(map(str, v.tuples_certified)))
    lines.append(f"stabilized: {'yes' if v.stabilized else 'no'}")
    if v.passed:
        lines.append(f"verification: agreement on [0, {v.agreement_bound}]")
    else:
        lines.append(f"verification: MISMATCH at {list(v.mismatches)}")
    return lines


def cmd_regularize(args) -> tuple[int, str]:
    result = regularize(_source(args), _config(args))
    code = EXIT_OK if result.verification.passed else EXIT_MISMATCH
    if args.json:
        return code, dump_json(result.to_json())
    return code, _render_result(result)


def cmd_verify(args) -> tuple[int, str]:
    result = regularize(_source(args), _config(args))
    v = result.verification
    code = EXIT_OK if v.passed else EXIT_MISMATCH
    if args.json:
        return code, dump_json(v.to_json())
    return code, "\n".join(_render_report(v))


def cmd_tuples(args) -> tuple[int, str]:
    result = regularize(_source(args), _config(args))
    v = result.verification
    if args.json:
        return EXIT_OK, dump_json(
            {
                "b": v.b,
                "kept": [tuple_json(t) for t in v.tuples_kept],
                "discarded": v.to_json()["tuples_discarded"],
            }
        )
    lines = [f"b: {v.b}"]
    lines += [f"kept {t}" for t in v.tuples_kept]
    lines += [f"discarded {d.tuple} (escapes at {d.first_escape})" for d in v.tuples_discarded]
    return EXIT_OK, "\n".join(lines)


def cmd_pump(args) -> tuple[int, str]:
    source = _source(args)
    if source.witness is not None:
        witness = source.witness
        if args.b is not None and args.b != witness.b:
            raise InputError("--b conflicts with the witness file")
    else:
        witness = grammar_witness(source.grammar, args.b, args.pi_mode or "lineage")
    trace = tuple_generate(source, witness, args.length)
    tup = tuple_normalize(trace)
    if args.json:
        return EXIT_OK, dump_json(
            {
                "b": witness.b,
                "z_length": trace.z_length,
                "steps": [{"p": s.p, "q": s.q} for s in trace.steps],
                "h": trace.h,
                "tuple": {**tuple_json(tup), "multiplicities": list(tup.multiplicities)},
            }
        )
    lines = [f"b: {witness.b}  |z|: {trace.z_length}"]
    total = 0
    for i, step in enumerate(trace.steps):
        total += step.q
        lines.append(
            f"  i={i}: p={step.p} q={step.q}   |z| = {step.p} + {total} ok, 0 < q <= b ok"
        )
    lines.append(f"h = {trace.h}, p_h = {trace.steps[-1].p} < b")
    mult = " + ".join(f"{i}*{q}" for i, q in zip(tup.multiplicities, tup.qs))
    lines.append(f"tuple: {tup}   {trace.z_length} = {tup.p_h} + {mult}")
    return EXIT_OK, "\n".join(lines)


def cmd_family(args) -> tuple[int, str]:
    if args.b is None or args.b < 1:
        raise InputError("family needs --b with a positive value")
    family = sorted(enumerate_family(args.b))
    if args.json:
        return EXIT_OK, dump_json({"b": args.b, "tuples": [tuple_json(t) for t in family]})
    lines = [f"b: {args.b}  size: {len(family)}"] + [str(t) for t in family]
    return EXIT_OK, "\n".join(lines)


def cmd_member(args) -> tuple[int, str]:
    source = _source(args)
    if args.length < 0:
        raise InputError("--length must be non-negative")
    answer = bool(source.contains(args.length))
    if args.json:
        return EXIT_OK, dump_json({"length": args.length, "member": answer})
    return EXIT_OK, "true" if answer else "false"


COMMANDS = {
    "regularize": cmd_regularize,
    "verify": cmd_verify,
    "tuples": cmd_tuples,
    "pump": cmd_pump,
    "family": cmd_family,
    "member": cmd_member,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unarypl", description="Regularize unary languages that satisfy the pumping lemma."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def bounds(p):
        p.add_argument("--b", type=int, help="pumping constant (default 2^|V| of the CNF)")
        p.add_argument("--zmax", type=int, help="largest length fed to tuple generation")
        p.add_argument("--max", type=int, help="verification bound")
        p.add_argument("--pi-mode", choices=PI_MODES)
        p.add_argument("--no-filter", action="store_true", help="skip the soundness filter")
        p.add_argument("--witness", help="witness file; makes the grammar a membership oracle only")

    for name in ("regularize", "verify", "tuples"):
        p = sub.add_parser(name)
        p.add_argument("grammar", nargs="?")
        bounds(p)
        p.add_argument("--batch", help="process every *.cfg grammar file in this directory")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("pump")
    p.add_argument("grammar")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--pi-mode", choices=PI_MODES)
    p.add_argument("--witness")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("family")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("member")
    p.add_argument("grammar")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def run(args) -> tuple[int, str]:
    try:
        return COMMANDS[args.command](args)
    except (InputError, UnaryPLError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}"


def _run_file(argv_and_path):
    argv, path = argv_and_path
    args = build_parser().parse_args(argv)
    args.grammar = path
    args.batch = None
    return run(args)


def _batch(args, argv) -> tuple[int, str]:
    directory = Path(args.batch)
    if not directory.is_dir():
        return EXIT_INPUT, f"error: {directory} is not a directory"
    files = sorted(p for p in directory.glob(f"*{GRAMMAR_SUFFIX}") if p.is_file())
    if not files:
        return EXIT_INPUT, f"error: no *{GRAMMAR_SUFFIX} files in {directory}"
    jobs = [(argv, str(p)) for p in files]
    with ProcessPoolExecutor(max_workers=min(len(jobs), os.cpu_count() or 1)) as pool:
        results = list(pool.map(_run_file, jobs))
    code = max(c for c, _ in results)
    if args.json:
        merged = {}
        for p, (c, text) in zip(files, results):
            merged[p.name] = {"exit": c, "output": json.loads(text) if c != EXIT_INPUT else text}
        return code, dump_json(merged)
    blocks = [f"== {p.name} (exit {c})\n{text}" for p, (c, text) in zip(files, results)]
    return code, "\n\n".join(blocks)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "batch", None):
        stripped = []
        skip = False
        for tok in argv:
            if skip:
                skip = False
                continue
            if tok == "--batch":
                skip = True
                continue
            if tok.startswith("--batch="):
                continue
            stripped.append(tok)
        code, out = _batch(args, stripped)
        # The merged report holds every file's result, so it is never a bare diagnostic.
        stream = sys.stdout if out and not out.startswith("error:") else sys.stderr
    else:
        code, out = run(args)
        stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
