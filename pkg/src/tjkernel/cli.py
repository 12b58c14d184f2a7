"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .generators import FAMILIES, PRNG_NAME, FamilySpec, GeneratorError, generate
from .graph import GraphError
from .instance import InstanceError, TokenInstance
from .io import FormatError, InstanceFile, emit_instance, emit_witness, read_instance
from .kernel import GENERAL, K23_FREE, KernelOutcome, build_kernel
from .oracle import BUDGET_EXCEEDED, DEFAULT_BUDGET, YES, SolveResult, solve, validate_sequence

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2

_MODE_FLAGS = {"general": GENERAL, "k23": K23_FREE}
_ANSWER = {YES: "YES", "no": "NO", BUDGET_EXCEEDED: "UNKNOWN"}

# Metadata keys carried from an input file into its kernel.
_CARRIED = ("genus-upper-bound", "k23-free")


class UsageError(Exception):
    pass


def _load(path: str) -> InstanceFile:
    try:
        return read_instance(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _genus(meta: dict[str, str]) -> int | None:
    raw = meta.get("genus-upper-bound")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"bad genus-upper-bound comment {raw!r}") from None


def _kernelize(parsed: InstanceFile, mode: str) -> KernelOutcome:
    inst = parsed.instance
    try:
        return build_kernel(inst.graph, inst.i, inst.j, mode=mode, genus=_genus(parsed.metadata))
    except InstanceError as exc:
        raise UsageError(str(exc)) from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def stats_document(parsed: InstanceFile, outcome: KernelOutcome, timings: dict) -> dict:
    inst = parsed.instance
    doc = outcome.stats.as_dict()
    doc.update(
        decision="yes" if outcome.decided else "reduced",
        input_m=inst.graph.edge_count,
        kernel_m=None,
        kernel_to_input=None,
        witness_length=None,
    )
    if outcome.decided:
        if outcome.witness is not None:
            doc["witness_length"] = len(outcome.witness)
    else:
        doc["kernel_m"] = outcome.instance.graph.edge_count
        doc["kernel_to_input"] = [v + 1 for v in outcome.id_map.to_parent]
    if "seed" in parsed.metadata:
        doc["seed"] = parsed.metadata["seed"]
        doc["prng"] = parsed.metadata.get("prng", PRNG_NAME)
    doc.update(timings)
    return doc


def cmd_kernelize(args) -> int:
    t0 = time.perf_counter()
    parsed = _load(args.input)
    t1 = time.perf_counter()
    outcome = _kernelize(parsed, _MODE_FLAGS[args.mode])
    t2 = time.perf_counter()

    if outcome.decided:
        _write(args.output, "s YES\n")
        if args.witness and outcome.witness is not None:
            _write(args.witness, emit_witness(outcome.witness))
    else:
        carried = [f"{key} {parsed.metadata[key]}" for key in _CARRIED if key in parsed.metadata]
        _write(args.output, emit_instance(outcome.instance, carried))
    if args.stats:
        timings = {
            "time_parse_s": round(t1 - t0, 6),
            "time_kernelize_s": round(t2 - t1, 6),
            "time_total_s": round(time.perf_counter() - t0, 6),
        }
        _write(args.stats, json.dumps(stats_document(parsed, outcome, timings), indent=1) + "\n")
    return EXIT_OK


def _print_search(res: SolveResult) -> None:
    st = res.stats
    print(f"c states_visited {st.states_visited}")
    print(f"c states_generated {st.states_generated}")
    print(f"c frontier_peak {st.frontier_peak}")


def cmd_solve(args) -> int:
    inst = _load(args.input).instance
    res = solve(inst.graph, inst.i, inst.j, args.budget, bidirectional=args.bidirectional)
    print(f"s {_ANSWER[res.decision]}")
    _print_search(res)
    if res.decision == YES:
        print(f"c witness_length {len(res.witness)}")
        if args.witness:
            _write(args.witness, emit_witness(res.witness))
    return EXIT_OK


@dataclass
class VerifyReport:
    verdict: str
    original: str
    kernel: str
    outcome: KernelOutcome
    note: str = ""


def verify_instance(
    inst: TokenInstance,
    budget: int | None = DEFAULT_BUDGET,
    mode: str = GENERAL,
    genus: int | None = None,
) -> VerifyReport:
    """Kernelize, then solve original and kernel and compare the answers."""
    outcome = build_kernel(inst.graph, inst.i, inst.j, mode=mode, genus=genus)
    original = solve(inst.graph, inst.i, inst.j, budget).decision
    note = ""
    if outcome.decided:
        kernel = YES
        if outcome.witness is not None:
            check = validate_sequence(inst.graph, inst.i, inst.j, outcome.witness)
            if not check:
                return VerifyReport(
                    "MISMATCH", original, kernel, outcome,
                    f"witness invalid at step {check.index}: {check.reason}",
                )
        note = "kernel decided YES"
    else:
        k = outcome.instance
        kernel = solve(k.graph, k.i, k.j, budget).decision
    if BUDGET_EXCEEDED in (original, kernel):
        verdict = "UNKNOWN"
    else:
        verdict = "MATCH" if original == kernel else "MISMATCH"
    return VerifyReport(verdict, original, kernel, outcome, note)


def cmd_verify(args) -> int:
    parsed = _load(args.input)
    try:
        rep = verify_instance(
            parsed.instance, args.budget, _MODE_FLAGS[args.mode], _genus(parsed.metadata)
        )
    except InstanceError as exc:
        raise UsageError(str(exc)) from None
    kernel_n = "decided" if rep.outcome.decided else rep.outcome.stats.n_after
    print(
        f"{rep.verdict} original={_ANSWER[rep.original]} kernel={_ANSWER[rep.kernel]} "
        f"n={parsed.instance.graph.vertex_count} kernel_n={kernel_n}"
    )
    if rep.note:
        print(f"c {rep.note}")
    if args.stats:
        doc = stats_document(parsed, rep.outcome, {})
        doc.update(verdict=rep.verdict, original=rep.original, kernel=rep.kernel)
        _write(args.stats, json.dumps(doc, indent=1) + "\n")
    return EXIT_MISMATCH if rep.verdict == "MISMATCH" else EXIT_OK


def _vertex_list(raw: str | None) -> list[int] | None:
    if raw is None:
        return None
    try:
        return [int(x) - 1 for x in raw.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {raw!r}") from None


def cmd_gen(args) -> int:
    params = {name: getattr(args, name) for name in ("m", "n", "a", "b", "p")}
    params = {key: val for key, val in params.items() if val is not None}
    placement = None
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise UsageError("--i and --j must be given together")
        placement = (_vertex_list(args.i), _vertex_list(args.j))
    try:
        gen = generate(FamilySpec(args.family, params, args.seed), args.k, placement)
    except (GeneratorError, GraphError) as exc:
        raise UsageError(str(exc)) from None

    comments = [
        f"family {args.family}",
        "params " + " ".join(f"{key}={val}" for key, val in sorted(params.items())),
    ]
    if gen.genus_upper_bound is not None:
        comments.append(f"genus-upper-bound {gen.genus_upper_bound}")
    if gen.k23_free is not None:
        comments.append(f"k23-free {'true' if gen.k23_free else 'false'}")
    comments += [f"seed {args.seed}", f"prng {PRNG_NAME}"]
    inst = TokenInstance(gen.graph, gen.i, gen.j)
    text = emit_instance(inst, comments)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tjkernel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", help="reduce an instance to a kernel")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", choices=sorted(_MODE_FLAGS), default="general")
    p.add_argument("--witness", help="write the jump sequence here on a YES decision")
    p.add_argument("--stats", help="write a JSON stats document here")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", help="decide an instance exactly (small inputs)")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--witness")
    p.add_argument("--bidirectional", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that the kernel preserves the answer")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--mode", choices=sorted(_MODE_FLAGS), default="general")
    p.add_argument("--stats")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance from a graph family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--i", help="fixed I placement, comma-separated 1-based ids")
    p.add_argument("--j", help="fixed J placement, comma-separated 1-based ids")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
