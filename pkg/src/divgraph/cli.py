"""Command-line front end.

Exit codes: 0 success, 1 input or usage error, 2 honest algorithmic failure
(best-effort miss, attempts exhausted, failed verification).  All randomized
commands draw and print a seed unless one is given; with --strict a missing
seed is a usage error (CI mode).  Witness files go to --out paths; reports go
to standard output.
"""

from __future__ import annotations

import argparse
import math
import os
import secrets
import sys
import time
from dataclasses import dataclass, field

from .errors import InputError, SearchFailure
from .generators import (
    complete_graph,
    gen_digraph,
    gen_favorable_subdivision_instance,
    gen_minor_model,
    gen_tree,
)
from .io import (
    parse_pattern,
    read_digraph,
    read_graph,
    read_model,
    read_selection,
    read_tree,
    read_witness,
    write_digraph,
    write_graph,
    write_model,
    write_selection,
    write_tree,
    write_witness,
)
from .minorcycle import find_divisible_cycle, required_branch_sets
from .model import (
    CycleWitness,
    SubdivisionWitness,
    cycle_witness_report,
    identity_minor_model,
    subdivision_witness_report,
    validate_minor_model,
    verify_cycle_witness,
    verify_subdivision_witness,
)
from .subdivision import DEFAULT_RAMSEY_BUDGET, build_divisible_subdivision
from .treeselect import SelectionFailure, select_leaves, verify_selection_report
from .zerosum import (
    BRUTE_FORCE_CAP,
    brute_force_zero_cycle,
    default_max_attempts,
    find_zero_cycle_prime,
    find_zero_cycle_randomized,
    is_prime,
)

ENV_SEED = "DIVGRAPH_SEED"
ENV_BRUTE_CAP = "DIVGRAPH_BRUTE_CAP"
ENV_RAMSEY_BUDGET = "DIVGRAPH_RAMSEY_BUDGET"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; our convention reserves 2 for honest
    # algorithmic failures, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass
class RunReport:
    command: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    outcome: str = ""
    verified: bool | None = None
    witness_file: str | None = None
    time_ms: float | None = None
    extra: list = field(default_factory=list)

    def emit(self) -> None:
        print(f"command: {self.command}")
        for key, value in self.parameters.items():
            print(f"{key}: {value}")
        if self.seed is not None:
            print(f"seed: {self.seed}")
        print(f"outcome: {self.outcome}")
        if self.verified is not None:
            print(f"verified: {str(self.verified).lower()}")
        if self.witness_file:
            print(f"witness-file: {self.witness_file}")
        for line in self.extra:
            print(line)
        if self.time_ms is not None:
            print(f"time-ms: {self.time_ms:.2f}")


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{ENV_SEED} must be an integer, got {env!r}") from None
    if getattr(args, "strict", False):
        raise InputError("--strict requires an explicit --seed")
    seed = secrets.randbits(32)
    print(f"seed: {seed} (drawn)")
    return seed


def _brute_cap() -> int:
    env = os.environ.get(ENV_BRUTE_CAP)
    return int(env) if env else BRUTE_FORCE_CAP


def _ramsey_budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(ENV_RAMSEY_BUDGET)
    return int(env) if env else DEFAULT_RAMSEY_BUDGET


def cmd_find_cycle(args) -> int:
    t0 = time.perf_counter()
    host = read_graph(args.graph)
    model, _ = read_model(args.model, host)
    q = args.q
    seed = 0
    if not is_prime(q):
        seed = _resolve_seed(args)
    report = RunReport(
        command="find-cycle",
        parameters={
            "q": q,
            "branch-sets": model.size,
            "required": required_branch_sets(q),
        },
        seed=None if is_prime(q) else seed,
    )
    witness = find_divisible_cycle(model, q, seed=seed, use_all=args.use_all)
    ok = verify_cycle_witness(witness)
    report.outcome = "witness"
    report.verified = ok
    report.extra.append(f"cycle-length: {len(witness.vertices)}")
    if args.out:
        write_witness(args.out, witness)
        report.witness_file = args.out
    report.time_ms = 1000 * (time.perf_counter() - t0)
    report.emit()
    return 0 if ok else 2


def cmd_zero_sum(args) -> int:
    t0 = time.perf_counter()
    if args.digraph:
        d = read_digraph(args.digraph)
        n, q = d.n, d.q
        if args.q is not None and args.q != q:
            raise InputError(f"--q {args.q} does not match digraph modulus {q}")
        seed = args.seed
    else:
        if args.n is None or args.q is None:
            raise InputError("zero-sum needs --n and --q (or --digraph FILE)")
        n, q = args.n, args.q
        seed = _resolve_seed(args)
        d = gen_digraph(n, q, seed)
    if args.prime and not is_prime(q):
        raise InputError(f"{q} is not prime")

    deterministic = args.prime or (is_prime(q) and n >= 2 * q - 1)
    report = RunReport(
        command="zero-sum",
        parameters={"n": n, "q": q, "finder": "prime" if deterministic else "randomized"},
        seed=seed,
    )
    if args.instance_out:
        write_digraph(args.instance_out, d)
        report.extra.append(f"instance-file: {args.instance_out}")

    if deterministic:
        witness = find_zero_cycle_prime(d)
    else:
        if seed is None:
            seed = _resolve_seed(args)
            report.seed = seed
        witness = find_zero_cycle_randomized(d, seed=seed)
    ok = verify_cycle_witness(witness)
    report.outcome = "witness"
    report.verified = ok
    report.extra.append(f"cycle: {' '.join(str(v) for v in witness.vertices)}")
    report.extra.append(f"weight: 0 (mod {q})")

    if args.exhaustive:
        if n > _brute_cap():
            raise InputError(f"--exhaustive capped at n={_brute_cap()}")
        oracle = brute_force_zero_cycle(d, cap=_brute_cap())
        agree = oracle is not None
        report.extra.append(f"oracle-agrees: {str(agree).lower()}")
        if not agree:
            report.outcome = "disagreement"
            report.emit()
            return 2
    if args.out:
        write_witness(args.out, witness)
        report.witness_file = args.out
    report.time_ms = 1000 * (time.perf_counter() - t0)
    report.emit()
    return 0 if ok else 2


def cmd_tree_select(args) -> int:
    t0 = time.perf_counter()
    tree = read_tree(args.tree)
    report = RunReport(
        command="tree-select",
        parameters={"k": args.k, "q": args.q, "leaves": len(tree.leaves)},
    )
    sel = select_leaves(tree, args.k, args.q)
    if isinstance(sel, SelectionFailure):
        report.outcome = f"failure: {sel.reason}"
        report.time_ms = 1000 * (time.perf_counter() - t0)
        report.emit()
        return 2
    check = verify_selection_report(tree, sel)
    report.outcome = "selection"
    report.verified = check.ok
    report.extra.append(f"case: {sel.case}")
    report.extra.append(f"residue: {sel.residue.value}")
    report.extra.append(f"selected: {' '.join(str(v) for v in sel.leaves)}")
    if check.vacuous:
        report.extra.append("triples: vacuous (fewer than 3 leaves)")
    if args.out:
        write_selection(args.out, sel)
        report.witness_file = args.out
    report.time_ms = 1000 * (time.perf_counter() - t0)
    report.emit()
    return 0 if check.ok else 2


def cmd_build_subdivision(args) -> int:
    t0 = time.perf_counter()
    host = read_graph(args.graph)
    model, partition = read_model(args.model, host)
    if partition is None:
        raise InputError(f"{args.model}: model file has no X/Y partition")
    pattern = parse_pattern(args.pattern)
    report = RunReport(
        command="build-subdivision",
        parameters={
            "pattern": args.pattern,
            "q": args.q,
            "gamma-size": args.gamma_size,
            "k-mode": args.k_mode,
        },
    )
    witness = build_divisible_subdivision(
        model,
        partition[0],
        partition[1],
        pattern,
        args.q,
        args.gamma_size,
        k_mode=args.k_mode,
        ramsey_budget=_ramsey_budget(args),
    )
    ok = verify_subdivision_witness(witness)
    report.outcome = "witness"
    report.verified = ok
    report.extra.append(
        "path-lengths: " + " ".join(str(len(p) - 1) for p in witness.paths)
    )
    if args.out:
        write_witness(args.out, witness)
        report.witness_file = args.out
    report.time_ms = 1000 * (time.perf_counter() - t0)
    report.emit()
    return 0 if ok else 2


def cmd_gen(args) -> int:
    seed = _resolve_seed(args)
    prefix = args.out
    kind = args.kind
    written: list[str] = []
    if kind == "identity":
        if args.n is None or args.q is None:
            raise InputError("gen identity needs --n and --q")
        host = complete_graph(args.n, args.q)
        model = identity_minor_model(host)
        write_graph(f"{prefix}.graph", host)
        write_model(f"{prefix}.model.json", model)
        written = [f"{prefix}.graph", f"{prefix}.model.json"]
    elif kind == "model":
        if args.supernodes is None or args.q is None:
            raise InputError("gen model needs --supernodes and --q")
        host, model = gen_minor_model(
            args.supernodes,
            args.q,
            seed,
            size_lo=args.size_min,
            size_hi=args.size_max,
            weights=args.weights,
            noise=args.noise,
            cross_noise=args.cross_noise,
        )
        write_graph(f"{prefix}.graph", host)
        write_model(f"{prefix}.model.json", model)
        written = [f"{prefix}.graph", f"{prefix}.model.json"]
    elif kind == "digraph":
        if args.n is None or args.q is None:
            raise InputError("gen digraph needs --n and --q")
        d = gen_digraph(args.n, args.q, seed)
        write_digraph(f"{prefix}.digraph", d)
        written = [f"{prefix}.digraph"]
    elif kind == "tree":
        if args.q is None:
            raise InputError("gen tree needs --q")
        labels = args.labels if args.labels == "random" else int(args.labels)
        tree = gen_tree(
            args.shape,
            args.q,
            seed,
            leaves=args.leaves,
            branch=args.branch,
            handle=args.handle,
            internal=args.internal,
            labels=labels,
        )
        write_tree(f"{prefix}.tree", tree)
        written = [f"{prefix}.tree"]
    elif kind == "favorable":
        if args.q is None:
            raise InputError("gen favorable needs --q")
        pattern = parse_pattern(args.pattern)
        host, model, x_sets, y_sets = gen_favorable_subdivision_instance(
            pattern, args.q, args.gamma_size, seed, y_extra=args.y_extra
        )
        write_graph(f"{prefix}.graph", host)
        write_model(f"{prefix}.model.json", model, x_sets=x_sets, y_sets=y_sets)
        written = [f"{prefix}.graph", f"{prefix}.model.json"]
    else:
        raise InputError(f"unknown generator kind {kind!r}")
    report = RunReport(
        command="gen", parameters={"kind": kind}, seed=seed, outcome="files"
    )
    report.extra = [f"wrote: {p}" for p in written]
    report.emit()
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.model and not args.witness:
        host = read_graph(args.graph)
        model, _ = read_model(args.model, host)
        rep = validate_minor_model(model)
        report = RunReport(
            command="verify",
            parameters={"model": args.model},
            outcome="valid" if rep.ok else "invalid",
        )
        report.extra = [f"violation: {v}" for v in rep.violations]
        report.time_ms = 1000 * (time.perf_counter() - t0)
        report.emit()
        return 0 if rep.ok else 2

    if not args.witness:
        raise InputError("verify needs --witness (or --model for model validation)")
    if args.tree:
        tree = read_tree(args.tree)
        sel = read_selection(args.witness)
        check = verify_selection_report(tree, sel)
        report = RunReport(
            command="verify",
            parameters={"witness": args.witness, "kind": "selection"},
            outcome="valid" if check.ok else "invalid",
        )
        if check.vacuous:
            report.extra.append("triples: vacuous (fewer than 3 leaves)")
        report.extra += [f"violation: {v}" for v in check.issues]
        report.time_ms = 1000 * (time.perf_counter() - t0)
        report.emit()
        return 0 if check.ok else 2

    if args.digraph:
        host = read_digraph(args.digraph)
    elif args.graph:
        host = read_graph(args.graph)
    else:
        raise InputError("verify needs --graph, --digraph, or --tree for the host")
    witness = read_witness(args.witness, host)
    if isinstance(witness, CycleWitness):
        issues = cycle_witness_report(witness)
    elif isinstance(witness, SubdivisionWitness):
        issues = subdivision_witness_report(witness)
    else:
        raise InputError("unknown witness type")
    report = RunReport(
        command="verify",
        parameters={"witness": args.witness},
        outcome="valid" if not issues else "invalid",
    )
    report.extra = [f"violation: {v}" for v in issues]
    report.time_ms = 1000 * (time.perf_counter() - t0)
    report.emit()
    return 0 if not issues else 2


def _parse_q_range(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
        if lo < 2 or hi < lo:
            raise InputError(f"bad q range {spec!r}")
        return list(range(lo, hi + 1))
    q = int(spec)
    if q < 2:
        raise InputError("q must be at least 2")
    return [q]


def cmd_bench(args) -> int:
    qs = _parse_q_range(args.q)
    seed = _resolve_seed(args)
    fracs = [float(f) for f in args.fracs.split(",")]
    print(
        f"{'q':>3} {'n':>4} {'n/thresh':>9} {'attempt-ok':>11} "
        f"{'finder-ok':>10} {'mean-ms':>8}"
    )
    for q in qs:
        threshold = math.ceil(2 * q * math.log(q))
        sizes = sorted({max(2, round(f * threshold)) for f in fracs})
        for n in sizes:
            attempt_ok = 0
            finder_ok = 0
            total = 0.0
            for inst in range(args.instances):
                d = gen_digraph(n, q, seed=(seed + 1000003 * inst) % (1 << 63))
                t0 = time.perf_counter()
                try:
                    find_zero_cycle_randomized(d, seed=seed + inst, max_attempts=1)
                    attempt_ok += 1
                    finder_ok += 1
                except SearchFailure:
                    try:
                        find_zero_cycle_randomized(
                            d, seed=seed + inst, max_attempts=default_max_attempts(n)
                        )
                        finder_ok += 1
                    except SearchFailure:
                        pass
                total += time.perf_counter() - t0
            print(
                f"{q:>3} {n:>4} {n / threshold:>9.2f} "
                f"{attempt_ok / args.instances:>11.3f} "
                f"{finder_ok / args.instances:>10.3f} "
                f"{1000 * total / args.instances:>8.2f}"
            )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="divgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find-cycle", help="cycle of length divisible by q from a minor model")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--use-all", action="store_true", help="use every branch-set pair")
    p.add_argument("--out")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_find_cycle)

    p = sub.add_parser("zero-sum", help="zero-sum directed cycle in a complete digraph")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--digraph", help="read the instance instead of generating it")
    p.add_argument("--prime", action="store_true", help="force the deterministic finder")
    p.add_argument("--seed", type=int)
    p.add_argument("--exhaustive", action="store_true", help="cross-check with brute force")
    p.add_argument("--out")
    p.add_argument("--instance-out", help="also write the generated digraph")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_zero_sum)

    p = sub.add_parser("tree-select", help="select k same-residue leaves in a labeled tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tree_select)

    p = sub.add_parser("build-subdivision", help="assemble a divisible subdivision")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", required=True, help="model JSON with an X/Y partition")
    p.add_argument("--pattern", required=True, help="e.g. cycle:3, path:2, edge")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gamma-size", type=int, required=True)
    p.add_argument("--k-mode", choices=("degree", "edges"), default="degree")
    p.add_argument("--budget", type=int, help="monochromatic-search node budget")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build_subdivision)

    p = sub.add_parser("gen", help="write seeded instances to files")
    p.add_argument("kind", choices=("identity", "model", "digraph", "tree", "favorable"))
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--seed", type=int)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--supernodes", type=int)
    p.add_argument("--size-min", type=int, default=1)
    p.add_argument("--size-max", type=int, default=1)
    p.add_argument("--weights", choices=("unit", "uniform"), default="unit")
    p.add_argument("--noise", type=int, default=0)
    p.add_argument("--cross-noise", type=int, default=0)
    p.add_argument("--shape", choices=("star", "caterpillar", "broom", "random"))
    p.add_argument("--leaves", type=int)
    p.add_argument("--branch", type=int)
    p.add_argument("--handle", type=int)
    p.add_argument("--internal", type=int)
    p.add_argument("--labels", default="random")
    p.add_argument("--pattern", default="cycle:3")
    p.add_argument("--gamma-size", type=int, default=8)
    p.add_argument("--y-extra", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-check a witness file against its instance")
    p.add_argument("--witness")
    p.add_argument("--graph")
    p.add_argument("--digraph")
    p.add_argument("--tree")
    p.add_argument("--model", help="validate a model file instead of a witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="success-rate sweep of the randomized finder")
    p.add_argument("--q", required=True, help="single value or range like 2..8")
    p.add_argument("--fracs", default="0.25,0.5,0.75,1.0", help="fractions of the threshold size")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SearchFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
