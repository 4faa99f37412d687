"""Command-line interface.

Subcommands: gen, minimize, verify, pauli, detect, count.  Every file
output gets a run manifest written alongside it; re-running a manifest's
invocation reproduces the outputs bit for bit.  Datasets are
delimiter-separated text; ``--figure`` additionally renders a matplotlib
figure next to them.

Exit codes: 0 success, 2 validation failure, 3 non-convergence, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from chanspoof import chanrep, detect, pauli, rankmin, serialize, spoofing

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4


class _Quiet:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, *args):
        if not self.quiet:
            print(*args)


def _parse_alphas(text: str) -> np.ndarray:
    return np.array([float(x) for x in text.replace(",", " ").split()])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chanspoof",
        description="Spoofing equivalence classes of quantum channels: "
        "generation, rank minimization, verification, and detection.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    common.add_argument("--tol", type=float, default=1e-9, help="validity tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a random channel file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, default=None, help="Kraus rank (default dim^2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("minimize", parents=[common], help="find a minimal-rank class member")
    p.add_argument("input", help="channel file")
    p.add_argument("--epsilon", type=float, default=1e-10, help="relative pivot tolerance")
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--mode", choices=spoofing.MODES, default="paper-strict")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="initial off-diagonal perturbation scale")
    p.add_argument("--out", required=True, help="minimized channel file")
    p.add_argument("--trace", default=None, help="convergence log (CSV)")
    p.add_argument("--figure", default=None, help="render the convergence figure here")

    p = sub.add_parser("verify", parents=[common], help="check class membership of two channels")
    p.add_argument("path_a")
    p.add_argument("path_b")

    p = sub.add_parser("pauli", parents=[common], help="Pauli channel tools")
    p.add_argument("action", choices=["reduce", "tetra", "spoof"])
    p.add_argument("--alphas", default=None, help="comma-separated coefficients")
    p.add_argument("--qubits", type=int, default=None, help="random channel on N qubits")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--type", dest="spoof_type", type=int, choices=[1, 2], default=1)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--resolution", type=int, default=25)
    p.add_argument("--out", default=None)
    p.add_argument("--figure", default=None, help="render the tetrahedron figure here")

    p = sub.add_parser("detect", parents=[common], help="run the detection experiments")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--bases", type=int, default=50)
    p.add_argument("--states", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="detection report file")
    p.add_argument("--figure", default=None, help="render the per-basis statistic figure here")

    p = sub.add_parser("count", parents=[common], help="free-parameter counts of spoofing families")
    p.add_argument("kind", choices=["type1", "type2", "type1-pauli", "type2-pauli"])
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--mode", choices=spoofing.MODES, default="paper-strict")
    p.add_argument("--numeric", action="store_true",
                   help="also print the numeric constraint-nullity value")
    return parser


def _load_kraus(path: str):
    dim, rep, entries = serialize.load_channel(path)
    if rep == "kraus":
        return dim, entries
    if rep == "superop":
        entries = chanrep.reshuffle(entries)
    # accept minimized outputs, whose smallest eigenvalues sit at the
    # convergence tolerance slightly below zero
    return dim, chanrep.choi_to_kraus(entries, tol=1e-8)


def _cmd_gen(args, say) -> int:
    rank = args.rank if args.rank is not None else args.dim**2
    ops = chanrep.random_channel(args.dim, rank, args.seed)
    serialize.save_channel(args.out, args.dim, "kraus", ops)
    serialize.write_manifest(
        args.out, "gen", {"dim": args.dim, "rank": rank, "seed": args.seed}
    )
    say(f"wrote rank-{rank} channel of dimension {args.dim} to {args.out}")
    return EXIT_OK


def _cmd_minimize(args, say) -> int:
    dim, j = serialize.load_channel_as_choi(args.input)
    cfg = rankmin.MinimizerConfig(
        epsilon=args.epsilon,
        max_iters=args.max_iters,
        mode=args.mode,
        seed=args.seed,
        init_perturbation=args.perturb,
    )
    j_min, trace = rankmin.sinkhorn_minimize(j, cfg)
    serialize.save_channel(args.out, dim, "choi", j_min)
    params = {
        "input": args.input,
        "epsilon": args.epsilon,
        "max_iters": args.max_iters,
        "mode": args.mode,
        "seed": args.seed,
        "perturb": args.perturb,
    }
    serialize.write_manifest(args.out, "minimize", params)
    if args.trace:
        serialize.write_convergence_log(args.trace, trace)
        serialize.write_manifest(args.trace, "minimize", params)
    if args.figure:
        from chanspoof import figures

        figures.convergence_figure(trace, args.figure)
    rank = chanrep.kraus_rank(j_min, tol=args.epsilon)
    report = spoofing.same_class(j, j_min)
    say(
        f"final rank {rank} after {trace.iterations} iterations; "
        f"in-class residual {report.max_block_deviation:.3e}"
    )
    if not trace.converged:
        print(
            f"warning: not converged after {trace.iterations} iterations "
            f"(pivot {trace.pivots[-1]:.3e}); best iterate written",
            file=sys.stderr,
        )
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def _cmd_verify(args, say) -> int:
    dim_a, ja = serialize.load_channel_as_choi(args.path_a)
    dim_b, jb = serialize.load_channel_as_choi(args.path_b)
    if dim_a != dim_b:
        print(f"dimension mismatch: {dim_a} vs {dim_b}", file=sys.stderr)
        return EXIT_VALIDATION
    report = spoofing.same_class(ja, jb, tol=max(args.tol, 1e-10))
    say(
        f"same_class={report.same_class} choi_differ={report.choi_differ} "
        f"max_block_deviation={report.max_block_deviation:.3e} "
        f"max_distribution_deviation={report.max_distribution_deviation:.3e}"
    )
    return EXIT_OK if report.same_class else EXIT_VALIDATION


def _pauli_input(args) -> pauli.PauliChannel:
    if args.alphas is not None:
        return pauli.pauli_channel(_parse_alphas(args.alphas))
    if args.qubits is not None:
        rng = np.random.default_rng(args.seed)
        return pauli.pauli_channel(rng.dirichlet(np.ones(4**args.qubits)))
    raise ValueError("provide --alphas or --qubits")


def _cmd_pauli(args, say) -> int:
    channel = _pauli_input(args)
    if args.action == "reduce":
        reduced = pauli.analytic_reduce(channel)
        r_in = chanrep.kraus_rank(channel.choi())
        r_out = chanrep.kraus_rank(reduced.choi())
        say(f"rank {r_in} -> {r_out}")
        say("reduced alphas: " + " ".join(repr(float(a)) for a in reduced.alphas))
        if args.out:
            serialize.save_channel(args.out, reduced.dim, "kraus", reduced.kraus_ops())
            serialize.write_manifest(
                args.out, "pauli",
                {"action": "reduce", "alphas": channel.alphas.tolist(), "seed": args.seed},
            )
        return EXIT_OK
    if args.action == "tetra":
        rows = pauli.tetrahedron_data(channel.alphas, resolution=args.resolution)
        if not args.out:
            print("tetra requires --out", file=sys.stderr)
            return EXIT_VALIDATION
        serialize.write_dataset(
            args.out,
            ["label", "alpha0", "alpha1", "alpha2", "alpha3", "x", "y", "z"],
            rows,
        )
        serialize.write_manifest(
            args.out, "pauli",
            {"action": "tetra", "alphas": channel.alphas.tolist(),
             "resolution": args.resolution},
        )
        if args.figure:
            from chanspoof import figures

            figures.tetrahedron_figure(rows, args.figure)
        say(f"wrote {len(rows)} dataset rows to {args.out}")
        return EXIT_OK
    # spoof
    if args.spoof_type == 1:
        out = pauli.pauli_type1(channel.alphas, args.beta)
    else:
        out = pauli.pauli_type2(channel.alphas, args.beta, args.gamma)
    say("spoofed alphas: " + " ".join(repr(float(a)) for a in out))
    if args.out:
        spoofed = pauli.pauli_channel(out)
        serialize.save_channel(args.out, spoofed.dim, "kraus", spoofed.kraus_ops())
        serialize.write_manifest(
            args.out, "pauli",
            {"action": "spoof", "type": args.spoof_type, "beta": args.beta,
             "gamma": args.gamma, "alphas": channel.alphas.tolist()},
        )
    return EXIT_OK


def _cmd_detect(args, say) -> int:
    dim_a, ka = _load_kraus(args.path_a)
    dim_b, kb = _load_kraus(args.path_b)
    if dim_a != dim_b:
        print(f"dimension mismatch: {dim_a} vs {dim_b}", file=sys.stderr)
        return EXIT_VALIDATION
    fixed = detect.fixed_basis_test(ka, kb, states=args.states, shots=args.shots, seed=args.seed)
    random = detect.random_basis_detect(ka, kb, bases=args.bases, shots=args.shots, seed=args.seed)
    say(
        f"fixed basis: detected={fixed.detected} statistic={fixed.statistic:.4g} "
        f"threshold={fixed.threshold:.4g} exact_deviation={fixed.exact_deviation:.3e}"
    )
    say(
        f"random bases ({random.bases_used}): detected={random.detected} "
        f"statistic={random.statistic:.4g} threshold={random.threshold:.4g}"
    )
    if args.out:
        serialize.write_detection_report(args.out, random)
        serialize.write_detection_report(args.out + ".fixed.json", fixed)
        serialize.write_manifest(
            args.out, "detect",
            {"path_a": args.path_a, "path_b": args.path_b, "shots": args.shots,
             "bases": args.bases, "states": args.states, "seed": args.seed},
        )
    if args.figure:
        from chanspoof import figures

        figures.detection_figure(random, args.figure)
    return EXIT_OK


def _cmd_count(args, say) -> int:
    if args.kind in ("type1", "type2"):
        if args.dim is None:
            print(f"{args.kind} needs --dim", file=sys.stderr)
            return EXIT_VALIDATION
        size = args.dim
    else:
        if args.qubits is None:
            print(f"{args.kind} needs --qubits", file=sys.stderr)
            return EXIT_VALIDATION
        size = args.qubits
    value = spoofing.count_free_params(args.kind, size, mode=args.mode)
    print(value)
    if args.numeric and args.kind == "type2":
        print(spoofing.numeric_class_dimension(args.dim, mode=args.mode))
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "minimize": _cmd_minimize,
    "verify": _cmd_verify,
    "pauli": _cmd_pauli,
    "detect": _cmd_detect,
    "count": _cmd_count,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    say = _Quiet(args.quiet)
    try:
        return _COMMANDS[args.command](args, say)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
