"""Command line front end: graph inspection, one-shot decoding, sweeps, bounds.

Exit codes: 0 on success, 1 on usage errors (bad flags or values), 2 when a
decoder refuses a cell on capacity grounds. Output rows have a fixed column
order and %.6g float formatting, so identical invocations give identical
bytes and --threads never changes the output.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from dataclasses import dataclass

from .channel import NoiseModel, channel_prior
from .codes import as_bits, index_pair, logical_from_consecutive, num_logical, pair_table
from .decoders import SCHEDULES, bp_decode, epsilon_star, majority_vote_decode, mle_decode
from .errors import CapacityError, LhzError
from .factor_graph import hamming_7_4, planar_lhz_graph, triangle_graph
from .sim import (
    DECODER_IDS,
    GRAPH_KINDS,
    SimConfig,
    SimResult,
    chernoff_bound,
    graph_for,
    run_sweep,
    union_bound,
)

__all__ = ["OUTPUT_COLUMNS", "OutputRow", "main", "build_parser"]

OUTPUT_COLUMNS = (
    "decoder",
    "graph",
    "n",
    "epsilon",
    "iterations",
    "trials",
    "failures",
    "p_fail",
    "stderr",
    "chernoff",
    "union_bound",
    "seed",
)


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


@dataclass(frozen=True)
class OutputRow:
    """One emitted row, in the pinned column order."""

    decoder: str
    graph: str
    n: int
    epsilon: float
    iterations: int
    trials: int
    failures: int
    p_fail: float
    stderr: float
    chernoff: float
    union_bound: float
    seed: int

    @classmethod
    def from_result(cls, r: SimResult) -> "OutputRow":
        return cls(
            decoder=r.decoder,
            graph=r.graph,
            n=r.n,
            epsilon=r.epsilon,
            iterations=r.iterations,
            trials=r.trials,
            failures=r.failures,
            p_fail=r.p_fail,
            stderr=r.stderr,
            chernoff=r.chernoff,
            union_bound=r.union_bound,
            seed=r.seed,
        )

    def csv_line(self) -> str:
        return ",".join(
            (
                self.decoder,
                self.graph,
                str(self.n),
                _fmt(self.epsilon),
                str(self.iterations),
                str(self.trials),
                str(self.failures),
                _fmt(self.p_fail),
                _fmt(self.stderr),
                _fmt(self.chernoff),
                _fmt(self.union_bound),
                str(self.seed),
            )
        )

    @classmethod
    def from_csv_line(cls, line: str) -> "OutputRow":
        f = line.rstrip("\n").split(",")
        if len(f) != len(OUTPUT_COLUMNS):
            raise ValueError(f"expected {len(OUTPUT_COLUMNS)} fields, got {len(f)}")
        return cls(
            decoder=f[0],
            graph=f[1],
            n=int(f[2]),
            epsilon=float(f[3]),
            iterations=int(f[4]),
            trials=int(f[5]),
            failures=int(f[6]),
            p_fail=float(f[7]),
            stderr=float(f[8]),
            chernoff=float(f[9]),
            union_bound=float(f[10]),
            seed=int(f[11]),
        )

    def json_line(self) -> str:
        obj = {
            "decoder": self.decoder,
            "graph": self.graph,
            "n": self.n,
            "epsilon": float(_fmt(self.epsilon)),
            "iterations": self.iterations,
            "trials": self.trials,
            "failures": self.failures,
            "p_fail": float(_fmt(self.p_fail)),
            "stderr": float(_fmt(self.stderr)),
            "chernoff": float(_fmt(self.chernoff)),
            "union_bound": float(_fmt(self.union_bound)),
            "seed": self.seed,
        }
        return json.dumps(obj)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this project reserves 2 for capacity."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Either "8", "2,6,10", or an inclusive range "2..40"."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(p) for p in text.split(","))


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(p) for p in text.split(","))


def _bits_str(a) -> str:
    return "".join(str(int(b)) for b in a)


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lhzcode", description="pairwise-parity code toolkit")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("graph", help="print a constraint graph")
    g.add_argument("kind", choices=("triangle", "planar", "hamming"))
    g.add_argument("--n", type=int, help="logical size (triangle/planar)")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_graph)

    d = sub.add_parser("decode", help="decode one observed word")
    d.add_argument("word", help="observed physical word as a bit string")
    d.add_argument("--decoder", choices=sorted(DECODER_IDS), default="bp")
    d.add_argument("--eps", type=float, default=0.1, help="channel flip probability")
    d.add_argument("--n", type=int, help="logical size, checked against the word length")
    d.add_argument("--graph", choices=GRAPH_KINDS, default="triangle")
    d.add_argument("--iterations", type=int, default=5)
    d.add_argument("--schedule", choices=SCHEDULES, default="belief")
    d.add_argument("--include-direct", action="store_true", help="count the observed bit as a vote")
    d.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", help="Monte Carlo failure-rate sweep")
    s.add_argument("--n", required=True, help='logical sizes: "8", "2,6,10", or "2..40"')
    s.add_argument("--eps", required=True, help='flip probabilities, comma separated')
    s.add_argument("--decoder", default="bp", help="comma separated subset of majority,bp,mle")
    s.add_argument("--trials", type=int, default=5000)
    s.add_argument("--seed", type=int, default=None, help="omit for a fresh random seed (echoed on stderr)")
    s.add_argument("--graph", choices=GRAPH_KINDS, default="triangle")
    s.add_argument("--iterations", type=int, default=5)
    s.add_argument("--schedule", choices=SCHEDULES, default="belief")
    s.add_argument("--include-direct", action="store_true")
    s.add_argument("--all-zero", action="store_true", help="send the all-zero logical word instead of random ones")
    s.add_argument("--shared-noise", action="store_true", help="same noise for every decoder")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    s.add_argument("--out", help="write rows here instead of stdout")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bound", help="analytic failure bounds")
    b.add_argument("--n", required=True, help='logical sizes: "8", "2,6,10", or "2..40"')
    b.add_argument("--eps", required=True, help="flip probabilities, comma separated")
    b.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    b.add_argument("--out", help="write rows here instead of stdout")
    b.set_defaults(func=cmd_bound)

    return p


def cmd_graph(args) -> int:
    if args.kind == "hamming":
        fg = hamming_7_4()
        pairs = None
    else:
        if args.n is None:
            raise ValueError(f"graph {args.kind} needs --n")
        fg = triangle_graph(args.n) if args.kind == "triangle" else planar_lhz_graph(args.n)
        pairs = pair_table(args.n)
    if args.format == "json":
        obj = {"kind": args.kind, "n_vars": fg.n_vars, "n_checks": fg.n_checks}
        if pairs is not None:
            obj["n"] = args.n
            obj["pairs"] = [list(pq) for pq in pairs]
        obj["checks"] = [list(c) for c in fg.checks]
        print(json.dumps(obj))
    else:
        print(f"kind: {args.kind}")
        if pairs is not None:
            print(f"n: {args.n}")
        print(f"n_vars: {fg.n_vars}")
        print(f"n_checks: {fg.n_checks}")
        if pairs is not None:
            print("pairs: " + " ".join(f"({i},{j})" for i, j in pairs))
        for ci, c in enumerate(fg.checks):
            print(f"check {ci}: " + " ".join(str(v) for v in c))
    return 0


def cmd_decode(args) -> int:
    word = as_bits(args.word)
    n = num_logical(word.size)
    if args.n is not None and args.n != n:
        raise ValueError(f"--n {args.n} does not match word length {word.size} (implies n={n})")
    if not 0.0 <= args.eps <= 0.5:
        raise ValueError(f"--eps must lie in [0, 1/2], got {args.eps}")
    model = NoiseModel(args.eps)
    if args.decoder == "majority":
        out = majority_vote_decode(word, include_direct=args.include_direct)
    elif args.decoder == "mle":
        out = mle_decode(word, model)
    else:
        fg = graph_for(args.graph, n)
        out = bp_decode(fg, channel_prior(word, model), iterations=args.iterations,
                        schedule=args.schedule, observed=word)
    print(f"decoder: {args.decoder}")
    print(f"n: {n}")
    print(f"observed: {_bits_str(word)}")
    print(f"word: {_bits_str(out.word)}")
    print(f"consecutive: {_bits_str(out.consecutive)}")
    print(f"logical: {_bits_str(logical_from_consecutive(out.consecutive))}")
    print(f"iterations: {out.iterations}")
    print(f"converged: {'yes' if out.converged else 'no'}")
    if out.degenerate:
        print("degenerate: yes")
    if out.beliefs is not None:
        print("beliefs:")
        for v in range(word.size):
            i, j = index_pair(v, n)
            print(f"  g({i},{j}): p0={_fmt(out.beliefs[v, 0])} p1={_fmt(out.beliefs[v, 1])}")
    return 0


def cmd_simulate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(63)
        print(f"seed: {seed}", file=sys.stderr)
    if args.threads < 1:
        raise ValueError(f"--threads must be positive, got {args.threads}")
    config = SimConfig(
        n_values=_parse_int_list(args.n),
        eps_values=_parse_float_list(args.eps),
        decoders=tuple(args.decoder.split(",")),
        trials=args.trials,
        seed=seed,
        graph=args.graph,
        bp_iterations=args.iterations,
        schedule=args.schedule,
        include_direct=args.include_direct,
        all_zero=args.all_zero,
        shared_noise=args.shared_noise,
    )
    sweep = run_sweep(config, threads=args.threads)
    stream_, close = _open_out(args.out)
    try:
        if args.format == "csv":
            print(",".join(OUTPUT_COLUMNS), file=stream_)
            for r in sweep.rows:
                print(OutputRow.from_result(r).csv_line(), file=stream_)
        else:
            for r in sweep.rows:
                print(OutputRow.from_result(r).json_line(), file=stream_)
    finally:
        if close:
            stream_.close()
    for e in sweep.errors:
        print(f"error: {e.decoder} n={e.n} eps={_fmt(e.epsilon)}: {e.message}", file=sys.stderr)
    return 2 if sweep.errors else 0


def cmd_bound(args) -> int:
    ns = _parse_int_list(args.n)
    eps = _parse_float_list(args.eps)
    for n in ns:
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
    for e in eps:
        if not 0.0 <= e <= 0.5:
            raise ValueError(f"--eps must lie in [0, 1/2], got {e}")
    stream_, close = _open_out(args.out)
    try:
        if args.format == "csv":
            print("n,epsilon,eps_star,chernoff,union_bound", file=stream_)
            for n in ns:
                for e in eps:
                    print(
                        f"{n},{_fmt(e)},{_fmt(epsilon_star(e))},{_fmt(chernoff_bound(n, e))},{_fmt(union_bound(n, e))}",
                        file=stream_,
                    )
        else:
            for n in ns:
                for e in eps:
                    print(
                        json.dumps(
                            {
                                "n": n,
                                "epsilon": float(_fmt(e)),
                                "eps_star": float(_fmt(epsilon_star(e))),
                                "chernoff": float(_fmt(chernoff_bound(n, e))),
                                "union_bound": float(_fmt(union_bound(n, e))),
                            }
                        ),
                        file=stream_,
                    )
    finally:
        if close:
            stream_.close()
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LhzError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
