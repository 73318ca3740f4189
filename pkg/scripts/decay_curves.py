#!/usr/bin/env python3
"""Sweep word failure rate against problem size and write the decay curves as CSV.

Each output row also carries the per-pair Chernoff bound and the union bound
over all consecutive pairs, so the analytic envelopes can be plotted straight
from the same file. Example:

    python3 scripts/decay_curves.py --n 2..20 --eps 0.05,0.1,0.15 --out decay.csv
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lhzcode import SimConfig, run_sweep
from lhzcode.cli import OUTPUT_COLUMNS, OutputRow, _parse_float_list, _parse_int_list


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", default="2..20", help="logical sizes, e.g. 8 or 2,6,10 or 2..40")
    p.add_argument("--eps", default="0.05,0.1,0.15", help="flip probabilities, comma separated")
    p.add_argument("--decoder", default="majority,bp", help="comma separated decoder names")
    p.add_argument("--graph", default="triangle", choices=("triangle", "planar"))
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--iterations", type=int, default=5, help="message passing rounds for bp")
    p.add_argument("--schedule", default="belief", choices=("belief", "extrinsic"))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=4)
    p.add_argument("--out", default="decay.csv")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    cfg = SimConfig(
        n_values=tuple(_parse_int_list(args.n)),
        eps_values=tuple(_parse_float_list(args.eps)),
        decoders=tuple(args.decoder.split(",")),
        trials=args.trials,
        seed=args.seed,
        graph=args.graph,
        bp_iterations=args.iterations,
        schedule=args.schedule,
    )
    sweep = run_sweep(cfg, threads=args.threads)
    lines = [",".join(OUTPUT_COLUMNS)]
    lines += [OutputRow.from_result(r).csv_line() for r in sweep.rows]
    Path(args.out).write_text("\n".join(lines) + "\n")
    for err in sweep.errors:
        print(f"skipped: {err}", file=sys.stderr)

    # quick terminal read of the same data, one line per (decoder, eps)
    print(f"wrote {len(sweep.rows)} rows to {args.out}")
    for dec in cfg.decoders:
        for eps in cfg.eps_values:
            pts = [r for r in sweep.rows if r.decoder == dec and r.epsilon == eps]
            curve = " ".join(f"{r.n}:{r.p_fail:.4g}" for r in pts)
            print(f"  {dec:8s} eps={eps:<5g} {curve}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
