"""Command-line interface: ``gbsim {haf,prob,sample,compare,haar}``.

Numbers are printed with 15 significant digits (``%.15g``: plain notation for
moderate exponents, lowercase ``e`` otherwise). Exit codes: 0 success, 2 bad
input or domain error, 3 resource cap exceeded. With ``--json`` errors are also
reported on stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

import numpy as np

from . import io
from .ensembles import coe_matrix, haar_unitary
from .errors import GBSError, ParseError, RankDeficiencyWarning, ResourceError
from .hafnian import hafnian_pmp, hafnian_recursive
from .probability import (
    PpeDistributionSpec,
    generation_ratio,
    pattern_probability_general,
    pattern_probability_squeezed,
    pfbs_probability,
    ppe_distribution,
    sampling_space_sizes,
)
from .sampler import build_distribution, draw
from .state import InterferometerUnitary, SqueezeParams, output_state, warn_if_rank_deficient

EXIT_INPUT = 2
EXIT_RESOURCE = 3


def fmt(x) -> str:
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:.15g}"
    sign = "+" if x.imag >= 0 else "-"
    return f"{x.real:.15g}{sign}{abs(x.imag):.15g}j"


def _number_list(values, kind):
    out = []
    for v in values:
        for part in str(v).split(","):
            if part.strip():
                try:
                    out.append(kind(part))
                except ValueError as exc:
                    raise ParseError(f"cannot parse {part!r} as {kind.__name__}") from exc
    return out


def _interferometer(args, modes):
    if args.unitary and args.haar_seed is not None:
        raise ParseError("give either --unitary or --haar-seed, not both")
    if args.unitary:
        payload = io.read(args.unitary)
        t = io.unitary_from_json(payload)
        return t, payload.get("seed")
    if args.haar_seed is not None:
        return haar_unitary(modes, args.haar_seed), args.haar_seed
    return InterferometerUnitary(np.eye(modes)), None


def _squeezing(values, modes):
    r = _number_list(values, float)
    if len(r) > modes:
        raise ParseError(f"{len(r)} squeezing values given for {modes} modes")
    # unlisted modes are left unsqueezed
    return SqueezeParams(r + [0.0] * (modes - len(r)))


def cmd_haf(args):
    m = io.matrix_from_json(io.read(args.matrix))
    value = hafnian_pmp(m, max_dim=args.max_dim)
    print(fmt(value))
    if args.check:
        other = hafnian_recursive(m, max_dim=args.max_dim)
        print(f"recursive {fmt(other)}")
        print(f"difference {fmt(abs(value - other))}")


def cmd_prob(args):
    pattern = _number_list(args.pattern, int)
    modes = len(pattern)
    params = _squeezing(args.squeeze, modes)
    t, seed = _interferometer(args, modes)
    warn_if_rank_deficient(params, sum(pattern))
    if args.method == "general":
        p = pattern_probability_general(output_state(t, params), pattern, max_dim=args.max_dim)
    else:
        p = pattern_probability_squeezed(t, params, pattern, max_dim=args.max_dim)
    print(fmt(p))
    if args.json:
        record = {"pattern": pattern, "probability": p, "squeeze": params.r.tolist(),
                  "unitary_seed": seed, "method": args.method}
        print(json.dumps(record, sort_keys=True))


def cmd_sample(args):
    params = _squeezing(args.squeeze, args.modes)
    t, seed = _interferometer(args, args.modes)
    if args.draws < 0:
        raise ParseError("--draws must be >= 0")
    if args.draws and args.sample_seed is None:
        raise ParseError("--sample-seed is required when drawing samples")
    table = build_distribution(t, params, args.cutoff, args.max_per_mode, unitary_seed=seed, max_dim=args.max_dim)
    payload = {"table": io.table_to_json(table)}
    if args.draws:
        samples = draw(table, args.draws, args.sample_seed)
        payload["samples"] = io.samples_to_json(samples, args.draws, args.sample_seed)
    text = io.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compare(args):
    n = args.photons
    k = args.squeezers if args.squeezers is not None else n * n
    # default squeezing puts the mean photon number K sinh^2 r at N
    r = args.squeeze if args.squeeze is not None else math.asinh(math.sqrt(n / k))
    exact, asymptotic = generation_ratio(k, n)
    gbs, sbs = sampling_space_sizes(n)
    rows = [
        ("photons_N", n),
        ("squeezers_K", k),
        ("squeeze_r", r),
        ("P_gbs", ppe_distribution(PpeDistributionSpec(k, r, n))),
        ("P_prob", pfbs_probability(k, n, r)),
        ("ratio_exact", exact),
        ("ratio_asymptotic", asymptotic),
        ("space_gbs", gbs),
        ("space_sbs", sbs),
    ]
    for name, value in rows:
        print(f"{name:<18}{value if isinstance(value, int) else fmt(value)}")


def cmd_haar(args):
    if args.coe:
        payload = {"modes": args.modes, "seed": args.seed, "coe": io.matrix_to_json(coe_matrix(args.modes, args.seed))}
    else:
        payload = io.unitary_to_json(haar_unitary(args.modes, args.seed), seed=args.seed)
    text = io.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gbsim", description="Exact Gaussian boson sampling at desk scale")
    parser.add_argument("--json", action="store_true", help="machine-readable output and errors")
    # lets --json also follow the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def cap(p):
        p.add_argument("--max-dim", type=int, default=None, help="hafnian dimension cap (default 16)")

    p = sub.add_parser("haf", parents=[common], help="hafnian of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--check", action="store_true", help="also run the recursive algorithm")
    cap(p)
    p.set_defaults(func=cmd_haf)

    def experiment(p):
        p.add_argument("--unitary", help="interferometer file {modes, t}")
        p.add_argument("--haar-seed", type=int, help="draw a Haar interferometer with this seed")
        p.add_argument("--squeeze", nargs="+", required=True, help="squeezing per input mode; missing modes get 0")

    p = sub.add_parser("prob", parents=[common], help="probability of one output pattern")
    experiment(p)
    p.add_argument("--pattern", nargs="+", required=True)
    p.add_argument("--method", choices=["squeezed", "general"], default="squeezed")
    cap(p)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("sample", parents=[common], help="probability table and seeded samples")
    p.add_argument("--modes", type=int, required=True)
    experiment(p)
    p.add_argument("--cutoff", type=int, required=True, help="maximum total photon number")
    p.add_argument("--max-per-mode", type=int, default=None)
    p.add_argument("--draws", type=int, default=0)
    p.add_argument("--sample-seed", type=int, default=None)
    p.add_argument("--out")
    cap(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("compare", parents=[common], help="generation probabilities and sampling-space sizes")
    p.add_argument("--photons", type=int, required=True)
    p.add_argument("--squeezers", type=int, default=None, help="default N^2")
    p.add_argument("--squeeze", type=float, default=None, help="default sets K sinh^2 r = N")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("haar", parents=[common], help="emit a seeded Haar unitary (or COE matrix)")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coe", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_haar)
    return parser


def _fail(args, exc, code):
    print(f"gbsim: error: {exc}", file=sys.stderr)
    if getattr(args, "json", False):
        print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RankDeficiencyWarning)
            args.func(args)
        for w in caught:
            print(f"gbsim: warning: {w.message}", file=sys.stderr)
    except ResourceError as exc:
        return _fail(args, exc, EXIT_RESOURCE)
    except (GBSError, ValueError, IndexError, OSError) as exc:
        return _fail(args, exc, EXIT_INPUT)
    return 0


if __name__ == "__main__":
    sys.exit(main())
