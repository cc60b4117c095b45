"""Command-line front end.

Every invocation emits exactly one JSON document on stdout:

    {"command": ..., "inputs": ..., "results": ..., "version": ..., "elapsed_ms": ...}

Diagnostics go to stderr.  Exit codes: 0 success, 1 usage error,
2 invalid input, 3 internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from . import balance, construct, patterns, permdisc, symmetry
from .core import (
    CyclicInterval,
    ParseError,
    components,
    parse_permutation,
    parse_set,
    serialize_permutation,
)

BIGINT_CUTOFF = 1 << 53  # larger integers become decimal strings


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 1
    def error(self, message):
        raise UsageError(message)


def rational(x: Fraction) -> dict:
    return {"num": _intj(x.numerator), "den": _intj(x.denominator),
            "float": float(x)}


def _intj(v: int):
    return str(v) if abs(v) > BIGINT_CUTOFF else v


def interval_json(iv: CyclicInterval) -> dict:
    return {"start": iv.start, "length": iv.length}


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return args.threads
    env = os.environ.get("QUASIPERM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"bad QUASIPERM_THREADS: {env!r}") from exc
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="quasiperm",
                  description="Discrepancy and pattern statistics on Z_n.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command")

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--csv", action="store_true",
                       help="flat CSV instead of JSON")
        return p

    p = add("analyze-set", help="interval discrepancy and balance of a set")
    p.add_argument("--set", required=True, metavar="FILE")
    p.add_argument("--k", type=int, default=None,
                   help="also report the dilation discrepancy n*D(kS)")
    p.add_argument("--alpha", type=float, default=0.5)

    p = add("analyze-perm", help="permutation discrepancy report")
    p.add_argument("--perm", required=True, metavar="FILE")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--sample", type=int, default=None, metavar="N",
                   help="sampled lower bound from N random interval pairs")
    p.add_argument("--seed", type=int, default=0)

    p = add("pattern-count", help="pattern occurrence counts")
    p.add_argument("--perm", required=True, metavar="FILE")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--pattern", default=None,
                   help="one-line pattern, e.g. '0 2 1'; default: full profile")

    p = add("matrix", help="pattern inclusion matrices and spectra")
    p.add_argument("--m", type=int, required=True)

    p = add("construct", help="digit-reversal product permutation")
    p.add_argument("--n", type=int, required=True, help="base")
    p.add_argument("--k", type=int, required=True, help="number of factors")

    p = add("random-stats", help="Monte Carlo discrepancy statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)

    p = add("invdist", help="inversion-count distribution over S_n")
    p.add_argument("--n", type=int, required=True)

    p = add("search-symmetric", help="search for perfectly symmetric permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help="node budget; required for n above 10")

    p = add("certify", help="balance certificate with implication checks")
    p.add_argument("--set", required=True, metavar="FILE")
    p.add_argument("--seed", type=int, default=0)

    return top


def cmd_analyze_set(args) -> dict:
    s = parse_set(_read(args.set))
    value, witness = balance.max_interval_discrepancy(s)
    count, parts = components(s)
    stat, k_at = balance.eigenvalue_bound_profile(s, args.alpha)
    out = {
        "n": s.n,
        "size": len(s.members),
        "scaled_D": value,
        "witness": interval_json(witness),
        "eps_B": rational(Fraction(value, s.n * s.n)) if s.n else rational(Fraction(0)),
        "components": count,
        "component_parts": [interval_json(p) for p in parts],
        "eigenvalue_statistic": {"alpha": args.alpha, "value": stat, "k": k_at},
        "sum_statistic": balance.sum_statistic(s),
    }
    if args.k is not None:
        out["multiple_scaled_D"] = balance.multiple_discrepancy(s, args.k)
    return out


def cmd_analyze_perm(args) -> dict:
    sigma = parse_permutation(_read(args.perm))
    if args.sample is not None:
        value = permdisc.sampled_discrepancy_lower_bound(
            sigma, args.sample, args.seed)
        return {
            "n": sigma.n,
            "mode": "sample",
            "samples": args.sample,
            "scaled_D_lower_bound": value,
        }
    rep = permdisc.perm_discrepancy(sigma)
    return {
        "n": rep.n,
        "mode": "exact",
        "scaled_D": rep.scaled_D,
        "witness_I": interval_json(rep.witness_I),
        "witness_J": interval_json(rep.witness_J),
        "scaled_d": rep.scaled_d,
        "witness_d": [interval_json(iv) for iv in rep.witness_d],
        "scaled_d_prime": rep.scaled_d_prime,
        "witness_d_prime": [interval_json(iv) for iv in rep.witness_d_prime],
    }


def cmd_pattern_count(args) -> dict:
    sigma = parse_permutation(_read(args.perm))
    if args.pattern is not None:
        tau = parse_permutation(args.pattern)
        if tau.n != args.m:
            raise ParseError(f"pattern has order {tau.n}, expected {args.m}")
        return {
            "n": sigma.n,
            "m": args.m,
            "pattern": list(tau.images),
            "count": _intj(patterns.count_pattern(sigma, tau)),
        }
    prof = patterns.profile(sigma, args.m)
    return {
        "n": sigma.n,
        "m": args.m,
        "patterns": [list(t.images) for t in patterns.patterns_of_order(args.m)],
        "counts": [_intj(c) for c in prof.counts],
        "centered_norm_sq": rational(prof.centered_norm_sq()),
    }


def cmd_matrix(args) -> dict:
    mats = patterns.build_pattern_matrices(args.m)
    lam = patterns.top_eigenvalue(mats.A)
    out = {
        "m": args.m,
        "B": mats.B.tolist(),
        "A": mats.A.tolist(),
        "lambda_max": lam,
        "connected": patterns.occurrence_graph_connected(args.m),
    }
    if args.m <= 4:
        out["rank_B"] = patterns.rank_of_B(args.m)
    return out


def cmd_construct(args) -> dict:
    sigma = construct.digit_reversal(args.n, args.k)
    out = {
        "base": args.n,
        "factors": args.k,
        "size": sigma.n,
        "images": list(sigma.images),
        "product_bound": construct.product_bound([args.n] * args.k),
        "schmidt_floor": construct.schmidt_floor(sigma.n),
    }
    if sigma.n <= 1024:
        out["scaled_D"] = permdisc.perm_discrepancy(sigma).scaled_D
    return out


def cmd_random_stats(args) -> dict:
    sample = construct.mc_discrepancy_stats(
        args.n, args.trials, args.seed, threads=_threads(args))
    return {
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "scaled_D": list(sample.scaled_values),
        "ratios": list(sample.ratios),
        "max_ratio": sample.max_ratio,
        "median_ratio": sample.median_ratio,
    }


def cmd_invdist(args) -> dict:
    dist = construct.inversion_distribution(args.n)
    return {
        "n": args.n,
        "counts": [str(c) for c in dist.counts],
        "mean": rational(dist.mean),
        "variance": rational(dist.variance),
    }


def cmd_search_symmetric(args) -> dict:
    res = symmetry.search_perfect(args.n, args.m, args.budget)
    return {
        "n": args.n,
        "m": args.m,
        "found": [serialize_permutation(p) for p in res.found],
        "nodes_explored": res.nodes_explored,
        "exhaustive": res.exhaustive,
    }


def cmd_certify(args) -> dict:
    s = parse_set(_read(args.set))
    cert = balance.balance_certificate(s, seed=args.seed)
    return {
        "n": s.n,
        "eps_B": rational(cert.eps_B),
        "eps_PB": rational(cert.eps_PB),
        "eps_MB": rational(cert.eps_MB),
        "eps_E_half": cert.eps_E_half,
        "eps_S": cert.eps_S,
        "eps_T": cert.eps_T,
        "pb_policy": cert.pb_policy,
        "implication_checks": cert.implication_checks,
    }


HANDLERS = {
    "analyze-set": cmd_analyze_set,
    "analyze-perm": cmd_analyze_perm,
    "pattern-count": cmd_pattern_count,
    "matrix": cmd_matrix,
    "construct": cmd_construct,
    "random-stats": cmd_random_stats,
    "invdist": cmd_invdist,
    "search-symmetric": cmd_search_symmetric,
    "certify": cmd_certify,
}


def _inputs_echo(args) -> dict:
    skip = {"command", "csv"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _emit_csv(results: dict, out) -> None:
    w = csv.writer(out)
    w.writerow(["key", "value"])
    for key, value in _flatten(results):
        w.writerow([key, value])


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def dispatch(argv) -> int:
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        results = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ParseError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal failure: {exc}", file=sys.stderr)
        return 3

    if getattr(args, "csv", False):
        buf = io.StringIO()
        _emit_csv(results, buf)
        sys.stdout.write(buf.getvalue())
        return 0

    report = {
        "command": args.command,
        "inputs": _inputs_echo(args),
        "results": results,
        "version": __version__,
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
