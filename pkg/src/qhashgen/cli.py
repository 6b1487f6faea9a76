"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 search target not
reached, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import analysis as an
from .build import FAMILY_KINDS, build_family, build_generator
from .gf import Word, check_modulus, prime_count
from .qgen import HDQGenerator, ceil_log2
from .qstate import inner_product, swap_test_accept_prob, swap_test_sample
from .uhash import BudgetExceededError, freivalds_range, measure_epsilon

EXIT_OK, EXIT_USAGE, EXIT_NOT_ACHIEVED, EXIT_BUDGET = 0, 1, 2, 3

SWEEP_COLUMNS = (
    "q", "k", "n", "delta_target", "T", "seed",
    "delta_measured", "delta_bound", "s_qubits", "s_lower_bound",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _add_output(p):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")


def _add_generator(p):
    p.add_argument("--gen", choices=("composed", "hdq", "fingerprint"), default="composed")
    p.add_argument("--family", choices=FAMILY_KINDS, default="rs")
    p.add_argument("--code", choices=("simplex", "repetition", "rs"), default=None)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="simplex code dimension")
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--points", type=_int_list, help="Reed-Solomon evaluation points, comma separated")
    p.add_argument("--bset", type=_int_list, help="explicit multipliers b_1..b_T, comma separated")
    p.add_argument("--delta", type=float, help="target resistance of the inner generator")
    p.add_argument("--T", type=int, help="multiplier set size (default from --delta)")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--refine", action="store_true", help="greedy swap pass after each restart")
    p.add_argument("--exhaustive-bset", action="store_true", help="pick the best size-T set by enumeration")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qhashgen", description="Quantum hash generators from universal hash families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("family", help="build a classical hash family and print its descriptor")
    p.add_argument("--kind", choices=FAMILY_KINDS, required=True)
    p.add_argument("--code", choices=("simplex", "repetition", "rs"))
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--points", type=_int_list)
    p.add_argument("--census", choices=("none", "exhaustive", "sampled"), default="none")
    p.add_argument("--pairs", type=int, default=100_000)
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("generator", help="build a quantum hash generator and print its descriptor")
    _add_generator(p)
    p.add_argument("--word", help="also print the state of this word")
    _add_output(p)

    p = sub.add_parser("resist", help="measure the resistance of a generator")
    _add_generator(p)
    p.add_argument("--mode", choices=an.MODES, default="exhaustive")
    p.add_argument("--budget", type=int, default=an.DEFAULT_PAIR_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("bsearch", help="search for a multiplier set B with small resistance")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--T", type=int, help="set size (default: the formula value capped at q)")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)

    p = sub.add_parser("bounds", help="evaluate the resistance and qubit-count bounds")
    p.add_argument("--K", type=int, help="domain size")
    p.add_argument("--log2K", type=float, help="log2 of the domain size, for huge domains")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--c", type=int)
    _add_output(p)

    p = sub.add_parser("swaptest", help="SWAP-test acceptance between the hashes of two words")
    _add_generator(p)
    p.add_argument("--word", required=True)
    p.add_argument("--word2", required=True)
    p.add_argument("--shots", type=int, default=100_000)
    _add_output(p)

    p = sub.add_parser("sweep", help="resistance over a grid of (q, delta, seed); one CSV row each")
    p.add_argument("--family", choices=("rs", "linear"), default="rs")
    p.add_argument("--qs", type=_int_list, required=True)
    p.add_argument("--deltas", type=_float_list, required=True)
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, help="evaluation points (default q - 1)")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--budget", type=int, default=an.DEFAULT_PAIR_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    return parser


def _generator_kwargs(args) -> dict:
    return dict(
        family=args.family, code=args.code, q=args.q, k=args.k, n=args.n, m=args.m, c=args.c,
        points=args.points, bset=args.bset, delta=args.delta, T=args.T, restarts=args.restarts,
        seed=args.seed, refine=args.refine, exhaustive_bset=args.exhaustive_bset,
    )


def parse_word(text: str, g):
    """Comma-separated field elements or, for binary words, a 0/1 string; w_0 first."""
    if isinstance(g, HDQGenerator):
        return Word.parse(text, g.q, 1).values[0]
    fam = getattr(g, "family", None)
    if fam is not None:
        return Word.parse(text, 2 if fam.alphabet == 2 else fam.q, fam.k).values
    return Word.parse(text, 2, g.code.k).values


def _cmd_family(args) -> tuple[dict, int]:
    fam = build_family(args.kind, q=args.q, k=args.k, n=args.n, c=args.c, points=args.points, code=args.code, m=args.m)
    out = {"family": fam.to_dict(), "seed": args.seed}
    if args.census != "none":
        out["census"] = measure_epsilon(
            fam, mode=args.census, pairs=args.pairs, seed=args.seed, cap=args.cap, workers=args.workers
        ).to_dict()
    return out, EXIT_OK


def _cmd_generator(args) -> tuple[dict, int]:
    built = build_generator(args.gen, **_generator_kwargs(args))
    out = {"generator": built.to_dict(), "seed": args.seed}
    if args.word is not None:
        st = built.generator.state(parse_word(args.word, built.generator))
        out["state"] = {"word": args.word, "amplitudes": str(st)}
    return out, EXIT_OK


def _cmd_resist(args) -> tuple[dict, int]:
    built = build_generator(args.gen, **_generator_kwargs(args))
    g = built.generator
    rep = an.measure_resistance(g, mode=args.mode, budget=args.budget, seed=args.seed, workers=args.workers)
    check = an.check_qubit_lower_bound(rep, g.K)
    out = {
        "generator": built.to_dict(),
        "report": rep.to_dict(),
        "seed": args.seed,
        "qubit_lower_bound_check": "skipped" if check is None else ("pass" if check else "fail"),
        "delta_bound_check": {
            "delta_bound": rep.delta_bound,
            "satisfied": rep.within_bound,
            "exact": rep.exact,
        },
    }
    return out, EXIT_OK


def _cmd_bsearch(args) -> tuple[dict, int]:
    q, delta = args.q, args.delta
    if not 0 < delta < 1:
        raise UsageError(f"--delta={delta} must lie in (0, 1)")
    check_modulus(q)
    T_formula = an.hdq_set_size(q, delta)
    T = args.T if args.T is not None else min(T_formula, q)
    res = an.search_bset(q, delta, T, restarts=args.restarts, seed=args.seed, refine=args.refine)
    out = {
        "result": res.to_dict(),
        "q": q,
        "seed": args.seed,
        "T_formula": T_formula,
        "T_capped": args.T is None and T_formula > q,
        "qubits": ceil_log2(T) + 1,
    }
    return out, EXIT_OK if res.achieved else EXIT_NOT_ACHIEVED


def _cmd_bounds(args) -> tuple[dict, int]:
    delta = args.delta
    if not 0 < delta < 1:
        raise UsageError(f"--delta={delta} must lie in (0, 1)")
    out: dict = {"delta": delta}
    if args.K is not None or args.log2K is not None:
        if args.log2K is not None:
            log2K = args.log2K
        else:
            if args.K < 2:
                raise UsageError("--K must be >= 2")
            log2K = math.log2(args.K)
        out["log2K"] = log2K
        out["qubit_lower_bound"] = an.qubit_lower_bound_log2(log2K, delta)
    if args.epsilon is not None:
        out["epsilon"] = args.epsilon
        out["composed_delta_bound"] = an.theoretical_delta(args.epsilon, delta)
    if args.q is not None:
        q = check_modulus(args.q)
        T = an.hdq_set_size(q, delta)
        out["q"] = q
        out["hdq_T"] = T
        out["hdq_T_capped"] = min(T, q)
        out["hdq_qubits"] = ceil_log2(min(T, q)) + 1
        out["hdq_qubit_upper_bound"] = an.hdq_qubit_upper_bound(q, delta)
        out["rs_qubit_upper_bound"] = an.rs_qubit_upper_bound(q, delta)
        if args.N is not None:
            out["N"] = args.N
            out["generic_qubit_upper_bound"] = an.generic_qubit_upper_bound(args.N, q, delta)
        if args.k is not None:
            out["k"] = args.k
            out["linear_qubit_upper_bound"] = an.linear_qubit_upper_bound(q, args.k, delta)
            out["linear_qubit_lower_bound"] = an.linear_qubit_lower_bound(q, args.k, delta)
        if args.n is not None:
            out["n"] = args.n
            out["code_qubit_upper_bound"] = an.code_qubit_upper_bound(args.n, q, delta)
    if args.c is not None and args.k is not None:
        params = an.freivalds_parameters(args.k, args.c)
        q = args.q if args.q is not None else params["q"]
        T = min(an.hdq_set_size(q, delta), q)
        out["freivalds"] = {
            "M": freivalds_range(args.k, args.c),
            "N": prime_count(freivalds_range(args.k, args.c)),
            "q": q,
            "T": T,
            "s": an.composed_qubits(params["N"], T),
            "qubit_upper_bound": an.freivalds_qubit_upper_bound(args.k, args.c, q, delta),
            "delta_bound": an.theoretical_delta(1 / args.c, delta),
        }
    return out, EXIT_OK


def _cmd_swaptest(args) -> tuple[dict, int]:
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    built = build_generator(args.gen, **_generator_kwargs(args))
    g = built.generator
    a, b = g.state(parse_word(args.word, g)), g.state(parse_word(args.word2, g))
    ip = inner_product(a, b)
    out = {
        "generator": built.to_dict(),
        "word": args.word,
        "word2": args.word2,
        "inner_product_abs": abs(ip),
        "exact_p": swap_test_accept_prob(a, b),
        "frequency": swap_test_sample(a, b, args.shots, np.random.default_rng(args.seed)),
        "shots": args.shots,
        "seed": args.seed,
    }
    return out, EXIT_OK


def sweep_rows(args) -> list[dict]:
    rows = []
    for q in args.qs:
        for delta in args.deltas:
            for seed in args.seeds:
                n = args.n if args.n is not None else (None if args.family == "linear" else q - 1)
                built = build_generator(
                    "composed", family=args.family, q=q, k=args.k, n=n, delta=delta,
                    restarts=args.restarts, seed=seed,
                )
                g = built.generator
                mode = "exhaustive" if g.K * (g.K - 1) // 2 <= args.budget else "sampled"
                rep = an.measure_resistance(g, mode=mode, budget=args.budget, seed=seed, workers=args.workers)
                rows.append({
                    "q": q, "k": args.k, "n": n, "delta_target": delta,
                    "T": built.inner.generator.bset.T, "seed": seed,
                    "delta_measured": rep.delta_measured, "delta_bound": rep.delta_bound,
                    "s_qubits": rep.s_qubits, "s_lower_bound": rep.s_lower_bound,
                })
    return rows


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key in obj:
            yield from _flatten(obj[key], f"{prefix}{key}.")
    else:
        yield prefix[:-1], obj


def render(obj, fmt: str, columns: Sequence[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [dict(_flatten(obj))]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns or rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else (json.dumps(v) if isinstance(v, list) else v)) for k, v in row.items()})
        return buf.getvalue()
    items = obj if isinstance(obj, list) else [obj]
    lines = []
    for item in items:
        lines.extend(f"{k}: {v}" for k, v in _flatten(item))
        lines.append("")
    return "\n".join(lines)


COMMANDS = {
    "family": _cmd_family,
    "generator": _cmd_generator,
    "resist": _cmd_resist,
    "bsearch": _cmd_bsearch,
    "bounds": _cmd_bounds,
    "swaptest": _cmd_swaptest,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            obj, code, cols = sweep_rows(args), EXIT_OK, SWEEP_COLUMNS
        else:
            (obj, code), cols = COMMANDS[args.command](args), None
    except BudgetExceededError as exc:
        print(f"qhashgen: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, TypeError, IndexError, OverflowError) as exc:
        print(f"qhashgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(obj, args.format, cols)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
