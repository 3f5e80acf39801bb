"""Command-line interface: ``swapenum <subcommand> [options]``.

Exit codes: 0 ok, 1 internal error, 2 bad input, 3 resource cap hit,
4 verification failure.
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from . import analysis, serialize, tables
from .codes import NAMED_CODES, code_projector, load_stabilizer_file, named_code
from .enumerators import enumerators_from_distribution
from .errors import InvariantViolation, NumericError, SizeLimitError, SwapEnumError
from .states import load_density_json, parse_state_spec
from .swap_test import (analytic_distribution, circuit_distribution, estimate,
                         overlaps_from_distribution, sample)
from .tensor import hs_inner, mask_of, sites_of

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3, 4

GLOBAL_DEFAULTS = {
    "tol": analysis.ANALYTIC_TOL,
    "seed": 0,
    "shots": None,
    "engine": "analytic",
    "format": "json",
    "out": None,
}

FAMILIES = {"A": "A", "B": "B", "Aprime": "Aprime", "A'": "Aprime",
            "Bprime": "Bprime", "B'": "Bprime", "s": "s"}


class InputError(SwapEnumError):
    pass


@dataclass(frozen=True)
class Source:
    """A resolved state or code: normalized density matrix, shape and code dimension."""
    label: str
    rho: np.ndarray
    shape: object
    K: int


def _code_source(label, group):
    cs = code_projector(group)
    return Source(label, cs.rho, cs.shape, cs.K)


def _infer_K(rho):
    inv = 1 / hs_inner(rho, rho)
    K = round(inv)
    return K if abs(inv - K) < 1e-6 else 1


def resolve(spec):
    """Named codes first, then named states, then files; a name shadowing a file is an error."""
    shadows_file = Path(spec).exists()
    if spec in NAMED_CODES or parse_state_spec(spec) is not None:
        if shadows_file:
            raise InputError(f"{spec!r} names both a built-in and an existing file")
        if spec in NAMED_CODES:
            return _code_source(spec, named_code(spec))
        rho, shape = parse_state_spec(spec)
        return Source(spec, rho, shape, 1)
    path = Path(spec)
    if not path.is_file():
        raise InputError(f"cannot resolve {spec!r}: not a named code, named state or file")
    if path.suffix.lower() == ".json":
        rho, shape = load_density_json(path)
        return Source(spec, rho, shape, _infer_K(rho))
    return _code_source(spec, load_stabilizer_file(path))


def _distribution(cfg, a, b):
    if a.shape != b.shape:
        raise InputError(f"subsystem shapes differ: {a.shape.local_dims} vs {b.shape.local_dims}")
    if cfg.engine == "circuit":
        return circuit_distribution(a.rho, b.rho, a.shape)
    dist = analytic_distribution(a.rho, b.rho, a.shape)
    if cfg.engine == "sample":
        if cfg.shots is None or cfg.shots < 1:
            raise InputError("--engine sample needs --shots >= 1")
        return estimate(sample(dist, cfg.shots, cfg.seed))
    return dist


def _scan_tol(cfg, dist, K):
    if cfg.engine == "sample":
        return analysis.sampled_tolerances(dist, K, cfg.shots, cfg.tol)
    return cfg.tol


def _fmt_value(x, n):
    if abs(x) < 1e-14:
        return "0"
    frac = Fraction(x).limit_denominator(1 << (2 * n + 4))
    exact = abs(float(frac) - x) < 1e-12
    text = f"{x:.12g}"
    return f"{text:<16} {frac}" if exact and frac.denominator > 1 else text


def _distribution_table(dist):
    n = dist.n
    lines = [f"n = {n}  method = {dist.method}"]
    profile = dist.weight_profile()
    if profile is not None:
        for k, v in enumerate(profile):
            lines.append(f"p({k})  {_fmt_value(v, n)}")
        return lines
    for w, items in dist.by_weight().items():
        nonzero = [(m, v) for m, v in items if abs(v) > 1e-15]
        lines.append(f"weight {w}: {len(nonzero)} nonzero of {len(items)}")
        for m, v in nonzero:
            lines.append(f"  {format(m, f'0{n}b')}  {_fmt_value(v, n)}")
    return lines


def cmd_swap_test(cfg):
    a = resolve(cfg.a)
    b = resolve(cfg.b) if cfg.b else a
    dist = _distribution(cfg, a, b)
    return dist.to_dict(), _distribution_table(dist), EXIT_OK


def cmd_enumerators(cfg):
    src = resolve(cfg.code)
    dist = _distribution(cfg, src, src)
    enum = enumerators_from_distribution(dist, src.K, src.shape.d)
    data = enum.to_dict()
    which = [FAMILIES[cfg.which]] if cfg.which else ["A", "B", "Aprime", "Bprime", "s"]
    if cfg.which:
        keys = {"Aprime": "A_prime", "Bprime": "B_prime"}
        data = {"n": enum.n, "d": enum.d, "K": enum.K,
                keys.get(which[0], which[0]): getattr(enum, which[0]).tolist()}
    header = "j  " + "  ".join(f"{f:>14}" for f in which)
    lines = [header] + [f"{j:<2} " + "  ".join(f"{getattr(enum, f)[j]:>14.10g}" for f in which)
                        for j in range(enum.n + 1)]
    return data, lines, EXIT_OK


def cmd_distance(cfg):
    src = resolve(cfg.code)
    K = cfg.K if cfg.K is not None else src.K
    analysis.check_code_state(src.rho, K, src.shape)
    dist = _distribution(cfg, src, src)
    report = analysis.distance_from_distribution(dist, K, src.shape.d, _scan_tol(cfg, dist, K))
    lines = [f"delta = {report.delta}", f"pure = {report.pure}"]
    if report.degenerate:
        lines.append("degenerate: every residual vanishes, delta reported as n + 1")
    lines += [f"  j={j}  residual {r:.3g}" for j, r in enumerate(report.residuals)]
    return report.to_dict(), lines, EXIT_OK


def cmd_uniformity(cfg):
    src = resolve(cfg.state)
    analysis.check_pure(src.rho, src.shape)
    dist = _distribution(cfg, src, src)
    k = analysis.uniformity_from_distribution(dist, src.shape.d, _scan_tol(cfg, dist, 1))
    data = {"state": src.label, "n": src.shape.n, "k": k, "tolerance": cfg.tol}
    return data, [f"k = {k}"], EXIT_OK


def _parse_sites(text, n):
    try:
        sites = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad site list {text!r}; expected comma-separated 1-based sites") from None
    return mask_of(sites, n)


def _subset_family(cfg, n):
    if cfg.subsets:
        return [_parse_sites(part, n) for part in cfg.subsets.split(";")]
    k = cfg.k if cfg.k is not None else 1
    if not 1 <= k <= n:
        raise InputError(f"--k must lie in 1..{n}")
    return [mask_of(c, n) for c in combinations(range(n), k)]


def cmd_measure(cfg):
    src = resolve(cfg.state)
    n = src.shape.n
    subsets = _subset_family(cfg, n)
    if cfg.engine == "analytic":
        value = analysis.fixed_partition_measure(src.rho, src.shape, subsets)
    else:
        analysis.check_pure(src.rho, src.shape)
        value = analysis.measure_from_distribution(_distribution(cfg, src, src), subsets)
    data = {"state": src.label, "value": value,
            "subsets": [[i + 1 for i in sites_of(m, n)] for m in subsets]}
    return data, [f"E = {value:.12g}"], EXIT_OK


def cmd_monogamy(cfg):
    src = resolve(cfg.state)
    n = src.shape.n
    analysis.check_pure(src.rho, src.shape)
    dist = _distribution(cfg, src, src)
    sums = analysis.monogamy_sums(overlaps_from_distribution(dist))
    masks = [_parse_sites(cfg.T, n)] if cfg.T else range(1, 1 << n)
    tol = cfg.tol
    rows, ok = {}, True
    for T in masks:
        if T == 0:
            raise InputError("T must be nonempty")
        even = T.bit_count() % 2 == 0
        holds = bool(sums[T] <= tol) if even else bool(abs(sums[T]) <= tol)
        ok &= holds
        rows[format(T, f"0{n}b")] = {"sum": float(sums[T]), "holds": holds}
    data = {"state": src.label, "n": n, "tolerance": tol, "holds": ok, "sums": rows}
    lines = [f"{t}  {r['sum']:+.6g}  {'ok' if r['holds'] else 'VIOLATED'}" for t, r in rows.items()]
    return data, lines, EXIT_OK if ok else EXIT_VERIFY


def cmd_sample_plan(cfg):
    src = resolve(cfg.code)
    n = src.shape.n
    if not 0 <= cfg.j <= n:
        raise InputError(f"--j must lie in 0..{n}")
    dist = analytic_distribution(src.rho, src.rho, src.shape) if cfg.exact else None
    plan = analysis.sample_plan(n, src.K, src.shape.d, cfg.j, cfg.epsilon, dist)
    lines = [f"shots = {plan.shots}", f"per-shot variance bound = {plan.variance_bound:.6g}"]
    return plan.to_dict(), lines, EXIT_OK


def cmd_verify_tables(cfg):
    results = tables.verify_all()
    ok = all(r.passed for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.max_err:.3e}  (tol {r.tol:g})  {r.name}"
             for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    data = {"passed": ok, "checks": [r.to_dict() for r in results]}
    return data, lines, EXIT_OK if ok else EXIT_VERIFY


def _add_globals(p):
    s = argparse.SUPPRESS
    p.add_argument("--tol", type=float, default=s, help="equality tolerance for scans (default 1e-9)")
    p.add_argument("--seed", type=int, default=s, help="RNG seed for --engine sample (default 0)")
    p.add_argument("--shots", type=int, default=s, help="shot count for --engine sample")
    p.add_argument("--engine", choices=["analytic", "circuit", "sample"], default=s)
    p.add_argument("--format", choices=["json", "table"], default=s)
    p.add_argument("--out", default=s, help="write output here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="swapenum", description=__doc__.splitlines()[0])
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p)
        p.set_defaults(func=func)
        return p

    p = add("swap-test", cmd_swap_test, "outcome distribution of the parallelized SWAP test")
    p.add_argument("--a", required=True, help="first state or code")
    p.add_argument("--b", help="second state or code (default: same as --a)")

    p = add("enumerators", cmd_enumerators, "weight enumerators of a code or state")
    p.add_argument("--code", "--state", dest="code", required=True)
    p.add_argument("--which", choices=sorted(FAMILIES))

    p = add("distance", cmd_distance, "code distance from the self-test")
    p.add_argument("--code", "--state", dest="code", required=True)
    p.add_argument("--K", type=int, help="code dimension (default: inferred)")

    p = add("uniformity", cmd_uniformity, "k-uniformity of a pure state")
    p.add_argument("--state", required=True)

    p = add("measure", cmd_measure, "fixed partition entanglement measure of a pure state")
    p.add_argument("--state", required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--subsets", help="';'-separated 1-based site lists, e.g. '1,2;3'")
    grp.add_argument("--k", type=int, help="use every k-subset (default 1)")

    p = add("monogamy", cmd_monogamy, "signed concurrence sums of a pure state")
    p.add_argument("--state", required=True)
    p.add_argument("--T", help="1-based site list; default checks every nonempty T")

    p = add("sample-plan", cmd_sample_plan, "shots needed for a distance residual")
    p.add_argument("--code", "--state", dest="code", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--exact", action="store_true",
                   help="use the code's exact per-shot variance instead of the worst case")

    add("verify-tables", cmd_verify_tables, "recompute every reference table")
    return parser


def parse_args(argv=None):
    cfg = build_parser().parse_args(argv)
    for key, val in GLOBAL_DEFAULTS.items():
        if not hasattr(cfg, key):
            setattr(cfg, key, val)
    return cfg


def _emit(cfg, data, lines):
    text = serialize.dumps(data) if cfg.format == "json" else "\n".join(lines)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def main(argv=None):
    cfg = parse_args(argv)
    try:
        data, lines, code = cfg.func(cfg)
        _emit(cfg, data, lines)
        return code
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except NumericError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SwapEnumError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
