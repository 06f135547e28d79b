"""Command-line front end.

Subcommands: analyze, sweep, gram, pj-verify, kernel-check, gen.
Sequence files are JSON objects {"domain", "points", "label"} with
points as [re, im] pairs.  All output is deterministic byte-for-byte for
a fixed config and seed: floats are written with repr precision and no
run metadata (timestamps, hostnames) is ever emitted.

Exit codes: 0 success, 1 error, 2 Indeterminate (analyze only).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import BergseqError, DomainViolation
from .geometry import Domain
from .kernels import (
    gram_assemble,
    interpolation_constant_estimate,
    kernel_diag_check,
    numeric_gram_kernel,
    standard_kernel,
)
from .sequences import (
    ClassifyParams,
    SequenceSet,
    classify,
    density_sweep,
    generate_lattice,
)
from .verify import BlaschkeSpec, poisson_jensen_residual
from .weights import standard_disk, standard_puncture

SWEEP_HEADER = "center_re,center_im,r,kind,numerator,denominator,ratio"


def parse_weight(spec):
    """Parse 'standard-disk:s=2' or 'standard-puncture:s=2,t=2'."""
    family, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not _:
                raise ValueError(f"malformed weight parameter {item!r}")
            params[key.strip()] = float(val)
    if family == "standard-disk":
        return standard_disk(params.pop("s", 2.0)), params
    if family == "standard-puncture":
        return standard_puncture(params.pop("s", 2.0), params.pop("t", 2.0)), params
    raise ValueError(f"unknown weight family {family!r}")


def parse_sequence_file(path) -> SequenceSet:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise DomainViolation(f"sequence file not found: {path}")
    except json.JSONDecodeError as exc:
        raise DomainViolation(f"malformed sequence file {path}: line {exc.lineno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise DomainViolation(f"sequence file {path}: top level must be an object")
    for field in ("domain", "points"):
        if field not in doc:
            raise DomainViolation(f"sequence file {path}: missing field {field!r}")
    try:
        domain = Domain(doc["domain"])
    except ValueError:
        raise DomainViolation(f"sequence file {path}: unknown domain {doc['domain']!r}")
    pts = []
    for i, pair in enumerate(doc["points"]):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise DomainViolation(f"sequence file {path}: points[{i}] is not a [re, im] pair")
        pts.append(complex(float(pair[0]), float(pair[1])))
    for i, p in enumerate(pts):
        if abs(p) >= 1.0 or (domain is Domain.PUNCTURED_DISK and p == 0):
            raise DomainViolation(f"sequence file {path}: points[{i}] outside the domain")
    return SequenceSet(tuple(pts), domain, str(doc.get("label", "")))


def write_sequence_file(path, seq: SequenceSet):
    doc = {
        "domain": seq.domain.value,
        "points": [[p.real, p.imag] for p in seq.points],
        "label": seq.label,
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    _emit(path, text + "\n")


def _emit(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x):
    return repr(float(x))


def _parse_grid(text):
    return tuple(float(v) for v in text.split(","))


def _params_from_args(args):
    kw = {}
    if args.r_grid:
        grid = _parse_grid(args.r_grid)
        kw["r_grid_border"] = grid
        kw["r_grid_puncture"] = grid
    return ClassifyParams(
        delta=args.delta, eps=args.epsilon, split_a=args.split_a, **kw
    )


def cmd_analyze(args):
    seq = parse_sequence_file(args.sequence)
    weight, _ = parse_weight(args.weight)
    verdict = classify(seq, weight, _params_from_args(args))
    lines = [
        f"verdict: {verdict.verdict}",
        f"separation_border: {_fmt(verdict.separation_border)}",
    ]
    if verdict.separation_puncture is not None:
        lines.append(f"separation_puncture: {_fmt(verdict.separation_puncture)}")
    if verdict.density_border is not None:
        lines.append(f"density_border: {_fmt(verdict.density_border)}")
    if verdict.density_puncture is not None:
        lines.append(f"density_puncture: {_fmt(verdict.density_puncture)}")
    for reason in verdict.reasons:
        lines.append(f"reason: {reason}")
    _emit(args.out, "\n".join(lines) + "\n")
    return 2 if verdict.verdict == "Indeterminate" else 0


def cmd_sweep(args):
    seq = parse_sequence_file(args.sequence)
    weight, _ = parse_weight(args.weight)
    grid = _parse_grid(args.r_grid) if args.r_grid else None
    result = density_sweep(
        seq, weight, r_grid=grid, split_a=args.split_a, eps=args.epsilon
    )
    rows = [SWEEP_HEADER]
    for rep in result.reports:
        rows.append(
            ",".join(
                [
                    _fmt(rep.center.real),
                    _fmt(rep.center.imag),
                    _fmt(rep.radius),
                    rep.kind,
                    _fmt(rep.numerator),
                    _fmt(rep.denominator),
                    _fmt(rep.ratio) if np.isfinite(rep.ratio) else "inf",
                ]
            )
        )
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_gram(args):
    seq = parse_sequence_file(args.sequence)
    if seq.domain is not Domain.DISK:
        raise DomainViolation("gram requires a disk sequence")
    if len(seq) == 0:
        raise DomainViolation("gram requires a nonempty sequence")
    weight, _ = parse_weight(args.weight)
    if weight.family != "standard-disk":
        raise DomainViolation("gram requires a standard-disk weight")
    kernel = standard_kernel(weight.params["s"])
    gram = gram_assemble(kernel, seq.array())
    eig = np.linalg.eigvalsh(gram.normalized)
    const = interpolation_constant_estimate(gram)
    lines = ["spectrum:"]
    lines += [f"  {_fmt(v)}" for v in eig]
    lines.append(f"condition: {_fmt(eig[-1] / eig[0]) if eig[0] > 0 else 'inf'}")
    lines.append(f"interpolation_constant: {_fmt(const) if np.isfinite(const) else 'inf'}")
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _pj_suite():
    cases = []
    zero_pool = [0.2, -0.4j, 0.5 + 0.3j, -0.6, 0.1 - 0.2j]
    for s in (2.0, 3.0):
        for n_zeros in range(5):
            for r in (0.5, 0.8):
                z = 0.1 + 0.05j * n_zeros
                cases.append((tuple(zero_pool[:n_zeros]), s, z, r))
    return cases


def cmd_pj_verify(args):
    lines = []
    worst = 0.0
    for zeros, s, z, r in _pj_suite():
        res = poisson_jensen_residual(BlaschkeSpec(zeros), standard_disk(s), z, r)
        worst = max(worst, res)
        lines.append(f"zeros={len(zeros)} s={_fmt(s)} r={_fmt(r)} residual={res:.3e}")
    ok = worst < 1e-6
    lines.append(f"max_residual: {worst:.3e}")
    lines.append("pass" if ok else "fail")
    _emit(args.out, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_kernel_check(args):
    rng = np.random.default_rng(args.seed)
    rho = 0.95 * np.sqrt(rng.random(200))
    grid = rho * np.exp(2j * np.pi * rng.random(200))
    lines = []
    ok = True
    for s in (2.0, 3.0):
        closed = standard_kernel(s)
        diag = kernel_diag_check(closed, grid)
        dev = float(np.max(diag) / np.min(diag) - 1.0)
        lines.append(f"s={_fmt(s)} diag_max_over_min_minus_1={dev:.3e}")
        ok = ok and dev < 1e-6
        numeric = numeric_gram_kernel(s)
        kc = closed.evaluate(grid, grid)
        kn = numeric.evaluate(grid, grid)
        rel = float(np.max(np.abs(kn - kc) / np.abs(kc)))
        lines.append(f"s={_fmt(s)} numeric_gram_deviation={rel:.3e}")
        ok = ok and rel < 1e-4
    lines.append("pass" if ok else "fail")
    _emit(args.out, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_gen(args):
    if args.kind == "hyperbolic-disk":
        seq = generate_lattice("hyperbolic-disk", args.count, seed=args.seed, d=args.mesh)
    elif args.kind == "puncture-exponential":
        seq = generate_lattice(
            "puncture-exponential", args.count, seed=args.seed, s=args.step, n=args.rays
        )
    else:
        raise ValueError(f"unknown lattice kind {args.kind!r}")
    write_sequence_file(args.out, seq)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bergseq",
        description="Interpolation-sequence analysis in weighted Bergman spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_sequence=True):
        if needs_sequence:
            p.add_argument("sequence", help="sequence file (JSON)")
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--weight", default="standard-disk:s=2")
        p.add_argument("--r-grid", default="")
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--epsilon", type=float, default=0.1)
        p.add_argument("--split-a", type=float, default=0.5)
        p.add_argument("--out", default="")
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("analyze", help="classify a sequence"))
    common(sub.add_parser("sweep", help="per-(center, r) density table"))
    common(sub.add_parser("gram", help="Gram spectrum and interpolation constant"))
    common(sub.add_parser("pj-verify", help="run the identity suite"), needs_sequence=False)
    common(sub.add_parser("kernel-check", help="kernel diagonal checks"), needs_sequence=False)
    gen = sub.add_parser("gen", help="write a deterministic test sequence")
    gen.add_argument("--config", help="key=value config file; flags override it")
    gen.add_argument("--kind", required=True,
                     choices=["hyperbolic-disk", "puncture-exponential"])
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--mesh", type=float, default=0.5)
    gen.add_argument("--step", type=float, default=1.0)
    gen.add_argument("--rays", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="")
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "gram": cmd_gram,
    "pj-verify": cmd_pj_verify,
    "kernel-check": cmd_kernel_check,
    "gen": cmd_gen,
}

_FLAG_DEFAULTS = {
    "weight": "standard-disk:s=2",
    "r_grid": "",
    "delta": 0.05,
    "epsilon": 0.1,
    "split_a": 0.5,
    "out": "",
    "seed": 0,
}
_CONFIG_CASTS = {"delta": float, "epsilon": float, "split_a": float, "seed": int}


def _load_config(path):
    defaults = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in _FLAG_DEFAULTS:
                raise DomainViolation(f"config {path}: bad line {lineno}: {raw.rstrip()}")
            defaults[key] = _CONFIG_CASTS.get(key, str)(val.strip())
    return defaults


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            # config fills in any flag still at its declared default, so
            # explicit flags win over the file
            for key, val in _load_config(args.config).items():
                if getattr(args, key, None) == _FLAG_DEFAULTS[key]:
                    setattr(args, key, val)
        return _COMMANDS[args.command](args)
    except BergseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
