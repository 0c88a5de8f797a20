"""``reillyspec`` command line.

Exit codes: 0 success, 2 bad input (unreadable file, malformed JSON, invalid
shape or parameters), 3 numerical disagreement or a numerical method that
gave up.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import families as fam
from .document import load_document
from .errors import ReillyError, ValidationError
from .geometry import StarGraph
from .oracle import charpoly_roots, rayleigh_montecarlo_upper
from .reilly import DEFAULT_EQ_TOL, reilly_report
from .spectral import DEFAULT_CLUSTER_TOL, cluster, eigensolve, lambda1, star_laplacian, polygon_laplacian
from .transfer import find_eigenvalues_transfer

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3
AGREEMENT_TOL = 1e-6

CSV_HEADER = ("param", "lambda1", "lambda2", "total_length", "energy", "residual", "class")

# name -> (constructor, parameter names and converters)
FAMILY_PARAMS = {
    "regular": (fam.regular_polygon, (("n", int), ("side", float))),
    "losange": (fam.losange, (("side", float), ("theta", float))),
    "trapeze": (fam.trapeze, (("theta", float),)),
    "fake-regular": (fam.fake_regular, (("n", int),)),
    "star": (fam.star_stationary, (("n", int), ("length", float))),
    "random": (fam.random_simple_polygon, (("n", int), ("seed", int), ("rmin", float), ("rmax", float))),
}
SWEEP_FAMILIES = ("trapeze", "regular", "fake-regular", "star")


class Style:
    def __init__(self, stream):
        self.on = stream.isatty() and not os.environ.get("NO_COLOR")

    def __call__(self, text: str, code: str) -> str:
        return f"\033[{code}m{text}\033[0m" if self.on else text


def fmt(x: float) -> str:
    """17 significant digits, always with a dot (str.format ignores locale)."""
    return format(float(x), ".17g")


def family_shape(name: str, params: list[str]):
    if name not in FAMILY_PARAMS:
        raise ValidationError(f"unknown family {name!r}; choose from {', '.join(FAMILY_PARAMS)}")
    ctor, spec = FAMILY_PARAMS[name]
    if not params or len(params) > len(spec):
        names = " ".join(n for n, _ in spec)
        raise ValidationError(f"family {name} takes parameters: {names} (trailing ones optional)")
    args = []
    for raw, (pname, conv) in zip(params, spec):
        try:
            args.append(conv(raw))
        except ValueError:
            raise ValidationError(f"{name}: parameter {pname} must be {conv.__name__}, got {raw!r}") from None
    return ctor(*args)


def _shape(args):
    if args.family is not None:
        if args.input is not None:
            raise ValidationError("give either an input file or --family, not both")
        return family_shape(args.family, args.params or [])
    if args.input is None:
        raise ValidationError("an input file or --family is required")
    return load_document(args.input)


def _tolerances(args) -> tuple[float, float]:
    cluster_tol = DEFAULT_CLUSTER_TOL if args.tol is None else args.tol
    eq_tol = DEFAULT_EQ_TOL if args.tol is None else args.tol
    if getattr(args, "cluster_tol", None) is not None:
        cluster_tol = args.cluster_tol
    if getattr(args, "eq_tol", None) is not None:
        eq_tol = args.eq_tol
    for v in (cluster_tol, eq_tol):
        if not (v > 0 and math.isfinite(v)):
            raise ValidationError("tolerances must be positive and finite")
    return cluster_tol, eq_tol


def _laplacian(shape):
    if isinstance(shape, StarGraph):
        return star_laplacian(shape.edge_lengths)
    return polygon_laplacian(shape)


def _spectrum_rows(spec) -> list[dict]:
    return [{"eigenvalue": v, "multiplicity": m} for v, m in spec]


def cmd_spectrum(args, out) -> int:
    shape = _shape(args)
    cluster_tol, _ = _tolerances(args)
    result: dict = {"method": args.method}
    lap = None
    if args.method in ("laplacian", "both"):
        lap = eigensolve(_laplacian(shape), cluster_tol)[0]
        result["spectrum"] = _spectrum_rows(lap)
    if args.method in ("transfer", "both"):
        if isinstance(shape, StarGraph):
            raise ValidationError("the transfer method applies to polygons only")
        tr = find_eigenvalues_transfer(shape.edge_lengths, cluster_tol=cluster_tol)
        # the transfer scan only sees nonzero eigenvalues; the constants give 0
        full = cluster(np.concatenate([[0.0], tr.expanded()]), cluster_tol)
        result["transfer_spectrum"] = _spectrum_rows(full)
        if lap is None:
            result["spectrum"] = result.pop("transfer_spectrum")
        else:
            a, b = lap.expanded(), full.expanded()
            if a.size != b.size:
                gap = math.inf
            else:
                gap = float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))
            result["discrepancy"] = gap
    status = EXIT_OK
    if result.get("discrepancy", 0.0) > AGREEMENT_TOL:
        status = EXIT_DISAGREE

    if args.json:
        out.write(json.dumps(result) + "\n")
        return status
    style = Style(out)
    for row in result["spectrum"]:
        mult = f"  (x{row['multiplicity']})" if row["multiplicity"] > 1 else ""
        out.write(f"{fmt(row['eigenvalue'])}{mult}\n")
    if "discrepancy" in result:
        ok = status == EXIT_OK
        label = style("agree", "32") if ok else style("DISAGREE", "31")
        out.write(f"max discrepancy laplacian vs transfer: {result['discrepancy']:.3e} ({label})\n")
    return status


def cmd_reilly(args, out) -> int:
    shape = _shape(args)
    cluster_tol, eq_tol = _tolerances(args)
    rep = reilly_report(shape, eq_tol, cluster_tol)
    if args.json:
        out.write(json.dumps(rep.as_dict()) + "\n")
        return EXIT_OK
    style = Style(out)
    cls = rep.classification
    out.write(f"lambda1          {fmt(rep.lambda1)}\n")
    out.write(f"total_length     {fmt(rep.total_length)}\n")
    out.write(f"energy           {fmt(rep.curvature_energy)}\n")
    out.write(f"residual         {fmt(rep.residual)}\n")
    out.write(f"equality         {style('yes', '32') if rep.equality else 'no'}\n")
    out.write(f"class            {style(cls.tag, '1')}\n")
    if cls.diagnostic:
        out.write(f"note             {cls.diagnostic}\n")
    return EXIT_OK


def _sweep_grid(family: str, start: float, stop: float, steps: int | None) -> list:
    if family == "trapeze":
        if steps is None or steps < 1:
            raise ValidationError("trapeze sweep needs --steps >= 1")
        return [float(x) for x in np.linspace(start, stop, steps)]
    lo, hi = int(math.ceil(start)), int(math.floor(stop))
    if lo > hi:
        raise ValidationError("empty integer range")
    if steps is None:
        return list(range(lo, hi + 1))
    return sorted({int(round(x)) for x in np.linspace(lo, hi, steps)})


def sweep_row(family: str, param, length: float = 1.0, tol: float = DEFAULT_EQ_TOL,
              cluster_tol: float = DEFAULT_CLUSTER_TOL) -> tuple:
    if family == "trapeze":
        shape = fam.trapeze(param)
    elif family == "regular":
        shape = fam.regular_polygon(param, length)
    elif family == "fake-regular":
        shape = fam.fake_regular(param)
    elif family == "star":
        shape = fam.star_stationary(param, length)
    else:
        raise ValidationError(f"cannot sweep family {family!r}")
    spec = eigensolve(_laplacian(shape), cluster_tol)[0].nonzero()
    rep = reilly_report(shape, tol, cluster_tol)
    lam2 = spec.eigenvalues[1] if len(spec) > 1 else None
    return (param, lambda1(spec), lam2, rep.total_length, rep.curvature_energy,
            rep.residual, rep.classification.tag)


def _sweep_task(job):
    return sweep_row(*job)


def cmd_sweep(args, out) -> int:
    cluster_tol, eq_tol = _tolerances(args)
    grid = _sweep_grid(args.family, args.start, args.stop, args.steps)
    jobs = [(args.family, p, args.length, eq_tol, cluster_tol) for p in grid]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_task, jobs))
    else:
        rows = [_sweep_task(j) for j in jobs]
    rows.sort(key=lambda r: r[0])

    def render(row):
        param, *nums, tag = row
        p = str(param) if isinstance(param, int) else fmt(param)
        return [p] + ["" if v is None else fmt(v) for v in nums] + [tag]

    if args.csv:
        try:
            fh = open(args.csv, "w", newline="", encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"{args.csv}: cannot write ({exc})") from None
    else:
        fh = out
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(render(row))
    finally:
        if fh is not out:
            fh.close()
    return EXIT_OK


def cmd_oracle_compare(args, out) -> int:
    shape = _shape(args)
    cluster_tol, _ = _tolerances(args)
    m = _laplacian(shape)
    values = {
        "eigensolve": lambda1(eigensolve(m, cluster_tol)[0]),
        "charpoly": charpoly_roots(m).lambda1,
        "montecarlo": rayleigh_montecarlo_upper(m, args.samples, args.seed).lambda1,
    }
    names = list(values)
    worst = max(
        abs(values[a] - values[b]) / max(abs(values[a]), abs(values[b]))
        for i, a in enumerate(names) for b in names[i + 1:]
    )
    status = EXIT_OK if worst <= AGREEMENT_TOL else EXIT_DISAGREE
    if args.json:
        out.write(json.dumps({"lambda1": values, "max_relative_gap": worst}) + "\n")
        return status
    style = Style(out)
    for k, v in values.items():
        out.write(f"{k:<12} {fmt(v)}\n")
    label = style("agree", "32") if status == EXIT_OK else style("DISAGREE", "31")
    out.write(f"max relative gap {worst:.3e} ({label})\n")
    return status


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="JSON document (polygon or star)")
    p.add_argument("--family", choices=sorted(FAMILY_PARAMS), help="build a shape instead of reading a file")
    p.add_argument("--params", nargs="+", metavar="P", help="family parameters, e.g. --family regular --params 5 1")


def _add_tols(p: argparse.ArgumentParser, eq: bool = True) -> None:
    p.add_argument("--tol", type=float, help="sets the cluster and equality tolerances together")
    p.add_argument("--cluster-tol", type=float, help=f"eigenvalue clustering (default {DEFAULT_CLUSTER_TOL:g})")
    if eq:
        p.add_argument("--eq-tol", type=float, help=f"equality test, relative to energy (default {DEFAULT_EQ_TOL:g})")
    p.add_argument("--json", action="store_true", help="emit one JSON object")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reillyspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues with multiplicities")
    _add_source(p)
    _add_tols(p, eq=False)
    p.add_argument("--method", choices=("laplacian", "transfer", "both"), default="laplacian")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("reilly", help="Reilly residual and equality class")
    _add_source(p)
    _add_tols(p)
    p.set_defaults(func=cmd_reilly)

    p = sub.add_parser("sweep", help="CSV table over a family parameter grid")
    p.add_argument("family", choices=SWEEP_FAMILIES)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, help="grid size (integer families default to every integer)")
    p.add_argument("--length", type=float, default=1.0, help="side (regular) or edge length (star)")
    p.add_argument("--csv", help="output path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--tol", type=float)
    p.add_argument("--cluster-tol", type=float)
    p.add_argument("--eq-tol", type=float)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-compare", help="lambda1 from three independent solvers")
    _add_source(p)
    _add_tols(p, eq=False)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except ValidationError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except ReillyError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
