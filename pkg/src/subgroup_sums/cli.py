"""Command line interface.

    subgroup-sums sums      --d 3 --m 1,-1 --q 61 --range full,full
    subgroup-sums verify    --suite lemma21|identity|myerson|weil ...
    subgroup-sums equidist  --d 3 --m 1 --q 326041 --mc 1000000 --bins 64
    subgroup-sums geometry  --hypocycloid 3 --resolution 512

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 admissibility error.
Files go to ``--out`` or, by default, to ``$SUBGROUP_SUMS_OUT`` (else the
current directory). Outputs depend only on the recorded config, never on the
worker count, and carry no timestamps.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .cyclotomic import Polynomial, cyclotomic_polynomial, euler_phi
from .equidist import (
    GridSpec,
    histogram_distance,
    myerson_certificate,
    myerson_check,
    tuple_cloud,
    weyl_scan,
)
from .errors import NotAdmissible, NotOddPrimePower, SubgroupSumsError
from .expsums import SumFamilySpec, family_chunks, family_values, identity_residuals, kloosterman_values
from .geometry import (
    hypocycloid_region,
    image_contains,
    minkowski_region,
    write_boundary_csv,
    write_raster_pgm,
)
from .laurent import ExponentVector, build_f, build_g, sample_image
from .modular import element_of_order, elements_of_order, enumerate_admissible, factor_prime_power

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ADMISSIBILITY = 0, 1, 2, 3
OUT_ENV = "SUBGROUP_SUMS_OUT"


def int_list(text: str) -> list[int]:
    """``"5"``, ``"3,5,7"`` or an inclusive range ``"3..12"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def q_list(text: str | None, d: int, qmax: int) -> list[int]:
    """Explicit moduli, or every ``d``-admissible ``q`` in ``lo..hi`` (default ``3..qmax``)."""
    if text is None:
        return [m.q for m in enumerate_admissible(d, 3, qmax)]
    if ".." in text:
        lo, hi = text.split("..")
        return [m.q for m in enumerate_admissible(d, int(lo), int(hi))]
    return [int(v) for v in text.split(",")]


def _out_path(args, default_name: str) -> Path:
    path = Path(args.out) if args.out else Path(os.environ.get(OUT_ENV, ".")) / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def _ranges(args, n: int) -> list[str]:
    return args.range.split(",") if args.range else ["full"] * n


# --- sums -------------------------------------------------------------------


def summarize(values: np.ndarray, d: int, mvec: ExponentVector) -> dict:
    """Count, max ``|theta|`` and the fraction inside the image of ``g_d`` (``None`` if not applicable)."""
    values = np.asarray(values, dtype=np.complex128)
    inside = image_contains(d, values) if mvec.is_coprime_with(d) and len(values) else None
    return {
        "count": int(len(values)),
        "max_abs": float(np.abs(values).max()) if len(values) else 0.0,
        "containment_rate": None if inside is None else float(np.mean(inside)),
    }


def read_sums_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Parameters and values of a ``sums`` CSV."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    n = len(rows[0]) - 2
    params = np.array([[int(v) for v in r[:n]] for r in rows[1:]], dtype=np.int64).reshape(-1, n)
    values = np.array([complex(float(r[n]), float(r[n + 1])) for r in rows[1:]], dtype=np.complex128)
    return params, values


def cmd_sums(args) -> int:
    mvec = ExponentVector.parse(args.m)
    mod = factor_prime_power(args.q)
    w = element_of_order(mod, args.d)
    spec = SumFamilySpec(args.d, mvec, tuple(_ranges(args, len(mvec))))
    config = {
        "command": "sums",
        "d": args.d,
        "m": list(mvec.m),
        "q": mod.q,
        "w": w.w,
        "ranges": [str(r) for r in spec.ranges],
        "format": args.format,
    }
    name = f"sums-d{args.d}-m{'_'.join(map(str, mvec.m))}-q{mod.q}.{args.format}"
    path = _out_path(args, name)
    n = len(mvec)
    chunks = []
    if args.format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join([f"a_{i + 1}" for i in range(n)] + ["re", "im"]) + "\n")
            for params, _, values in family_chunks(spec, mod, w, args.workers):
                lines = [
                    ",".join(map(str, p.tolist())) + f",{float(v.real)!r},{float(v.imag)!r}\n"
                    for p, v in zip(params, values)
                ]
                fh.write("".join(lines))
                chunks.append(values)
    else:
        params, values = family_values(spec, mod, w, args.workers)
        records = [{"a": p.tolist(), "re": float(v.real), "im": float(v.imag)} for p, v in zip(params, values)]
        chunks.append(values)
        _write_json({"kind": "sums", "config": config, "records": records}, path)
    values = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.complex128)
    summary = summarize(values, args.d, mvec)
    _write_json({"kind": "sums", "config": config, "summary": summary}, Path(f"{path}.meta.json"))
    print(f"sums: {summary['count']} values, max |theta| = {summary['max_abs']!r}, containment = {summary['containment_rate']}")
    print(f"wrote {path}")
    rate = summary["containment_rate"]
    return EXIT_FAIL if rate is not None and rate < 1.0 else EXIT_PASS


# --- verify -----------------------------------------------------------------


def _suite_lemma21(args) -> list[dict]:
    checks = []
    for d in int_list(args.d or "1..12"):
        phi = cyclotomic_polynomial(d)
        for mod in enumerate_admissible(d, 3, args.qmax):
            ws = elements_of_order(mod, d)
            ok = all(phi.eval_mod(w.w, mod.q) == 0 for w in ws)
            checks.append({"d": d, "q": mod.q, "elements": len(ws), "pass": ok})
    return checks


def _suite_identity(args) -> list[dict]:
    mvec = ExponentVector.parse(args.m)
    checks = []
    for d in int_list(args.d or "5"):
        for q in q_list(args.q, d, args.qmax):
            w = element_of_order(q, d)
            params = _rng(args.seed, d, q).integers(0, q, size=(args.trials, len(mvec)))
            res_f, res_g, _ = identity_residuals(q, w, mvec, params)
            worst = float(res_f.max()) if res_g is None else float(max(res_f.max(), res_g.max()))
            checks.append(
                {
                    "d": d,
                    "q": q,
                    "max_residual_f": float(res_f.max()),
                    "max_residual_g": None if res_g is None else float(res_g.max()),
                    "tolerance": 1e-9 * d,
                    "pass": worst < 1e-9 * d,
                }
            )
    return checks


def random_polynomial(rng: np.random.Generator, degree_bound: int, bound: int = 10) -> Polynomial:
    """Nonzero integer polynomial of degree below ``degree_bound`` with coefficients in ``[-bound, bound]``."""
    while True:
        coeffs = rng.integers(-bound, bound + 1, size=degree_bound).tolist()
        if any(coeffs):
            return Polynomial(coeffs)


def _suite_myerson(args) -> list[dict]:
    checks = []
    for d in int_list(args.d or "3,4,5,7"):
        rng = _rng(args.seed, d)
        for t in range(args.trials):
            f = random_polynomial(rng, euler_phi(d))
            cert = myerson_certificate(f, d)
            results = myerson_check(cert, (3, args.qmax), all_elements=True)
            checks.append(
                {
                    "d": d,
                    "f": str(f),
                    "n": cert.n,
                    "bezout": cert.verify(),
                    "checked": len(results),
                    "failures": [[r.q.q, r.w] for r in results if not r.passed],
                    "pass": cert.verify() and all(r.passed for r in results),
                }
            )
    return checks


def _suite_weil(args) -> list[dict]:
    checks = []
    for mod in enumerate_admissible(1, 3, args.qmax):
        q, p = mod.q, mod.p
        rng = _rng(args.seed, q)
        k = rng.integers(0, mod.phi_q, size=(args.trials, 2))
        pairs = k + k // (p - 1) + 1  # k-th unit in increasing order
        k = np.abs(kloosterman_values(mod, pairs[:, 0], pairs[:, 1]))
        bound = 2 * math.sqrt(q)
        checks.append({"q": q, "max_abs": float(k.max()), "bound": bound, "pass": bool(k.max() <= bound + 1e-6)})
    return checks


SUITES = {
    "lemma21": _suite_lemma21,
    "identity": _suite_identity,
    "myerson": _suite_myerson,
    "weil": _suite_weil,
}


def cmd_verify(args) -> int:
    checks = SUITES[args.suite](args)
    ok = all(c["pass"] for c in checks)
    config = {
        "command": "verify",
        "suite": args.suite,
        "d": args.d,
        "m": args.m,
        "q": args.q,
        "qmax": args.qmax,
        "trials": args.trials,
        "seed": args.seed,
    }
    path = _out_path(args, f"verify-{args.suite}.json")
    _write_json({"kind": "verify", "suite": args.suite, "config": config, "checks": checks, "pass": ok}, path)
    failed = sum(not c["pass"] for c in checks)
    print(f"verify {args.suite}: {len(checks)} checks, {failed} failed -> {'PASS' if ok else 'FAIL'}")
    print(f"wrote {path}")
    return EXIT_PASS if ok else EXIT_FAIL


# --- equidist ---------------------------------------------------------------


def cmd_equidist(args) -> int:
    mvec = ExponentVector.parse(args.m)
    mod = factor_prime_power(args.q)
    w = element_of_order(mod, args.d)
    ranges = _ranges(args, len(mvec))
    spec = SumFamilySpec(args.d, mvec, tuple(ranges))
    coprime = mvec.is_coprime_with(args.d)
    height = args.height if args.height is not None else (3 if args.weyl_only else 0)
    grid = GridSpec.for_degree(args.d, args.bins)
    metrics: dict = {}
    thresholds: dict = {}
    passed = True

    if not args.weyl_only:
        _, values = family_values(spec, mod, w, args.workers)
        reference = sample_image(build_g(args.d) if coprime else build_f(args.d, mvec), args.mc, args.seed, args.workers)
        metrics["count"] = int(len(values))
        metrics["reference"] = "g_d" if coprime else "f_dm"
        metrics["reference_samples"] = args.mc
        metrics["distance"] = histogram_distance(values, reference, grid)
        if args.max_distance is not None:
            thresholds["distance"] = args.max_distance
            passed &= metrics["distance"] < args.max_distance
    if height > 0:
        cloud = tuple_cloud(mod, w, mvec, ranges, "summed" if coprime else "blocked")
        report = weyl_scan(cloud, height)
        metrics["weyl_height"] = height
        metrics["weyl_vectors"] = len(report.moduli)
        metrics["weyl_max"] = report.max_modulus
        metrics["weyl_argmax"] = list(report.argmax) if report.argmax else None
        if args.max_weyl is not None:
            thresholds["weyl_max"] = args.max_weyl
            passed &= metrics["weyl_max"] <= args.max_weyl
    config = {
        "command": "equidist",
        "w": w.w,
        "mode": "summed" if coprime else "blocked",
        "mc": args.mc,
        "grid": {"bins": grid.bins, "extent": grid.extent},
        "weyl_only": args.weyl_only,
        "height": height,
    }
    report = {
        "kind": "equidist",
        "q": mod.q,
        "d": args.d,
        "m": list(mvec.m),
        "ranges": [str(r) for r in spec.ranges],
        "seed": args.seed,
        "metrics": metrics,
        "thresholds": thresholds,
        "pass": bool(passed),
        "config": config,
    }
    path = _out_path(args, f"equidist-d{args.d}-m{'_'.join(map(str, mvec.m))}-q{mod.q}.json")
    _write_json(report, path)
    shown = {k: metrics[k] for k in ("distance", "weyl_max") if k in metrics}
    print(f"equidist: {shown} -> {'PASS' if passed else 'FAIL'}")
    print(f"wrote {path}")
    return EXIT_PASS if passed else EXIT_FAIL


# --- geometry ---------------------------------------------------------------


def cmd_geometry(args) -> int:
    if args.hypocycloid is not None:
        region = hypocycloid_region(args.hypocycloid, args.resolution)
        path = _out_path(args, f"hypocycloid-{region.d}-M{region.resolution}.csv")
        write_boundary_csv(region, path)
        print(f"geometry: {len(region.boundary)}-point closed polyline of H_{region.d}")
    else:
        r, b = args.minkowski
        raster = minkowski_region(r, b, args.cell)
        path = _out_path(args, f"minkowski-{r}-{b}.pgm")
        write_raster_pgm(raster, path)
        rows, cols = raster.occupancy.shape
        print(f"geometry: {rows}x{cols} raster of {raster.label}, {int(raster.occupancy.sum())} cells occupied")
    print(f"wrote {path}")
    return EXIT_PASS


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help=f"output file (default: generated name in ${OUT_ENV} or .)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="threads (results do not depend on it)")

    parser = argparse.ArgumentParser(prog="subgroup-sums", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sums", parents=[common], help="tabulate a family of restricted sums")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", default="1", help="exponents, e.g. 1,-1")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--range", help="per coefficient: full | fixed:<a> | subgroup:<order>, comma separated")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("verify", parents=[common], help="run an exact verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--d", help="degree(s): 5, 3,4,5 or 3..12")
    p.add_argument("--m", default="1,-1")
    p.add_argument("--q", help="moduli: 151, 151,181 or lo..hi (admissible ones)")
    p.add_argument("--qmax", type=int, default=5000)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equidist", parents=[common], help="distance to the pushforward and Weyl scans")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", default="1")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--range")
    p.add_argument("--mc", type=int, default=100_000, help="reference Monte Carlo samples")
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--weyl-only", action="store_true")
    p.add_argument("--height", type=int, default=None, help="Weyl scan height (default 3 with --weyl-only, else 0)")
    p.add_argument("--max-distance", type=float, default=None)
    p.add_argument("--max-weyl", type=float, default=None)
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("geometry", parents=[common], help="export hypocycloid polylines and Minkowski rasters")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--hypocycloid", type=int, metavar="D")
    g.add_argument("--minkowski", type=int, nargs=2, metavar=("R", "B"))
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--cell", type=float, default=0.02)
    p.set_defaults(func=cmd_geometry)
    return parser


_DEFAULT_TRIALS = {"lemma21": 0, "identity": 1000, "myerson": 20, "weil": 200}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "verify" and args.trials is None:
        args.trials = _DEFAULT_TRIALS[args.suite]
    if args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (NotAdmissible, NotOddPrimePower) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except (SubgroupSumsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
