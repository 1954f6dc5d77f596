"""Command-line entry point: ``geonum <command> ...``.

Every command prints one JSON report (stable key order) on stdout. Exit
status is 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from . import core, gso, minima, numtheory, packing, voronoi
from .errors import GeonumError

# subcommand -> library operations it exposes
DISPATCH: dict[str, tuple[str, ...]] = {
    "det": ("make_lattice", "determinant_squared", "same_lattice", "point_count_ratio"),
    "gso": ("gram_schmidt", "gso_triangular", "gso_min_norm_sq"),
    "svp": ("shortest_vector", "enumerate_below"),
    "minima": ("successive_minima",),
    "bounds": ("bounds_report",),
    "hermite": ("hermite_exact", "hermite_bounds"),
    "density": ("packing_density", "hermite_invariant", "ball_volume"),
    "hlawka": ("minkowski_hlawka_bound",),
    "voronoi": ("relevant_vectors", "in_voronoi_cell"),
    "radii": ("radius_report", "covering_radius_estimate"),
    "two-squares": ("sqrt_minus_one_mod_p", "two_squares"),
    "four-squares": ("yz_witness", "four_squares", "euler_four_square_product"),
    "approx": ("dirichlet_approx",),
    "collide": ("reduce_mod_mesh", "blichfeldt_collision"),
}


class UsageError(Exception):
    pass


def fmt_float(x: float) -> float:
    return float(f"{float(x):.12g}")


def q(x) -> str:
    return str(Fraction(x))


def exact(out: dict, key: str, value) -> None:
    """Store an exact rational as ``"p/q"`` plus its float shadow."""
    out[key] = q(value)
    out[key + "_approx"] = fmt_float(value)


def qvec(v) -> list[str]:
    return [q(t) for t in v]


def _checks(checks) -> list[dict]:
    return [
        {"name": c.name, "lhs": fmt_float(c.lhs), "rhs": fmt_float(c.rhs), "holds": c.holds,
         "precision": c.precision}
        for c in checks
    ]


def _load(path: str) -> core.LatticeBasis:
    try:
        rows = core.read_matrix(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return core.make_lattice(rows)


def _scalar(text: str):
    try:
        return core.to_fraction(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _integer(text: str) -> int:
    v = _scalar(text)
    if v.denominator != 1:
        raise UsageError(f"expected an integer, got {text}")
    return int(v)


def _basis_inputs(path: str, lattice: core.LatticeBasis) -> dict:
    return {"basis_file": path, "basis": [qvec(r) for r in lattice.vectors]}


def cmd_det(args):
    lat = _load(args.basis)
    det = core.lattice_determinant(lat)
    res = {"rank": lat.rank, "ambient_dim": lat.ambient_dim, "complete": lat.is_complete}
    exact(res, "det_sq", det.squared)
    res["det"] = q(det.exact) if det.exact is not None else None
    res["det_approx"] = fmt_float(det.approx)
    inputs = _basis_inputs(args.basis, lat)
    if args.compare:
        other = _load(args.compare)
        eq = core.same_lattice(lat, other)
        inputs["compare_file"] = args.compare
        res["same_lattice"] = eq.same
        res["unimodular"] = [list(r) for r in eq.witness.matrix] if eq.witness else None
    if args.count_radius is not None:
        pc = core.point_count_ratio(lat, _scalar(args.count_radius), budget=args.enum_budget)
        inputs["count_radius"] = args.count_radius
        res["point_count"] = {"count": pc.count, "ball_volume": fmt_float(pc.ball_volume),
                              "ratio": fmt_float(pc.ratio)}
    return inputs, res, None


def cmd_gso(args):
    lat = _load(args.basis)
    data = gso.gram_schmidt(lat)
    res = {
        "tilde_vectors": [qvec(v) for v in data.tilde_vectors],
        "mu": [qvec(r) for r in data.mu],
        "tilde_norms_sq": qvec(data.tilde_norms_sq),
        "triangular_sq": [[q(e.sign * e.square) for e in row] for row in gso.gso_triangular(lat)],
    }
    exact(res, "min_norm_sq", gso.gso_min_norm_sq(lat))
    return _basis_inputs(args.basis, lat), res, None


def cmd_svp(args):
    lat = _load(args.basis)
    sv = minima.shortest_vector(lat, args.norm, budget=args.enum_budget)
    res = {"norm": args.norm, "coefficients": list(sv.coefficients), "vector": qvec(sv.vector)}
    exact(res, "lambda1_sq", sv.lambda1_sq)
    inputs = _basis_inputs(args.basis, lat)
    if args.radius_sq is not None:
        r = _scalar(args.radius_sq)
        inputs["radius_sq"] = q(r)
        res["below"] = [list(x) for x in minima.enumerate_below(lat, r, args.norm, budget=args.enum_budget)]
    return inputs, res, None


def cmd_minima(args):
    lat = _load(args.basis)
    rep = minima.successive_minima(lat, budget=args.enum_budget)
    res = {
        "lambda_sq": qvec(rep.lambda_sq),
        "lambda_approx": [fmt_float(v) for v in rep.lambdas],
        "witnesses": [list(w) for w in rep.witnesses],
        "vectors": [qvec(v) for v in rep.vectors],
    }
    return _basis_inputs(args.basis, lat), res, None


def cmd_bounds(args):
    lat = _load(args.basis)
    rep = minima.bounds_report(lat, budget=args.enum_budget)
    res = {"dimension": rep.dimension, "lambda_sq": qvec(rep.minima.lambda_sq)}
    exact(res, "det_sq", rep.det_sq)
    exact(res, "gso_min_sq", rep.gso_min_sq)
    exact(res, "linf_lambda1_sq", rep.linf_lambda1_sq)
    return _basis_inputs(args.basis, lat), res, _checks(rep.checks)


def cmd_hermite(args):
    n = _integer(args.n)
    hb = packing.hermite_bounds(n)
    res = {
        "blichfeldt_upper": fmt_float(hb.blichfeldt_upper),
        "kitaoka_upper": fmt_float(hb.kitaoka_upper),
        "asymptotic_lower": fmt_float(hb.asymptotic_lower),
        "asymptotic_upper": fmt_float(hb.asymptotic_upper),
        "approx": fmt_float(hb.approx),
    }
    verdicts = None
    if hb.exact_gamma_n_pow_n is not None:
        exact(res, "gamma_n_pow_n", packing.hermite_exact(n))
        res["gamma_n"] = fmt_float(hb.exact_gamma)
        verdicts = [
            {"name": name, "lhs": fmt_float(hb.exact_gamma), "rhs": fmt_float(up),
             "holds": hb.exact_gamma <= up, "precision": "numeric"}
            for name, up in (("blichfeldt_upper", hb.blichfeldt_upper), ("kitaoka_upper", hb.kitaoka_upper))
        ]
    else:
        res["gamma_n_pow_n"] = None
    return {"n": n}, res, verdicts


def cmd_density(args):
    lat = _load(args.basis)
    l1 = minima.shortest_vector(lat, budget=args.enum_budget).lambda1_sq
    res = {
        "packing_density": fmt_float(packing.packing_density(lat)),
        "hermite_invariant": fmt_float(packing.hermite_invariant(lat)),
        "ball_volume": fmt_float(packing.ball_volume(lat.rank, float(l1) ** 0.5 / 2)),
    }
    exact(res, "lambda1_sq", l1)
    exact(res, "hermite_invariant_pow_n", packing.hermite_invariant_pow(lat))
    verdicts = None
    if lat.rank in packing.HERMITE_POW_TABLE:
        lhs, rhs = packing.hermite_invariant_pow(lat), packing.hermite_exact(lat.rank)
        verdicts = [{"name": "hermite_table", "lhs": fmt_float(lhs), "rhs": fmt_float(rhs),
                     "holds": lhs <= rhs, "precision": "exact"}]
    return _basis_inputs(args.basis, lat), res, verdicts


def cmd_hlawka(args):
    n = _integer(args.n)
    return {"n": n}, {"density_lower": fmt_float(packing.minkowski_hlawka_bound(n)),
                      "zeta": fmt_float(packing.zeta(n))}, None


def cmd_voronoi(args):
    lat = _load(args.basis)
    rel = voronoi.relevant_vectors(lat, budget=args.enum_budget)
    res = {
        "count_with_signs": rel.count_with_signs,
        "relevant": [{"vector": qvec(v), "coefficients": list(c), "coset": list(k)}
                     for v, c, k in zip(rel.vectors, rel.coefficients, rel.coset_index)],
    }
    inputs = _basis_inputs(args.basis, lat)
    if args.point:
        pt = [_scalar(t) for t in args.point]
        if len(pt) != lat.ambient_dim:
            raise UsageError(f"--point needs {lat.ambient_dim} coordinates")
        inputs["point"] = qvec(pt)
        res["in_cell"] = voronoi.in_voronoi_cell(pt, lat, rel)
    return inputs, res, None


def cmd_radii(args):
    lat = _load(args.basis)
    rep = voronoi.radius_report(lat, args.grid, budget=args.enum_budget)
    res = {"volume_lower_sq": fmt_float(rep.volume_lower_sq),
           "covering_estimate": None if rep.covering_estimate is None else fmt_float(rep.covering_estimate)}
    exact(res, "packing_radius_sq", rep.packing_radius_sq)
    exact(res, "covering_lower_sq", rep.covering_lower_sq)
    exact(res, "covering_upper_sq", rep.covering_upper_sq)
    inputs = _basis_inputs(args.basis, lat)
    inputs["grid"] = args.grid
    return inputs, res, _checks(rep.checks)


def cmd_two_squares(args):
    p = _integer(args.p)
    ts = numtheory.two_squares(p, budget=args.enum_budget)
    res = {"a": ts.a, "b": ts.b}
    if p != 2:
        res["q"] = numtheory.sqrt_minus_one_mod_p(p)
        exact(res, "lattice_det_sq", ts.lattice_det_sq)
        exact(res, "lattice_lambda1_sq", ts.lattice_lambda1_sq)
    verdicts = [{"name": "sum_of_squares", "lhs": ts.a**2 + ts.b**2, "rhs": p,
                 "holds": ts.a**2 + ts.b**2 == p, "precision": "exact"}]
    return {"p": p}, res, verdicts


def cmd_four_squares(args):
    x = _integer(args.x)
    fs = numtheory.four_squares(x, budget=args.enum_budget)
    res = {"parts": list(fs.parts), "lattice_vector": list(fs.lattice_vector) if fs.lattice_vector else None}
    inputs = {"x": x}
    if x > 2 and numtheory.is_prime(x):
        res["yz_witness"] = list(numtheory.yz_witness(x))
    if args.times is not None:
        y = _integer(args.times)
        other = numtheory.four_squares(y, budget=args.enum_budget)
        inputs["times"] = y
        res["times_parts"] = list(other.parts)
        res["product_parts"] = list(numtheory.euler_four_square_product(fs.parts, other.parts))
    return inputs, res, None


def cmd_approx(args):
    alpha = _scalar(args.alpha)
    qmax = _integer(args.Q)
    ap = numtheory.dirichlet_approx(alpha, qmax)
    res = {"p": ap.p, "q": ap.q}
    exact(res, "error", ap.error)
    verdicts = [
        {"name": "dirichlet_bound", "lhs": fmt_float(ap.error), "rhs": fmt_float(Fraction(1, qmax)),
         "holds": ap.error <= Fraction(1, qmax), "precision": "exact"},
        {"name": "dirichlet_bound_qQ", "lhs": fmt_float(ap.error), "rhs": fmt_float(Fraction(1, ap.q * qmax)),
         "holds": ap.error <= Fraction(1, ap.q * qmax), "precision": "exact"},
    ]
    return {"alpha": q(alpha), "Q": qmax}, res, verdicts


def cmd_collide(args):
    lat = _load(args.basis)
    try:
        points = core.read_matrix(args.points)
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.points}: {exc}") from None
    meshes = [core.reduce_mod_mesh(p, lat) for p in points]
    pair = core.blichfeldt_collision(points, lat)
    res = {
        "reduced": [qvec(m.reduced) for m in meshes],
        "offsets": [list(m.offset) for m in meshes],
        "collision": list(pair) if pair else None,
    }
    inputs = _basis_inputs(args.basis, lat)
    inputs["points_file"] = args.points
    return inputs, res, None


COMMANDS: dict[str, Callable] = {
    "det": cmd_det, "gso": cmd_gso, "svp": cmd_svp, "minima": cmd_minima, "bounds": cmd_bounds,
    "hermite": cmd_hermite, "density": cmd_density, "hlawka": cmd_hlawka, "voronoi": cmd_voronoi,
    "radii": cmd_radii, "two-squares": cmd_two_squares, "four-squares": cmd_four_squares,
    "approx": cmd_approx, "collide": cmd_collide,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--norm", choices=("l2", "linf"), default="l2")
    common.add_argument("--enum-budget", type=int, default=minima.DEFAULT_BUDGET, metavar="N")
    common.add_argument("--grid", type=int, default=None, metavar="N")
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")

    parser = argparse.ArgumentParser(prog="geonum", description="Exact geometry-of-numbers toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("det", "lattice determinant, basis comparison, point counting")
    p.add_argument("basis")
    p.add_argument("--compare", metavar="FILE")
    p.add_argument("--count-radius", metavar="R")
    add("gso", "Gram-Schmidt data").add_argument("basis")
    p = add("svp", "shortest vector (and vectors below a radius)")
    p.add_argument("basis")
    p.add_argument("--radius-sq", metavar="R2")
    add("minima", "successive minima").add_argument("basis")
    add("bounds", "Minkowski-family inequality checks").add_argument("basis")
    add("hermite", "Hermite constant table and bounds").add_argument("n")
    add("density", "packing density and Hermite invariant").add_argument("basis")
    add("hlawka", "Minkowski-Hlawka density value").add_argument("n")
    p = add("voronoi", "relevant vectors and cell membership")
    p.add_argument("basis")
    p.add_argument("--point", nargs="+", metavar="X")
    add("radii", "packing and covering radii").add_argument("basis")
    add("two-squares", "p = a^2 + b^2").add_argument("p")
    p = add("four-squares", "x as a sum of four squares")
    p.add_argument("x")
    p.add_argument("--times", metavar="Y")
    p = add("approx", "Dirichlet approximation")
    p.add_argument("alpha")
    p.add_argument("Q")
    p = add("collide", "fundamental-mesh reduction and lattice-difference collisions")
    p.add_argument("basis")
    p.add_argument("points")
    return parser


def render(report: dict, pretty: bool) -> str:
    if not pretty:
        return json.dumps(report, sort_keys=True, indent=2)
    lines = [f"command: {report['command']}"]
    for section in ("inputs", "results"):
        for key in sorted(report.get(section) or {}):
            lines.append(f"  {key:<28} {report[section][key]}")
    for v in report.get("verdicts") or []:
        mark = "ok  " if v["holds"] else "FAIL"
        lines.append(f"  [{mark}] {v['name']:<28} {v['lhs']} <= {v['rhs']}")
    if "error" in report:
        lines.append(f"  error: {report['error']['name']}: {report['error']['message']}")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report: dict = {"command": args.command}
    try:
        inputs, results, verdicts = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GeonumError as exc:
        report["error"] = {"name": exc.name, "message": str(exc)}
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        print(render(report, args.pretty))
        return 1
    except ValueError as exc:  # out-of-domain scalar such as Q = 0
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    report.update(inputs=inputs, results=results, verdicts=verdicts)
    print(render(report, args.pretty))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
