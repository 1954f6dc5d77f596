import json
import subprocess
import sys

import pytest

import geonum
from geonum import cli


@pytest.fixture
def basis(tmp_path):
    def write(rows, name="basis.txt"):
        path = tmp_path / name
        path.write_text("# test basis\n" + "\n".join(" ".join(str(x) for x in r) for r in rows) + "\n")
        return str(path)

    return write


def invoke(capsys, *argv):
    code = cli.run([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_svp_identity(capsys, basis):
    code, rep = invoke(capsys, "svp", basis([[1, 0], [0, 1]]))
    assert code == 0 and rep["results"]["lambda1_sq"] == "1"
    assert rep["command"] == "svp" and rep["inputs"]["basis"] == [["1", "0"], ["0", "1"]]


def test_svp_linf_and_radius(capsys, basis):
    code, rep = invoke(capsys, "svp", basis([[1, 0], [0, 1]]), "--norm", "linf", "--radius-sq", "1")
    assert code == 0
    assert sorted(map(tuple, rep["results"]["below"])) == [(0, 1), (1, -1), (1, 0), (1, 1)]


def test_two_squares(capsys):
    code, rep = invoke(capsys, "two-squares", 13)
    assert code == 0 and (rep["results"]["a"], rep["results"]["b"]) == (2, 3)
    assert rep["results"]["lattice_lambda1_sq"] == "13"


def test_two_squares_domain_error(capsys):
    code, rep = invoke(capsys, "two-squares", 7)
    assert code == 1 and rep["error"]["name"] == "NotApplicable"
    code, rep = invoke(capsys, "two-squares", 15)
    assert code == 1 and rep["error"]["name"] == "NotPrime"


def test_bounds(capsys, basis):
    code, rep = invoke(capsys, "bounds", basis([[2, 0], [1, 2]]))
    assert code == 0
    assert all(v["holds"] for v in rep["verdicts"])
    names = {v["name"] for v in rep["verdicts"]}
    assert {"theorem1_gso_lower", "corollary4_ball_volume", "theorem4_upper"} <= names


def test_det_compare_and_count(capsys, basis):
    a = basis([[1, 0], [0, 1]])
    b = basis([[1, 1], [0, 1]], "other.txt")
    code, rep = invoke(capsys, "det", a, "--compare", b, "--count-radius", "1")
    res = rep["results"]
    assert code == 0 and res["det_sq"] == "1" and res["same_lattice"] is True
    assert res["unimodular"] == [[1, 1], [0, 1]]
    assert res["point_count"]["count"] == 5


def test_gso_and_minima(capsys, basis):
    path = basis([[2, 0], [1, 2]])
    code, rep = invoke(capsys, "gso", path)
    assert code == 0 and rep["results"]["tilde_norms_sq"] == ["4", "4"]
    assert rep["results"]["mu"][1][0] == "1/2"
    code, rep = invoke(capsys, "minima", path)
    assert code == 0 and rep["results"]["lambda_sq"] == ["4", "5"]


def test_hermite_hlawka_density(capsys, basis):
    code, rep = invoke(capsys, "hermite", 2)
    assert code == 0 and rep["results"]["gamma_n_pow_n"] == "4/3"
    code, rep = invoke(capsys, "hermite", 12)
    assert code == 0 and rep["results"]["gamma_n_pow_n"] is None
    code, rep = invoke(capsys, "hlawka", 2)
    assert rep["results"]["density_lower"] == pytest.approx(0.822467033424)
    code, rep = invoke(capsys, "hlawka", 1)
    assert code == 1 and rep["error"]["name"] == "NotDefined"
    code, rep = invoke(capsys, "density", basis([[1, 0], [0, 1]]))
    assert rep["results"]["packing_density"] == pytest.approx(0.785398163397)


def test_voronoi_and_radii(capsys, basis):
    path = basis([[1, 0], [0, 1]])
    code, rep = invoke(capsys, "voronoi", path, "--point", "2/5", "2/5")
    assert code == 0 and rep["results"]["count_with_signs"] == 4 and rep["results"]["in_cell"] is True
    code, rep = invoke(capsys, "voronoi", path, "--point", "3/5", "0")
    assert rep["results"]["in_cell"] is False
    code, rep = invoke(capsys, "radii", path, "--grid", "16")
    assert code == 0 and rep["results"]["covering_upper_sq"] == "1/2"
    assert rep["results"]["covering_estimate"] == pytest.approx(0.707106781187)


def test_four_squares_and_approx(capsys):
    code, rep = invoke(capsys, "four-squares", 7, "--times", 3)
    res = rep["results"]
    assert code == 0 and res["parts"] == [2, 1, 1, 1]
    assert sum(t * t for t in res["product_parts"]) == 21
    code, rep = invoke(capsys, "approx", "314159265/100000000", 10)
    assert (rep["results"]["p"], rep["results"]["q"]) == (22, 7)
    assert all(v["holds"] for v in rep["verdicts"])


def test_collide(capsys, basis, tmp_path):
    pts = tmp_path / "points.txt"
    pts.write_text("0 0\n2 4\n1 1\n")
    code, rep = invoke(capsys, "collide", basis([[2, 0], [1, 2]]), str(pts))
    assert code == 0 and rep["results"]["collision"] == [0, 1]


def test_pretty(capsys, basis):
    code, out = invoke(capsys, "bounds", basis([[1, 0], [0, 1]]), "--pretty")
    assert code == 0 and "command: bounds" in out and "[ok  ]" in out


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["svp"],
    ["svp", "/nonexistent/basis.txt"],
    ["two-squares", "1/2"],
    ["approx", "1/2", "0"],
    ["four-squares", "0"],
])
def test_usage_errors(capsys, argv):
    assert cli.run(argv) == 2


def test_bad_matrix_file(capsys, basis, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 0\n0 x\n")
    assert cli.run(["svp", str(path)]) == 2
    assert cli.run(["svp", basis([[1, 2], [2, 4]])]) == 1  # dependent rows are a domain error


def test_deterministic_bytes(basis):
    path = basis([[3, 1, 0], [1, 4, 1], [0, 1, 5]])
    outs = [
        subprocess.run([sys.executable, "-m", "geonum", "bounds", path],
                       capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]


def test_dispatch_table_covers_every_operation():
    ops = [op for names in cli.DISPATCH.values() for op in names]
    assert len(ops) == len(set(ops)), "an operation is reachable from two subcommands"
    assert set(cli.DISPATCH) == set(cli.COMMANDS)
    public = {
        "make_lattice", "determinant_squared", "same_lattice", "reduce_mod_mesh",
        "blichfeldt_collision", "point_count_ratio", "gram_schmidt", "gso_triangular",
        "gso_min_norm_sq", "enumerate_below", "shortest_vector", "successive_minima",
        "bounds_report", "ball_volume", "hermite_exact", "hermite_bounds", "hermite_invariant",
        "packing_density", "minkowski_hlawka_bound", "relevant_vectors", "in_voronoi_cell",
        "radius_report", "covering_radius_estimate", "sqrt_minus_one_mod_p", "two_squares",
        "dirichlet_approx", "euler_four_square_product", "yz_witness", "four_squares",
    }
    assert set(ops) == public
    for op in ops:
        assert callable(getattr(geonum, op))
