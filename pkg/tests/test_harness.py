import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkernel.config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, parse_config_text
from hkernel.errors import ConfigError, DomainError, IllConditionedError, UnknownSuiteError
from hkernel.harness import calibrate, gallery
from hkernel.harness.cli import main
from hkernel.harness.gallery import GALLERY_NAMES, gaussian_L_alpha
from hkernel.harness.report import (failed_report, make_report, reports_to_csv,
                                    reports_to_json)
from hkernel.harness.suites import RunConfig, list_checks, run_suite
from hkernel.harness.tabulate import parse_params, parse_range, render, tabulate
from hkernel.operators import Grid, OperatorParams, apply_L_alpha, sample

# --- gallery ------------------------------------------------------------------------


@pytest.mark.parametrize("name", GALLERY_NAMES)
@pytest.mark.parametrize("n", [1, 2])
def test_gallery_symmetries(name, n):
    f = gallery(name, n)
    assert f.check_symmetries(np.random.default_rng(0)) <= 1e-12
    edge = f(np.array([[f.z_radius] + [0.0] * (n - 1)]), np.array([0.0]))
    assert abs(edge[0]) < 2e-12


def test_gallery_unknown_and_bad_symmetry():
    with pytest.raises(DomainError):
        gallery("G9")
    f = gallery("G3")
    bad = type(f)("bad", f.func, 1, True, "even", 10.0, 22.0)
    with pytest.raises(DomainError):
        bad.check_symmetries(np.random.default_rng(1))


def test_gaussian_L_matches_stencils():
    # alpha = 0 only: the periodic |T| sees the slowly decaying tail of |T| G1
    g = Grid.symmetric(1, 1.0, 0.0625, 8.0, 256)
    field = sample(gallery("G1"), g)
    num = apply_L_alpha(OperatorParams(1, 0.0), field, order=6)
    exact = sample(gaussian_L_alpha(1, 0.0), g)
    assert num.interior_max(exact.values) < 1e-5


# --- reports -------------------------------------------------------------------------


finite = st.floats(-1e6, 1e6)


@given(finite, finite, st.floats(1e-12, 1.0), st.sampled_from(["abs", "rel", "scaled", "atleast"]))
def test_report_pass_flag_is_recomputable(lhs, rhs, tol, metric):
    r = make_report("x", "s", {}, lhs, rhs, tol, metric)
    assert r.recompute() == r.passed
    assert json.loads(reports_to_json([r]))[0]["passed"] == r.passed


def test_report_metrics():
    assert make_report("a", "s", {}, 1.0, 0.0, 1e-12, "rel").error == math.inf
    assert make_report("a", "s", {}, 0.0, 0.0, 0.0, "rel").passed
    assert make_report("a", "s", {}, 0.5, 0.0, 0.5, "scaled").passed
    assert make_report("a", "s", {}, 4.0, 3.5, 0.0, "atleast").passed
    assert not make_report("a", "s", {}, 3.0, 3.5, 0.1, "atleast").passed
    c = make_report("a", "s", {}, 1 + 2j, 1 + 2j, 0.0)
    assert c.lhs == [1.0, 2.0] and c.recompute()
    with pytest.raises(ValueError):
        make_report("a", "s", {}, 1.0, 1.0, 0.1, "bogus")


def test_failed_report_and_serialisation():
    r = failed_report("a", "s", {"n": np.int64(2)}, DomainError("nope"))
    assert not r.passed and r.error_code == "DOMAIN" and not r.recompute()
    ok = make_report("b", "s", {"alpha": np.float64(0.5)}, 1.0, 1.0, 0.0, wall_time=3.0)
    text = reports_to_json([r, ok])
    assert "wall_time" not in text
    assert json.loads(reports_to_json([ok], timing=True))[0]["wall_time"] == 3.0
    rows = list(csv.reader(io.StringIO(reports_to_csv([r, ok]))))
    assert rows[0][0] == "check_id" and len(rows) == 3


# --- suites --------------------------------------------------------------------------


def test_run_suite_is_deterministic():
    cfg = RunConfig(DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, None, None)
    a = reports_to_json(run_suite("group", cfg))
    b = reports_to_json(run_suite("group", RunConfig(DEFAULT_QUADRATURE, DEFAULT_TOLERANCES,
                                                     None, None, jobs=2)))
    assert a == b
    assert all(r["passed"] for r in json.loads(a))


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError) as exc:
        list_checks("nope")
    assert str(exc.value).startswith("unknown suite")


@pytest.mark.parametrize("suite", ["specfun", "identities"])
def test_fast_suites_pass(suite):
    cfg = RunConfig(DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, None, None)
    reports = run_suite(suite, cfg)
    assert reports and all(r.passed for r in reports), [r.check_id for r in reports if not r.passed]


# --- config ----------------------------------------------------------------------------


def test_config_parsing():
    quad, tol, extra = parse_config_text("grid_h = 0.125  # finer\nseed = 7\n\ncontour = 1e-9\n")
    assert quad.grid_h == 0.125 and extra == {"seed": 7} and tol.contour == 1e-9
    for bad in ("grid_h 0.1", "nonsense = 1", "grid_h = abc"):
        with pytest.raises(ConfigError):
            parse_config_text(bad)


# --- tabulation --------------------------------------------------------------------------


def test_parse_range():
    g = parse_range("x=0:2:5, t=1", ("x", "y", "t"))
    np.testing.assert_array_equal(g["x"], [0, 0.5, 1, 1.5, 2])
    assert g["y"].tolist() == [0.0] and g["t"].tolist() == [1.0]
    assert parse_range("x=0:1:0", ("x",))["x"].size == 0
    for bad in ("x", "q=1", "x=1:2", "x=0:1:-1", "x=a"):
        with pytest.raises(ConfigError):
            parse_range(bad, ("x", "y", "t"))


def test_parse_params():
    assert parse_params("n=2,alpha=0.5", "density") == {"n": 2, "alpha": 0.5}
    for bad in ("lam=1", "n=x", "n"):
        with pytest.raises(ConfigError):
            parse_params(bad, "density")


def test_tabulate_density_and_spherical():
    header, rows = tabulate("density", "x=0.5:2:4,y=0,t=0")
    assert header[0] == "x" and len(rows) == 4
    for row in rows:
        assert row[4] == pytest.approx(-math.pi / row[0] ** 2, rel=1e-12)
        assert row[6] < 1e-12
    _, rows = tabulate("spherical", "x=0,y=0,t=0", {"lam": 2.0, "k": 3})
    assert rows == [(0.0, 0.0, 0.0, 1.0, 0.0)]


def test_tabulate_errors_become_nan():
    header, rows = tabulate("density", "x=0,y=0,t=0:1:2")
    assert math.isnan(rows[0][4])
    text = render(header, rows, "json")
    assert json.loads(text)[0]["density_closed"] is None
    assert "nan" in render(header, rows, "csv")


def test_empty_range_is_header_only():
    header, rows = tabulate("psi", "theta=0:1:0")
    assert rows == []
    assert render(header, rows) == ",".join(header) + "\n"


# --- calibration -----------------------------------------------------------------------------


def test_calibrate_rejects_zero_function():
    def zero(z, t):
        return 0.0 * np.sum(np.abs(z), axis=-1) + 0.0 * t

    zero.n = 1
    with pytest.raises(IllConditionedError):
        calibrate(zero, 0.0, convolver=lambda pts: np.zeros(len(pts)))


@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_manufactured_kernel_recovers_unit_constant(alpha):
    # if f * Phi returned G1 itself, f = L_alpha G1 must give c = 1
    g = gallery("G1")
    f = gaussian_L_alpha(1, alpha)
    f.n = 1

    def conv(points):
        return np.array([g(q.z[None, :], np.array([q.t]))[0] for q in points])

    r = calibrate(f, alpha, convolver=conv, h=0.0625, t_count=256)
    assert abs(r.c - 1.0) <= 1e-6
    assert abs(r.c_imag) <= 1e-9


# --- CLI ---------------------------------------------------------------------------------------


def test_cli_verify_pass(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "group", "--out", str(out)]) == 0
    assert all(r["passed"] for r in json.loads(out.read_text()))
    assert "passed" in capsys.readouterr().err


def test_cli_verify_failure_exit_code(tmp_path):
    cfg = tmp_path / "c.conf"
    cfg.write_text("contour = 1e-300\npsi_series = 0.0\n")
    assert main(["verify", "--suite", "identities", "--config", str(cfg), "--n", "1",
                 "--out", str(tmp_path / "o.csv"), "--format", "csv"]) == 1


def test_cli_config_errors(tmp_path, capsys):
    assert main(["verify", "--suite", "nope"]) == 2
    assert "UNKNOWN_SUITE" in capsys.readouterr().err
    assert main(["verify", "--suite", "group", "--config", str(tmp_path / "missing")]) == 2
    bad = tmp_path / "bad.conf"
    bad.write_text("what = 1\n")
    assert main(["verify", "--suite", "group", "--config", str(bad)]) == 2
    assert main(["eval", "density", "--grid", "x=oops"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval", "nothing"])
    assert exc.value.code == 2


def test_cli_eval_and_pair(capsys):
    assert main(["eval", "density", "--grid", "x=1,y=0,t=0"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("x,y,t,cc_norm") and len(lines) == 2
    assert main(["pair", "--route", "angular", "--function", "G1"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["value"] == pytest.approx(-12.021286302176705, rel=1e-9)


def test_cli_numerical_error_exit_code():
    # alpha = n is a pole of the closed form but not of the operator; the angular
    # profile cannot be tabulated there for n = 2 and the error maps to exit 1
    assert main(["pair", "--route", "angular", "--function", "G1", "--n", "2",
                 "--alpha", "2.0"]) == 1
