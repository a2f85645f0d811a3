"""End-to-end tests of the command-line interface."""

import json

import numpy as np
import pytest

from curstat.cli import _fmt, main, read_observations
from curstat.estimators import naive_F, naive_f, smle_F, smle_f
from curstat.kernels import ScaledKernel, triweight
from curstat.mle import build_sample, fit_mle
from curstat.sim import sample_current_status, truth_gamma4_exp3
from curstat.smoothing import fit_smoothed

KERNEL = triweight()
TRUTH = truth_gamma4_exp3()


def _write_csv(path, times, deltas, extra_lines=()):
    lines = ["# test fixture", "t,delta"]
    lines += [f"{t},{int(d)}" for t, d in zip(times, deltas)]
    lines += list(extra_lines)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def _sample_csv(path, n=120, seed=5):
    gen = sample_current_status(TRUTH, n, seed)
    return _write_csv(path, gen.raw_times, gen.raw_deltas)


def _parse_output(path):
    rows = []
    header = None
    for line in path.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(line.split(","))
    return header, rows


def test_read_observations_roundtrip(tmp_path):
    p = tmp_path / "obs.csv"
    _write_csv(p, [2.0, 1.0, 1.0], [1, 0, 1])
    arr = read_observations(str(p))
    np.testing.assert_array_equal(arr, [[2.0, 1.0], [1.0, 0.0], [1.0, 1.0]])


def test_read_observations_error_messages(tmp_path):
    from curstat.errors import InputError

    p = tmp_path / "bad.csv"
    p.write_text("time,status\n1,1\n")
    with pytest.raises(InputError, match="bad.csv:1"):
        read_observations(str(p))
    p.write_text("t,delta\n1.0,1\nx,0\n")
    with pytest.raises(InputError, match="bad.csv:3"):
        read_observations(str(p))
    p.write_text("t,delta\n1.0,2\n")
    with pytest.raises(InputError, match="delta must be 0 or 1"):
        read_observations(str(p))
    p.write_text("t,delta\n-1.0,1\n")
    with pytest.raises(InputError, match="must be >= 0"):
        read_observations(str(p))
    p.write_text("t,delta\n")
    with pytest.raises(InputError, match="no data rows"):
        read_observations(str(p))


def test_estimate_mle_three_point_case(tmp_path):
    inp = _write_csv(tmp_path / "toy.csv", [1.0, 2.0, 3.0], [1, 0, 1])
    out = tmp_path / "out.csv"
    assert main(["estimate", "--input", inp, "--output", str(out)]) == 0
    header, rows = _parse_output(out)
    assert header == ["t", "mle_F"]
    fit = fit_mle(build_sample(np.array([[1.0, 1], [2.0, 0], [3.0, 1]])))
    ts = np.array([float(r[0]) for r in rows])
    assert ts[0] == 0.0 and ts[-1] == 3.0 and ts.size == 401
    for r in rows:
        assert r[1] == _fmt(fit.cdf(float(r[0])))
    # the known fitted values appear
    assert _fmt(fit.cdf(1.0)) == _fmt(0.5)
    assert _fmt(fit.cdf(3.0)) == _fmt(1.0)


def test_estimate_smle_all_events_is_shifted_kernel(tmp_path):
    times = [2.0, 3.0, 4.5]
    inp = _write_csv(tmp_path / "all1.csv", times, [1, 1, 1])
    out = tmp_path / "out.csv"
    rc = main([
        "estimate", "--input", inp, "--method", "smle",
        "--target", "F", "--h", "1.0", "--output", str(out),
    ])
    assert rc == 0
    header, rows = _parse_output(out)
    sk = ScaledKernel(KERNEL, 1.0)
    for r in rows:
        t = float(r[0])
        assert r[1] == _fmt(sk.K_h(t - 2.0))
    assert rows[-1][1] == _fmt(1.0)
    assert float(rows[-1][0]) == 5.5


def test_estimate_roundtrip_matches_library(tmp_path):
    # dense deterministic design, so the ratio columns stay clear of
    # the density floor except in the trimmed tail
    rng = np.random.default_rng(5)
    times = np.linspace(0.1, 7.0, 120)
    deltas = (rng.random(120) < np.asarray(TRUTH.F0(times))).astype(int)
    inp = _write_csv(tmp_path / "obs.csv", times, deltas)
    out = tmp_path / "out.csv"
    rc = main([
        "estimate", "--input", inp, "--method", "naive,smle,msle",
        "--target", "F,f", "--h", "1.2", "--output", str(out),
        "--grid-points", "101",
    ])
    assert rc == 0
    header, rows = _parse_output(out)
    assert header == [
        "t", "naive_F", "naive_f", "smle_F", "smle_f", "msle_F", "msle_f",
    ]
    sample = build_sample(read_observations(inp))
    sm = fit_smoothed(sample, KERNEL, 1.2)
    mle = fit_mle(sample)
    # rebuild the command's own grid; parsed-back t carries only the
    # formatter's nine digits
    full = np.linspace(0.0, float(sample.times[-1]) + 1.2, 101)
    grid = full[: len(rows)]
    want_sF = np.asarray(smle_F(mle, KERNEL, 1.2, grid))
    want_sf = np.asarray(smle_f(mle, KERNEL, 1.2, grid))
    for i, r in enumerate(rows):
        t = grid[i]
        assert r[0] == _fmt(t)
        if r[1] != "nan":
            assert r[1] == _fmt(naive_F(sm, t))
            assert r[2] == _fmt(naive_f(sm, t))
        assert r[3] == _fmt(want_sF[i])
        assert r[4] == _fmt(want_sf[i])


def test_estimate_trims_tail_for_ratio_targets(tmp_path):
    # T_max + h is an exact multiple of the tabulation spacing h/32, so
    # the smoothed density is exactly zero at the grid end and the
    # ratio column must stop strictly earlier
    rng = np.random.default_rng(3)
    times = np.linspace(0.1, 7.0, 120)
    deltas = (rng.random(120) < np.asarray(TRUTH.F0(times))).astype(int)
    inp = _write_csv(tmp_path / "obs.csv", times, deltas)
    smle_out = tmp_path / "a.csv"
    naive_out = tmp_path / "b.csv"
    args = ["estimate", "--input", inp, "--h", "0.8", "--grid-points", "201"]
    assert main(args + ["--method", "smle", "--output", str(smle_out)]) == 0
    assert main(args + ["--method", "naive", "--target", "F",
                        "--output", str(naive_out)]) == 0
    _, smle_rows = _parse_output(smle_out)
    _, naive_rows = _parse_output(naive_out)
    assert float(smle_rows[-1][0]) == 7.8
    assert float(naive_rows[-1][0]) < 7.8
    assert all(r[1] != "nan" for r in naive_rows)


def test_estimate_interior_hole_writes_nan_and_exits_3(tmp_path, capsys):
    times = [1.0, 1.1, 1.2, 8.0, 8.1, 8.2]
    deltas = [0, 0, 1, 1, 1, 1]
    inp = _write_csv(tmp_path / "gap.csv", times, deltas)
    out = tmp_path / "out.csv"
    rc = main([
        "estimate", "--input", inp, "--method", "naive", "--target", "F",
        "--h", "0.5", "--output", str(out), "--grid-points", "301",
    ])
    assert rc == 3
    err = capsys.readouterr().err
    assert "floor" in err
    _, rows = _parse_output(out)
    cells = [r[1] for r in rows]
    assert "nan" in cells
    finite = [c for c in cells if c != "nan"]
    assert finite


def test_estimate_flag_validation(tmp_path, capsys):
    inp = _write_csv(tmp_path / "toy.csv", [1.0, 2.0], [1, 0])
    base = ["estimate", "--input", inp, "--output", "-"]
    assert main(base + ["--method", "smle"]) == 2
    assert main(base + ["--method", "smle", "--h", "1", "--c", "5"]) == 2
    assert main(base + ["--method", "mle", "--h", "1"]) == 2
    assert main(base + ["--method", "mle", "--target", "f", "--h", "1"]) == 2
    assert main(base + ["--method", "smle", "--alpha", "0.2"]) == 2
    assert main(base + ["--method", "bogus"]) == 2
    assert main(base + ["--target", "F,cdf"]) == 2
    assert main(["estimate", "--input", str(tmp_path / "missing.csv")]) == 2
    capsys.readouterr()


def test_estimate_c_flag_uses_target_rate(tmp_path):
    inp = _sample_csv(tmp_path / "obs.csv", n=100, seed=2)
    out = tmp_path / "out.csv"
    rc = main([
        "estimate", "--input", inp, "--method", "smle", "--target", "F",
        "--c", "7.0", "--output", str(out),
    ])
    assert rc == 0
    text = out.read_text()
    assert f"# h[smle,F] = {_fmt(7.0 * 100 ** -0.2)}" in text


def test_estimate_stdout(tmp_path, capsys):
    inp = _write_csv(tmp_path / "toy.csv", [1.0, 2.0, 3.0], [1, 0, 1])
    assert main(["estimate", "--input", inp]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# curstat estimate")
    assert "t,mle_F" in out


def test_bandwidth_singleton_grid_echoes_pair(tmp_path):
    inp = _sample_csv(tmp_path / "obs.csv", n=150, seed=3)
    out = tmp_path / "sel.json"
    rc = main([
        "bandwidth", "--input", inp, "--t", "4", "--m", "80", "--B", "1",
        "--c0", "10", "--c-min", "7", "--c-max", "7", "--c-points", "1",
        "--output", str(out),
    ])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["c_hat"] == 7.0
    assert len(payload["curve"]) == 1
    assert payload["curve"][0][0] == 7.0
    assert payload["h_hat"] == float(_fmt(7.0 * 150 ** -0.2))
    assert payload["n"] == 150 and payload["m"] == 80 and payload["B"] == 1


def test_bandwidth_deterministic_bytes(tmp_path, monkeypatch):
    inp = _sample_csv(tmp_path / "obs.csv", n=150, seed=4)
    outs = []
    for name, threads in (("a.json", "1"), ("b.json", "4")):
        monkeypatch.setenv("CURSTAT_THREADS", threads)
        out = tmp_path / name
        rc = main([
            "bandwidth", "--input", inp, "--t", "4", "--m", "100",
            "--B", "6", "--c0", "10", "--seed", "11",
            "--c-min", "4", "--c-max", "16", "--c-points", "5",
            "--output", str(out),
        ])
        assert rc == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_bandwidth_missing_params_exit_2(tmp_path, capsys):
    inp = _write_csv(tmp_path / "toy.csv", [1.0, 2.0], [1, 0])
    assert main(["bandwidth", "--input", inp, "--t", "1"]) == 2
    err = capsys.readouterr().err
    assert "--m" in err and "--B" in err and "--c0" in err


def test_bandwidth_pilot_degenerate_exit_3(tmp_path, capsys):
    inp = _write_csv(tmp_path / "flat.csv", np.linspace(1, 9, 40), [0] * 40)
    rc = main([
        "bandwidth", "--input", inp, "--t", "4", "--m", "20", "--B", "2",
        "--c0", "10", "--output", "-",
    ])
    assert rc == 3
    assert "domain error" in capsys.readouterr().err


def test_simulate_single_replicate_summary(tmp_path):
    out = tmp_path / "sim.csv"
    rc = main([
        "simulate", "--n", "60", "--B", "1", "--t", "4", "--method", "smle",
        "--target", "F", "--c", "6.467", "--seed", "8", "--output", str(out),
    ])
    assert rc == 0
    header, rows = _parse_output(out)
    assert header == ["replicate", "value", "mean", "sd", "norm_mean", "norm_sd"]
    assert len(rows) == 2
    value = rows[0][1]
    assert rows[0][0] == "0"
    assert rows[1][0] == "summary"
    assert rows[1][2] == value
    assert rows[1][3] == _fmt(0.0)


def test_simulate_deterministic_and_normalized(tmp_path):
    args = [
        "simulate", "--n", "80", "--B", "5", "--t", "4", "--method", "smle",
        "--target", "F", "--h", "1.5", "--seed", "21",
    ]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = _parse_output(a)
    vals = np.array([float(r[1]) for r in rows[:-1]])
    summary = rows[-1]
    assert summary[2] == _fmt(vals.mean())
    assert summary[3] == _fmt(vals.std(ddof=1))
    theta0 = float(TRUTH.F0(4.0))
    assert summary[4] == _fmt(80 ** 0.4 * (vals.mean() - theta0))
    assert summary[5] == _fmt(80 ** 0.4 * vals.std(ddof=1))


def test_simulate_validation(capsys):
    assert main(["simulate", "--B", "3", "--t", "4"]) == 2
    assert main(["simulate", "--n", "50", "--B", "3", "--t", "4",
                 "--method", "smle"]) == 2
    assert main(["simulate", "--n", "50", "--B", "3", "--t", "4",
                 "--method", "mle", "--target", "f"]) == 2
    capsys.readouterr()


def test_simulate_mle_needs_no_bandwidth(tmp_path):
    out = tmp_path / "sim.csv"
    rc = main([
        "simulate", "--n", "40", "--B", "2", "--t", "4", "--method", "mle",
        "--seed", "3", "--output", str(out),
    ])
    assert rc == 0
    _, rows = _parse_output(out)
    assert len(rows) == 3


def test_reproduce_table1_small_scale(tmp_path):
    from curstat.bandwidth import amse_optimal_c

    out = tmp_path / "table.csv"
    args = [
        "reproduce-table1", "--n", "120", "--m", "60", "--B", "2",
        "--c0-set", "5,10", "--seed", "1", "--output", str(out),
    ]
    assert main(args) == 0
    header, rows = _parse_output(out)
    assert header == ["row", "c_hat@4", "h_hat@4", "c_hat@6.5", "h_hat@6.5"]
    labels = [r[0] for r in rows]
    assert labels == [
        "bootstrap c0=5", "bootstrap c0=10", "mc-sim n=120", "mc-sim m=60",
        "theory",
    ]
    theory = rows[-1]
    c4 = amse_optimal_c("F", "SM", TRUTH, 4.0, KERNEL)
    c65 = amse_optimal_c("F", "SM", TRUTH, 6.5, KERNEL)
    assert theory[1] == _fmt(c4)
    assert theory[2] == _fmt(c4 * 120 ** -0.2)
    assert theory[3] == _fmt(c65)
    assert theory[4] == _fmt(c65 * 120 ** -0.2)
    # bit-stable under reruns
    out2 = tmp_path / "table2.csv"
    assert main(args[:-1] + [str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_reproduce_table1_validation(capsys):
    assert main(["reproduce-table1", "--n", "10", "--m", "20", "--B", "1"]) == 2
    assert main(["reproduce-table1", "--c0-set", "5,-1"]) == 2
    capsys.readouterr()


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["estimate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 2
