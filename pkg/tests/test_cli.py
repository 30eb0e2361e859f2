import json
import math

import numpy as np
import pytest

from gdbmc.cli import dispatch
from gdbmc.graph import WeightedGraph, dump_graph_file
from gdbmc.rng import MersenneTwister


def write_dimer_graph(path, S=0.3, with_chi=False):
    g = WeightedGraph(4 if with_chi else 2, dim=3)
    g.add_edge(0, 1, 1.0, 20.0)
    if with_chi:
        g.add_edge(1, 2, 1.0, 20.0)
        g.add_edge(2, 3, 1.0, 20.0)
        conf = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                         [1.0, 1.0, 0.0], [1.0, 1.0, 1.0]])
        chis = [((0, 1, 2, 3), 1)]
    else:
        conf = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        chis = []
    Svec = np.full(g.n, S)
    path.write_text(dump_graph_file(g, conf, Svec, chis))
    return path


def test_rng_selftest(capsys):
    assert dispatch(["rng-selftest"]) == 0
    out = capsys.readouterr().out.split()
    assert out[:5] == ["3499211612", "581869302", "3890346734",
                       "3586334585", "545404204"]


def test_usage_error_exit_code(capsys):
    assert dispatch(["no-such-command"]) == 2
    assert dispatch([]) == 2


def test_bridge_sample_csv(tmp_path, capsys):
    out = tmp_path / "bridges.csv"
    assert dispatch(["bridge", "sample", "--K", "8", "--d", "2",
                     "--count", "3", "--seed", "5", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "bridge,n,x,y"
    assert len(lines) == 1 + 3 * 8
    # pinned start
    assert lines[1] == "0,0,0.0,0.0"
    manifest = json.loads((tmp_path / "bridges.csv.manifest.json").read_text())
    assert manifest["parameters"]["K"] == 8
    assert manifest["outputs"] == [str(out)]


def test_process_run_stdout_and_fraction_alpha(capsys):
    assert dispatch(["process", "run", "--kind", "W", "--K", "8", "--j", "2",
                     "--alpha", "2/3", "--jumps", "500", "--seed", "1"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "K,j,alpha,J,F,R,A,B,C,r1,r2"
    fields = out[1].split(",")
    assert fields[0] == "8" and fields[3] == "500"


def test_table_reproduce_rows(tmp_path):
    out = tmp_path / "table1.csv"
    assert dispatch(["table", "reproduce", "--table", "1", "--scale", "1e-4",
                     "--rows", "0,5", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "8"
    assert lines[2].split(",")[0] == "16"


def test_entropy_slit(capsys):
    assert dispatch(["entropy", "slit", "--q", "1", "--tol", "1e-2"]) == 0
    out = capsys.readouterr().out
    bits = float(out.split("kl_bits ")[1].split("\n")[0])
    assert bits == pytest.approx(1.0, abs=1e-2)


def test_embed_plain_writes_trace(tmp_path, capsys):
    gpath = write_dimer_graph(tmp_path / "dimer.graph")
    conf_out = tmp_path / "conf.csv"
    trace_out = tmp_path / "trace.csv"
    code = dispatch(["embed", "--graph", str(gpath), "--plain",
                     "--max-steps", "5000", "--seed", "2",
                     "--out-conf", str(conf_out), "--out-trace", str(trace_out)])
    assert code == 0
    assert "in_restricted_space True" in capsys.readouterr().out
    assert trace_out.read_text().startswith("step,vertex,displacement,potential")
    assert conf_out.read_text().startswith("id,x,y,z")


def test_embed_builtin_jam_plain_fails(tmp_path, capsys):
    # the bundled jam instance cannot be embedded by pure centering
    code = dispatch(["embed", "--graph", "builtin:jam", "--plain",
                     "--max-steps", "30000", "--seed", "0",
                     "--out-conf", str(tmp_path / "c.csv"),
                     "--out-trace", str(tmp_path / "t.csv")])
    assert code == 1
    assert "in_restricted_space False" in capsys.readouterr().out


def test_embed_missing_graph_is_runtime_error(tmp_path, capsys):
    assert dispatch(["embed", "--graph", str(tmp_path / "nope.graph"),
                     "--out-conf", str(tmp_path / "c.csv")]) == 1


def test_realize_builtin_thr(tmp_path, capsys):
    out = tmp_path / "thr.csv"
    assert dispatch(["realize", "--graph", "builtin:thr2",
                     "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert float(text.split("min_residual ")[1]) > -1e-8
    assert out.read_text().startswith("id,x,y,z")


def test_realize_without_constraints_fails(tmp_path):
    gpath = write_dimer_graph(tmp_path / "dimer.graph")
    assert dispatch(["realize", "--graph", str(gpath),
                     "--out", str(tmp_path / "o.csv")]) == 1


def test_mc_run_with_potential_config(tmp_path, capsys):
    gpath = write_dimer_graph(tmp_path / "chain.graph", with_chi=True)
    pot = tmp_path / "pot.cfg"
    pot.write_text("lj_eps = 0.1\nlj_sigma = 0.9\n# comment\n")
    conf_out = tmp_path / "mc_conf.csv"
    rep_out = tmp_path / "mc_report.csv"
    assert dispatch(["mc", "run", "--graph", str(gpath), "--potential",
                     str(pot), "--sweeps", "50", "--kT", "0.3", "--seed", "7",
                     "--out-conf", str(conf_out),
                     "--out-report", str(rep_out)]) == 0
    report = rep_out.read_text().strip().split("\n")
    assert report[0] == "sweep,energy,in_space"
    assert len(report) == 51
    assert "accepted" in capsys.readouterr().out


def test_polymer_demo_csv(tmp_path, capsys):
    out = tmp_path / "polymer.csv"
    assert dispatch(["polymer", "demo", "--n", "4", "--jumps", "5",
                     "--seeds", "2", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "seed,axial_drift,twist_angle,acceptance_rate"
    assert len(lines) == 3
    assert "mean_axial_drift" in capsys.readouterr().err


def test_lp_solve_formats(tmp_path, capsys):
    f = tmp_path / "prob.lp"
    f.write_text("3 2\n\n1 1\n1 3\n\n4 6\n")
    assert dispatch(["lp", "solve", "--mps-lite", str(f)]) == 0
    out = capsys.readouterr().out
    assert "status optimal" in out
    assert "objective 12.0" in out
    g = tmp_path / "unbounded.lp"
    g.write_text("1\n\n-1\n\n1\n")
    assert dispatch(["lp", "solve", "--mps-lite", str(g)]) == 1
    h = tmp_path / "minform.lp"
    h.write_text("1 1\n\n1 1\n1 0\n\n1 0.5\n\nsense min\n")
    assert dispatch(["lp", "solve", "--mps-lite", str(h)]) == 0
    assert "objective 1.0" in capsys.readouterr().out


def test_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert dispatch(["bridge", "sample", "--K", "16", "--count", "2",
                         "--seed", "9", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
