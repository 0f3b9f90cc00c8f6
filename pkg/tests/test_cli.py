"""Command-line harness: exit codes, row schemas, and parallel determinism.

Everything runs in-process through ``cli.main`` so monkeypatching can reach
the module globals (the serial jobs=1 path calls workers directly).
"""

from __future__ import annotations

import dataclasses
import json

import pytest

from isolation_lab import cli
from isolation_lab.bounds import check_bound
from isolation_lab.graphs import Graph, graph6_decode, graph6_encode, named_graph


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(autouse=True)
def _no_jobs_env(monkeypatch):
    monkeypatch.delenv("ISOLATION_LAB_JOBS", raising=False)


# ===== sweep =================================================================


def test_sweep_small_range_is_clean(capsys):
    code, out, err = run(["sweep", "--family", "e2", "--n-max", "5"], capsys)
    assert code == 0
    assert "0 violations" in out.replace("  ", " ")
    assert "exceptions skipped:" in out
    for tag in ("P3", "K3", "K13"):
        assert tag in out


def test_sweep_row_schema(tmp_path, capsys):
    jpath, cpath = tmp_path / "rows.json", tmp_path / "rows.csv"
    code, out, _ = run(["sweep", "--family", "e2", "--n-max", "6",
                        "--json", str(jpath), "--csv", str(cpath)], capsys)
    assert code == 0
    rows = [json.loads(line) for line in jpath.read_text().splitlines()]
    assert len(rows) == 1 + 1 + 2 + 6 + 21 + 112
    for row in rows:
        assert tuple(row)[:7] == cli.ROW_FIELDS[:7]
        g = graph6_decode(row["graph6"])
        assert g.n == row["n"]
        if row["exception"] is None:
            # certificate columns are present exactly when the prover ran
            assert tuple(row) == cli.ROW_FIELDS
            assert row["iota"] <= row["bound"]
            assert row["iota"] <= row["cert_size"] <= row["bound"]
            assert "case=" in row["case_trace"]
        else:
            assert "cert_size" not in row and row["tight"] is False
    exceptions = {r["exception"] for r in rows if r["exception"]}
    assert exceptions == {"P3", "K3", "K13", "C6"}
    csv_lines = cpath.read_text().splitlines()
    assert csv_lines[0] == ",".join(cli.ROW_FIELDS)
    assert len(csv_lines) == len(rows) + 1


def test_sweep_parallel_matches_serial(tmp_path, capsys):
    outs = []
    for jobs in ("1", "2"):
        path = tmp_path / f"rows-{jobs}.json"
        code, _, _ = run(["sweep", "--family", "e3", "--n-max", "6",
                          "--jobs", jobs, "--json", str(path)], capsys)
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_reports_violations(monkeypatch, capsys):
    def lying_check(g, theorem, budget=None):
        return dataclasses.replace(check_bound(g, theorem, budget=budget),
                                   violated=True)

    monkeypatch.setattr(cli, "check_bound", lying_check)
    code, out, _ = run(["sweep", "--family", "e1", "--n-min", "4",
                        "--n-max", "4"], capsys)
    assert code == 1
    assert "VIOLATION" in out


def test_sweep_budget_skips(capsys):
    code, out, _ = run(["sweep", "--family", "e1", "--n-min", "3",
                        "--n-max", "3", "--budget", "0"], capsys)
    assert code == 0
    assert "skipped (budget)" in out


def test_sweep_rejects_unbounded_family(capsys):
    code, _, err = run(["sweep", "--family", "k:4"], capsys)
    assert code == 2 and "usage error" in err


def test_sweep_rejects_unknown_family(capsys):
    code, _, err = run(["sweep", "--family", "q9"], capsys)
    assert code == 2


def test_sweep_builtin_range_cap(capsys):
    code, _, err = run(["sweep", "--family", "e2", "--n-max", "12"], capsys)
    assert code == 2 and "builtin enumeration stops" in err


# ===== sources and jobs ======================================================


def test_file_source_lenient_warns(tmp_path, capsys):
    path = tmp_path / "graphs.g6"
    path.write_text("Bw\nnot-a-graph\nCr\n")
    code, out, err = run(["sweep", "--family", "e1",
                          "--source", f"file:{path}"], capsys)
    assert code == 0
    assert "warning: skipped line 2" in err
    assert "2 graphs" in out.replace("  ", " ")


def test_file_source_strict_fails(tmp_path, capsys):
    path = tmp_path / "graphs.g6"
    path.write_text("Bw\nnot-a-graph\n")
    code, _, err = run(["sweep", "--family", "e1", "--source",
                        f"file:{path}", "--strict-parse"], capsys)
    assert code == 3 and "parse error" in err and "line 2" in err


def test_file_source_missing(capsys):
    code, _, err = run(["sweep", "--family", "e1",
                        "--source", "file:/does/not/exist.g6"], capsys)
    assert code == 2 and "cannot read" in err


def test_unknown_source(capsys):
    code, _, err = run(["sweep", "--family", "e1", "--source", "elsewhere"],
                       capsys)
    assert code == 2 and "unknown source" in err


def test_jobs_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ISOLATION_LAB_JOBS", "2")
    code, out, _ = run(["sweep", "--family", "e1", "--n-max", "5"], capsys)
    assert code == 0 and "jobs=2" in out


def test_bad_jobs_env_rejected(monkeypatch, capsys):
    monkeypatch.setenv("ISOLATION_LAB_JOBS", "many")
    code, _, err = run(["sweep", "--family", "e1", "--n-max", "4"], capsys)
    assert code == 2 and "ISOLATION_LAB_JOBS" in err


def test_bad_jobs_flag_rejected(capsys):
    code, _, err = run(["sweep", "--family", "e1", "--jobs", "0"], capsys)
    assert code == 2 and "--jobs" in err


# ===== ckn ===================================================================


def test_ckn_known_values(tmp_path, capsys):
    jpath = tmp_path / "ckn.json"
    code, out, _ = run(["ckn", "--family", "e2", "--n-min", "2",
                        "--n-max", "6", "--json", str(jpath)], capsys)
    assert code == 0
    assert "c_{2,3} = 1/3" in out
    assert "c_{2,6} = 1/3" in out
    rows = {r["n"]: r for r in map(json.loads, jpath.read_text().splitlines())}
    witness = graph6_decode(rows[3]["witness"])
    assert rows[3]["c"] == "1/3" and witness.n == 3
    assert rows[4]["c"] == "1/4" and rows[2]["c"] == "0/1"
    assert all(r["k"] == 2 for r in rows.values())


def test_ckn_rejects_cycles(capsys):
    code, _, err = run(["ckn", "--family", "cycles"], capsys)
    assert code == 2 and "edge families" in err


def test_ckn_generic_k(capsys):
    code, out, _ = run(["ckn", "--family", "k:4", "--n-min", "3",
                        "--n-max", "4"], capsys)
    assert code == 0 and "c_{4,3} = 0/1" in out


# ===== extremal ==============================================================


def test_extremal_rows_hold(capsys):
    code, out, _ = run(["extremal", "--family", "e2", "--n-max", "8"], capsys)
    assert code == 0
    assert "B'(5,P3)" in out and "B'(7r,C6) r=1" in out
    assert "MISMATCH" not in out


def test_extremal_detects_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(cli, "exact_iota", lambda g, fam, budget=None: None)
    code, out, _ = run(["extremal", "--family", "e1", "--n-min", "3",
                        "--n-max", "5"], capsys)
    assert code == 1
    assert "MISMATCH" in out and "> cap" in out


def test_extremal_rejects_k_family(capsys):
    code, _, err = run(["extremal", "--family", "k:2"], capsys)
    assert code == 2


# ===== emit ==================================================================


def test_emit_b_construction(capsys):
    code, out, _ = run(["emit", "b", "--n", "9", "--f", "K2"], capsys)
    assert code == 0
    g = graph6_decode(out.strip())
    assert g.n == 9


def test_emit_builtin(capsys):
    code, out, _ = run(["emit", "builtin", "--n-min", "1", "--n-max", "4"],
                       capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 1 + 2 + 6
    assert all(graph6_decode(line).n <= 4 for line in lines)


def test_emit_missing_args(capsys):
    code, _, err = run(["emit", "b", "--n", "9"], capsys)
    assert code == 2 and "--f" in err


def test_emit_bad_params(capsys):
    code, _, err = run(["emit", "bp-c6", "--r", "0"], capsys)
    assert code == 2


# ===== solve =================================================================


def test_solve_exception_graph(tmp_path, capsys):
    jpath = tmp_path / "solve.json"
    code, out, _ = run(["solve", "Bw", "--family", "e2",
                        "--json", str(jpath)], capsys)
    assert code == 0
    assert "iota_e2 = 1" in out and "exception K3" in out
    row = json.loads(jpath.read_text())
    assert row["iota"] == 1 and row["exception"] == "K3"
    assert row["tight"] is False and len(row["witness"]) == 1


def test_solve_cycles_family(capsys):
    c7 = graph6_encode(named_graph("C7"))
    code, out, _ = run(["solve", c7, "--family", "cycles"], capsys)
    assert code == 0 and "iota_cycles = 1" in out


def test_solve_budget_skip(capsys):
    code, out, _ = run(["solve", "Bw", "--family", "e2", "--budget", "0"],
                       capsys)
    assert code == 0 and "skipped (budget)" in out


def test_solve_source_conflict(capsys):
    code, _, err = run(["solve", "Bw", "--family", "e2", "--source", "-"],
                       capsys)
    assert code == 2 and "not both" in err


def test_solve_needs_input(capsys):
    code, _, err = run(["solve", "--family", "e2"], capsys)
    assert code == 2


def test_solve_malformed_graph6(capsys):
    code, _, err = run(["solve", "B", "--family", "e2"], capsys)
    assert code == 3 and "parse error" in err


# ===== certify ===============================================================


def test_certify_produces_certificate(tmp_path, capsys):
    jpath = tmp_path / "cert.json"
    c8 = graph6_encode(named_graph("C8"))
    code, out, _ = run(["certify", c8, "--k", "3", "--json", str(jpath)],
                       capsys)
    assert code == 0
    assert "trace:" in out and "bound: 2" in out
    row = json.loads(jpath.read_text())
    assert row["cert_size"] == len(row["certificate"]) <= row["bound"] == 2
    assert "case=" in row["case_trace"]


def test_certify_refuses_exception(capsys):
    c7 = graph6_encode(named_graph("C7"))
    code, out, err = run(["certify", c7, "--k", "3"], capsys)
    assert code == 1
    assert "certify refused" in err and "7-cycle exception" in err


def test_certify_refuses_disconnected(capsys):
    g6 = graph6_encode(Graph(4, [(0, 1), (2, 3)]))
    code, _, err = run(["certify", g6, "--k", "2"], capsys)
    assert code == 2 and "disconnected" in err


def test_certify_stream_mixes_refusals(tmp_path, capsys):
    path = tmp_path / "graphs.g6"
    path.write_text(graph6_encode(named_graph("C8")) + "\n"
                    + graph6_encode(named_graph("C7")) + "\n")
    code, out, err = run(["certify", "--k", "3",
                          "--source", f"file:{path}"], capsys)
    assert code == 1  # one refusal poisons the exit code
    assert "trace:" in out and "7-cycle exception" in err


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        cli.main(["sweep"])  # --family is required
    assert exc.value.code == 2
