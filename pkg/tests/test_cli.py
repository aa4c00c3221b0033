import csv
import json
import subprocess
import sys

import pytest

from unitarea.cli import main
from unitarea.constructions import random_point_set, three_parallel
from unitarea.pts import read_pts, write_pts


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def strip_time(report):
    report = dict(report)
    report.pop("elapsed_ms")
    return report


def test_generate_then_count(tmp_path, capsys):
    pts = tmp_path / "a.pts"
    code, rep = run(capsys, "generate", "--construction", "three-parallel", "--n", "8",
                    "--alpha", "2", "--out", str(pts))
    assert code == 0 and rep["audits"]["points"] == 31
    assert read_pts(pts) == three_parallel(8, 2)
    code, rep = run(capsys, "count", "--in", str(pts), "--method", "brute")
    assert code == 0
    assert rep["counts"]["restricted"] >= 64
    assert rep["subcommand"] == "count"


@pytest.mark.parametrize("construction, extra", [
    ("lattice", ["--n", "12"]),
    ("one-parallel", ["--n", "4"]),
    ("general", ["--n", "3", "--alpha", "2"]),
    ("random", ["--n", "9", "--seed", "5", "--coord-bound", "20"]),
    ("convex-grid", ["--n", "5"]),
])
def test_generate_round_trips(tmp_path, capsys, construction, extra):
    out = tmp_path / "g.pts"
    code, _ = run(capsys, "generate", "--construction", construction, *extra, "--out", str(out))
    assert code == 0
    first = out.read_text()
    s = read_pts(out)
    write_pts(s, out, comment=f"construction: {construction}")
    assert out.read_text() == first


def test_missing_input_is_exit_2(capsys):
    code, _ = run(capsys, "count", "--in", "nosuchfile.pts")
    assert code == 2


def test_malformed_input_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.pts"
    bad.write_text("# field: rational\n1 2 3 4\n")
    assert run(capsys, "count", "--in", str(bad))[0] == 2


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as err:
        main(["count"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["generate", "--construction", "hexagon", "--out", "x"])
    assert err.value.code == 1
    assert main(["generate", "--construction", "lattice", "--out", "x.pts"]) == 1


def test_count_methods_agree_and_threads_do_not_matter(tmp_path, capsys):
    pts = tmp_path / "r.pts"
    write_pts(random_point_set(25, seed=8, coord_bound=4), pts)
    reports = []
    for threads in ("1", "4"):
        code, rep = run(capsys, "count", "--in", str(pts), "--threads", threads)
        assert code == 0 and rep["audits"]["methods_agree"]
        reports.append(strip_time(rep))
    reports[1]["params"] = reports[0]["params"]
    assert reports[0] == reports[1]


def test_audit_surfaces(tmp_path, capsys):
    pts = tmp_path / "random10.pts"
    write_pts(random_point_set(10, seed=3, coord_bound=6, distinct_coordinates=True), pts)
    report = tmp_path / "audit.json"
    code, rep = run(capsys, "audit", "surfaces", "--in", str(pts), "--k", "2",
                    "--report", str(report))
    assert code == 0
    assert rep["audits"]["max_pair_intersection"] <= 3
    assert rep["audits"]["surfaces"] == 90
    assert json.loads(report.read_text()) == rep


def test_audit_surfaces_rejects_shared_coordinates(tmp_path, capsys):
    pts = tmp_path / "grid.pts"
    pts.write_text("# field: rational\n0 0\n0 1\n1 0\n")
    assert run(capsys, "audit", "surfaces", "--in", str(pts))[0] == 2


def test_generate_distinct_coordinates_feeds_surface_audit(tmp_path, capsys):
    pts = tmp_path / "d.pts"
    code, _ = run(capsys, "generate", "--construction", "random", "--n", "8", "--coord-bound", "5",
                  "--seed", "3", "--distinct-coordinates", "--out", str(pts))
    assert code == 0
    s = read_pts(pts)
    assert len({p.x for p in s}) == len({p.y for p in s}) == 8
    code, rep = run(capsys, "audit", "surfaces", "--in", str(pts), "--k", "2")
    assert code == 0 and rep["audits"]["surfaces"] == 56


def test_audit_separability(capsys):
    code, rep = run(capsys, "audit", "separability", "--alpha", "2")
    assert code == 0
    a = rep["audits"]
    assert a["separable"] and a["identity_verified"]
    assert (a["s1"], a["s2"]) == ("1+sqrt(3)", "1-sqrt(3)")
    code, rep = run(capsys, "audit", "separability", "--alpha", "5/3")
    assert code == 0 and rep["params"]["alpha"] == "5/3"


def test_gridstats(tmp_path, capsys):
    a = tmp_path / "a.txt"
    a.write_text("# triangular numbers\n0\n1\n3\n6\n10\n15\n")
    out = tmp_path / "g.csv"
    code, rep = run(capsys, "gridstats", "--a", str(a), "--k", "2", "--csv", str(out))
    assert code == 0
    classes = rep["counts"]["classes"]
    assert sum(classes.values()) == rep["counts"]["total"] > 0
    assert rep["audits"]["delta_sum"] == 36 and rep["audits"]["delta_symmetric"]
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["table", "key", "value"]
    assert {r[0] for r in rows[1:]} == {"multiplicity_a", "multiplicity_b", "delta_aa", "classes"}


def test_gridstats_default_k(tmp_path, capsys):
    a = tmp_path / "a.txt"
    a.write_text("\n".join(str(i * i) for i in range(1, 17)))
    code, rep = run(capsys, "gridstats", "--a", str(a))
    assert code == 0
    assert rep["params"]["k"] == round(256 ** (9 / 28))


def test_gridstats_non_convex_is_exit_2(tmp_path, capsys):
    a = tmp_path / "a.txt"
    a.write_text("1\n2\n3\n")
    assert run(capsys, "gridstats", "--a", str(a))[0] == 2


def test_scaling(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, rep = run(capsys, "scaling", "--construction", "one-parallel", "--ns", "4,8,16",
                    "--csv", str(out))
    assert code == 0
    assert [r["restricted"] for r in rep["audits"]["series"]] == [14, 58, 242]
    assert len(rep["slope"].split(".")[1]) == 4
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["n", "count_total", "count_restricted", "elapsed_ms"]


def test_scaling_deterministic_across_threads(capsys):
    reps = []
    for threads in ("1", "3"):
        code, rep = run(capsys, "scaling", "--construction", "random", "--ns", "6,12",
                        "--seed", "17", "--coord-bound", "3", "--threads", threads)
        assert code == 0
        reps.append(strip_time(rep))
    assert reps[0] == reps[1]


def test_invariant_violation_exit_3(tmp_path, capsys, monkeypatch):
    import unitarea.cli as cli
    from unitarea.counting import TriangleCount

    pts = tmp_path / "s.pts"
    write_pts(three_parallel(2, 2), pts)
    monkeypatch.setattr(cli, "count_line_bucket", lambda s, threads=1: TriangleCount(0, 0))
    assert run(capsys, "count", "--in", str(pts))[0] == 3


def test_module_entry_point(tmp_path):
    out = tmp_path / "l.pts"
    proc = subprocess.run(
        [sys.executable, "-m", "unitarea", "generate", "--construction", "lattice",
         "--n", "6", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["subcommand"] == "generate"
