import json

import pytest

from tritile.cli import main, parse_blocks, parse_rational, parse_vertices, run, UsageError
from tritile.core import load_kgraph


def _strip_timing(report: dict) -> dict:
    out = dict(report)
    out.pop("ms", None)
    return out


def test_parse_rational():
    from fractions import Fraction

    assert parse_rational("1/4") == Fraction(1, 4)
    assert parse_rational("3") == 3
    with pytest.raises(UsageError):
        parse_rational("0.25")


def test_parse_vertices_and_blocks():
    assert parse_vertices("0,2,5-7") == (0, 2, 5, 6, 7)
    assert parse_blocks("0-2;3,4") == ((0, 1, 2), (3, 4))


def test_gen_round_trip(tmp_path):
    out = tmp_path / "inst.kg"
    report, code = run(["gen", "random", "--n", "9", "--k", "3", "--delta", "2", "--seed", "4", "-o", str(out)])
    assert code == 0
    H = load_kgraph(out)
    assert H.n == 9 and H.k == 3
    meta = json.loads((tmp_path / "inst.kg.meta.json").read_text())
    assert meta["seed"] == 4
    # regenerated instance is byte-identical
    out2 = tmp_path / "inst2.kg"
    run(["gen", "random", "--n", "9", "--k", "3", "--delta", "2", "--seed", "4", "-o", str(out2)])
    assert out.read_text() == out2.read_text()


def test_gen_then_tile_extremal(tmp_path):
    out = tmp_path / "ext.kg"
    report, code = run(["gen", "extremal", "--k", "3", "--n", "15", "-o", str(out)])
    assert code == 0
    report, code = run(["tile", str(out)])
    assert code == 0
    assert report["verdict"] == "decided-no"


def test_info_complete(tmp_path):
    out = tmp_path / "k5.kg"
    run(["gen", "complete", "--n", "5", "--k", "3", "-o", str(out)])
    report, code = run(["info", str(out)])
    assert code == 0
    assert report["min_codegree"] == 3


def test_farkas_certificate_validates(tmp_path):
    out = tmp_path / "ext.kg"
    run(["gen", "extremal", "--k", "3", "--n", "15", "-o", str(out)])
    report, code = run(["farkas", str(out)])
    assert code == 0
    assert report["verdict"] == "decided-no"
    assert report["certificate_valid"]
    coeffs = report["certificate"]["coeffs"]
    assert coeffs == [3] * 5 + [-2] * 10
    assert sum(coeffs) == -5


def test_reports_reproducible(tmp_path):
    out = tmp_path / "g.kg"
    run(["gen", "random", "--n", "10", "--k", "3", "--delta", "3", "--seed", "8", "-o", str(out)])
    r1, _ = run(["pack", str(out)])
    r2, _ = run(["pack", str(out)])
    assert _strip_timing(r1) == _strip_timing(r2)


def test_exit_codes(tmp_path):
    out = tmp_path / "g.kg"
    run(["gen", "complete", "--n", "10", "--k", "3", "-o", str(out)])
    _, code = run(["fractile", str(out)])
    assert code == 0
    # budget exhaustion -> 2: force the pure cover search with zero nodes
    report, code = run(["tile", str(out), "--no-lp", "--budget", "0"])
    assert code == 2
    assert report["verdict"] == "unknown-budget"
    # usage error -> 1 through main()
    assert main(["tile"]) == 1


def test_batch_duplicate_rows_identical(tmp_path):
    inst = tmp_path / "a.kg"
    run(["gen", "complete", "--n", "10", "--k", "3", "-o", str(inst)])
    manifest = tmp_path / "dup.jsonl"
    row = {"id": "same", "args": ["pack", str(inst)]}
    manifest.write_text(json.dumps(row) + "\n" + json.dumps(row) + "\n")
    out = tmp_path / "dup.csv"
    run(["batch", str(manifest), "-o", str(out)])
    lines = out.read_text().strip().splitlines()[1:]
    first = lines[0].split(",")[:-1]
    second = lines[1].split(",")[:-1]
    assert first == second
    assert first[2] == "decided-yes" and first[3] == "2"


def test_batch_order_and_workers(tmp_path):
    inst = tmp_path / "a.kg"
    run(["gen", "extremal", "--k", "3", "--n", "10", "-o", str(inst)])
    manifest = tmp_path / "man.jsonl"
    rows = [
        {"id": "info-a", "args": ["info", str(inst)]},
        {"id": "tile-a", "args": ["tile", str(inst)]},
        {"id": "pack-a", "args": ["pack", str(inst)]},
        {"id": "bad", "args": ["info", str(tmp_path / "missing.kg")]},
    ]
    manifest.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    out1 = tmp_path / "out1.csv"
    out4 = tmp_path / "out4.csv"
    _, c1 = run(["batch", str(manifest), "--workers", "1", "-o", str(out1)])
    _, c4 = run(["batch", str(manifest), "--workers", "4", "-o", str(out4)])
    assert c1 == c4 == 0

    def rows_no_ms(path):
        lines = path.read_text().strip().splitlines()
        return [",".join(line.split(",")[:-1]) for line in lines]

    assert rows_no_ms(out1) == rows_no_ms(out4)
    ids = [line.split(",")[0] for line in rows_no_ms(out1)[1:]]
    assert ids == ["info-a", "tile-a", "pack-a", "bad"]
    verdicts = [line.split(",")[2] for line in rows_no_ms(out1)[1:]]
    assert verdicts[-1] == "error"
    assert verdicts[1] == "decided-no"


def test_empty_batch(tmp_path):
    manifest = tmp_path / "empty.jsonl"
    manifest.write_text("")
    out = tmp_path / "out.csv"
    _, code = run(["batch", str(manifest), "-o", str(out)])
    assert code == 0
    assert out.read_text().strip() == "id,command,verdict,value,witness_path,ms"


def test_rainbow_cli(tmp_path):
    host = tmp_path / "k10.kg"
    run(["gen", "complete", "--n", "10", "--k", "3", "-o", str(host)])
    manifest = tmp_path / "fam.txt"
    manifest.write_text("\n".join(["k10.kg"] * 6) + "\n")
    report, code = run(["rainbow", str(manifest)])
    assert code == 0
    assert report["verdict"] == "decided-yes"
    assert sorted(report["witness"]["assignment"]) == list(range(6))


def test_pipeline_cli(tmp_path):
    inst = tmp_path / "k15.kg"
    run(["gen", "complete", "--n", "15", "--k", "3", "-o", str(inst)])
    report, code = run(["pipeline", str(inst), "--gamma", "1"])
    assert code == 0
    assert report["verdict"] == "decided-yes"
    assert [s["status"] for s in report["stages"]] == ["ok"] * 8


def test_dh_check_cli(tmp_path):
    from tritile.core import KGraph, save_kgraph

    J = KGraph(6, 2, [(i, j) for i in range(3) for j in range(3, 6)])
    path = tmp_path / "bip.kg"
    save_kgraph(J, path)
    report, code = run(
        ["dh-check", str(path), "--classes", "0,1,2;3,4,5", "--matching"]
    )
    assert code == 0
    assert report["verdict"] == "decided-yes"
    assert report["degree_condition"]["threshold"] == "3/2"
    assert len(report["matching"]) == 3
