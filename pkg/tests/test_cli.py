"""Command-line interface tests."""

import json

import pytest

from k3extremal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_case_a_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--case", "A", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 13
    for row in payload["rows"]:
        assert row["euler_sum"] == 24
        assert row["rank_sum"] == 18
        assert row["m"] == len(row["fibers"])


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--case", "A", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "fibers,euler_sum,rank_sum,deg_j,m"
    assert len(lines) == 14


def test_enumerate_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--case", "Q"])
    assert exc.value.code == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_torsion_json(capsys):
    code, out, _ = run(capsys, "torsion", "--config", "IV*,IV*,IV*", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["maximal_group"] == [3]
    assert payload["group_name"] == "Z/3"
    assert sorted(payload["witnesses"]) == [[1, 1, 1], [2, 2, 2]]


def test_torsion_domain_error(capsys):
    code, _, err = run(capsys, "torsion", "--config", "II*,I1,I1")
    assert code == 1
    assert "error" in err


def test_torsion_bad_symbol(capsys):
    code, _, err = run(capsys, "torsion", "--config", "XI*,I1*")
    assert code == 1
    assert "error" in err


def test_realize_json(capsys):
    code, out, _ = run(capsys, "realize", "--type", "10", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mw"] == [2]
    assert payload["existence"] == "constructed"
    final = next(e for e in payload["evidence"] if e["torsion"] == [2])
    assert final["transcendental"] == [[4, 0], [0, 4]]


def test_realize_excluded(capsys):
    code, out, _ = run(capsys, "realize", "--type", "12", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mw"] is None
    assert payload["mw_name"] == "non-existent"
    assert payload["existence"] == "excluded"


def test_table1_json_stable(capsys):
    code, first, _ = run(capsys, "table1", "--json")
    assert code == 0
    code, second, _ = run(capsys, "table1", "--json")
    assert code == 0
    assert first == second
    payload = json.loads(first)
    assert len(payload["rows"]) == 13
    realizable = [r for r in payload["rows"] if r["final_mw"] is not None]
    assert len(realizable) == 11


def test_table1_text(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    assert "excluded" in out
    assert "Z/2+Z/2" in out


def test_table1_figures(tmp_path, capsys):
    outdir = tmp_path / "figs"
    code, _, err = run(capsys, "table1", "--csv", "--figures", str(outdir))
    assert code == 0
    names = {p.name for p in outdir.iterdir()}
    assert names == {"table1.csv", "table1.json", "fiber_configurations.png",
                     "classification_table.png"}
    assert "wrote" in err


def test_lattice_command(capsys):
    code, out, _ = run(capsys, "lattice", "U", "E8", "E8", "A2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rank"] == 20
    assert payload["det"] == -3
    assert payload["signature"] == [1, 19]
    assert payload["discriminant"]["factors"] == [3]


def test_lattice_bad_label(capsys):
    code, _, err = run(capsys, "lattice", "Z9")
    assert code == 1
    assert "error" in err


def test_dquot_command(capsys):
    code, out, _ = run(capsys, "dquot", "5", "5", "8", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["quotient"] == [2, 2]
    assert payload["group_name"] == "Z/2+Z/2"


def test_dquot_domain_error(capsys):
    code, _, err = run(capsys, "dquot", "2", "5")
    assert code == 1
    assert "error" in err


def test_binforms_command(capsys):
    code, out, _ = run(capsys, "binforms", "--det", "16", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["forms"] == [[[2, 0], [0, 8]], [[4, 0], [0, 4]]]
