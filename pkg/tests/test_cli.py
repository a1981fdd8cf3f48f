import json
from pathlib import Path

import pytest

from delpezzo4 import cli
from delpezzo4.marking import DP4Marking

SAMPLE_CHAIN = Path(__file__).resolve().parents[1] / "scripts" / "sample_chain.json"
N_GENS = "i1234,i1235,i1245,i1345"


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("degree,count", [(4, 16), (3, 27), (2, 56), (1, 240)])
def test_lines_counts(capsys, degree, count):
    code, doc = run_json(capsys, "lines", "--degree", str(degree))
    assert code == 0
    assert doc["schema_version"] == "1" and doc["command"] == "lines"
    assert doc["outputs"]["count"] == count == len(doc["outputs"]["lines"])


def test_lines_rejects_bad_degree(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["lines", "--degree", "9"])
    assert exc.value.code == 2


@pytest.mark.parametrize("suite", ["parity", "aut-order", "relation"])
def test_verify_suites_pass(capsys, suite):
    code, doc = run_json(capsys, "verify", suite)
    assert code == 0 and doc["outputs"]["passed"]


def test_verify_aut_order_reports_1920(capsys):
    _, doc = run_json(capsys, "verify", "aut-order")
    assert doc["outputs"]["results"][0]["detail"]["order"] == 1920


def test_galois_normal_subgroup_is_minimal(capsys):
    code, doc = run_json(capsys, "galois", "--gens", N_GENS)
    out = doc["outputs"]
    assert code == 0
    assert out["order"] == 16 and out["invariant_rank"] == 1 and out["minimal"]
    assert out["h1_size"] == 65536
    assert out["link_report"]["links"] == [] and out["link_error"] is None


def test_galois_trivial_group_is_not_minimal(capsys):
    code, doc = run_json(capsys, "galois")
    out = doc["outputs"]
    assert code == 0
    assert out["invariant_rank"] == 6 and not out["minimal"]
    assert out["link_report"] is None and "refused" in out["link_error"]


def test_galois_order_two(capsys):
    _, doc = run_json(capsys, "galois", "--gens", "i1234")
    assert doc["outputs"]["h1_size"] == 16


def test_galois_point_flag_gives_type_one_link(capsys):
    _, doc = run_json(capsys, "galois", "--gens", N_GENS, "--point")
    links = doc["outputs"]["link_report"]["links"]
    assert [x["type"] for x in links] == ["BlowupI"]


def test_galois_bad_token(capsys):
    assert cli.main(["galois", "--gens", "(16)"]) == 2
    assert "error" in capsys.readouterr().err


def test_chain_empty_is_identity(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    code, doc = run_json(capsys, "chain", str(path))
    assert code == 0 and doc["outputs"]["identity"]


def test_chain_sample_maps_marked_lines(capsys):
    code, doc = run_json(capsys, "chain", str(SAMPLE_CHAIN))
    out = doc["outputs"]
    assert code == 0 and out["equivariant"] and out["invariant_preserved"]
    final = DP4Marking.from_json(out["final_marking"])
    assert [m["to"] for m in out["marked_lines"]] == [list(x.coords) for x in final.L]


def test_chain_mismatched_blowdown_is_an_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([{"type": "blowdown"}]))
    assert cli.main(["chain", str(path)]) == 2
    assert "error" in capsys.readouterr().err


def test_chain_missing_file(capsys, tmp_path):
    assert cli.main(["chain", str(tmp_path / "nope.json")]) == 2


def test_involutions_report(capsys):
    code, doc = run_json(capsys, "involutions")
    out = doc["outputs"]
    std = DP4Marking.standard()
    assert code == 0 and len(out["quadric_involutions"]) == 5
    assert [x["image_of_Q"] for x in out["quadric_involutions"]] == [list(li.coords) for li in std.L]
    assert out["geiser_line_permutation_identity"] and out["bertini_line_permutation_identity"]


def test_marking_roundtrip_from_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(DP4Marking.standard().to_json()))
    code, doc = run_json(capsys, "marking", "--marking-file", str(path))
    assert code == 0 and doc["outputs"]["roundtrip"]


def test_marking_bad_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"Q": [1]}')
    assert cli.main(["marking", "--marking-file", str(path)]) == 2


def test_json_output_is_deterministic(capsys):
    cli.main(["galois", "--gens", "(12345),i1234", "--deg2", "--json"])
    first = capsys.readouterr().out
    cli.main(["galois", "--gens", "(12345),i1234", "--deg2", "--json"])
    assert capsys.readouterr().out == first


def test_no_color_plain_text(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert cli.main(["verify", "relation"]) == 0
    out = capsys.readouterr().out
    assert "\033[" not in out and out.startswith("PASS")
