"""
"""
import json
from fractions import Fraction as F

import pytest

from boolmeas import RunConfig, SamplePoint, normalize
from boolmeas.cli import EXIT_CAP, EXIT_INVALID, EXIT_OK, main
from boolmeas.core.kelley import MAX_MULTISET
from boolmeas.models import schema

HALF_MIX = '{"a": [[0, "1/2"]], "b": [[0, "1/2"]], "N": 2}'
SINGLETONS = '{"atoms": ["a", "b", "c"], "family": ["100", "010", "001"], "N": 3}'


def run_json(capsys, *argv):
    status = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return status, json.loads(out) if status == EXIT_OK else out


# ---------------------------------------------------------------- commands

def test_mix_json(capsys):
    status, doc = run_json(capsys, "mix", "--json", HALF_MIX)
    assert status == EXIT_OK
    assert doc["schema"] == "boolmeas/1"
    assert doc["command"] == "mix"
    assert doc["rows"] == [[0, 1, 2], [1, 1, 4], [2, 1, 4]]


def test_mix_csv(capsys):
    assert main(["mix", "--json", HALF_MIX, "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,value,num,den"
    assert lines[1:] == ["0,1/2,1,2", "1,1/4,1,4", "2,1/4,1,4"]


def test_kelley_singletons(capsys):
    status, doc = run_json(capsys, "kelley", "--json", SINGLETONS)
    assert status == EXIT_OK
    assert doc["value"] == [1, 3]
    assert doc["witness"] == [[1, 3]] * 3
    assert doc["agrees"] is True
    assert doc["instance"]["family"] == ["100", "010", "001"]


def test_kelley_pairs_table(capsys):
    text = '{"atoms": 3, "family": ["110", "011", "101"], "N": 3}'
    assert main(["kelley", "--json", text]) == EXIT_OK
    out = capsys.readouterr().out
    assert "value: 2/3" in out
    assert "agrees: True" in out


def test_kelley_from_file(tmp_path, capsys):
    p = tmp_path / "instance.json"
    p.write_text(SINGLETONS, encoding="utf-8")
    status, doc = run_json(capsys, "kelley", "--in", str(p))
    assert status == EXIT_OK
    assert doc["value"] == [1, 3]


def test_center(capsys):
    text = '{"atoms": 2, "weights": ["1/2", "1/2"], "depth": 1}'
    status, doc = run_json(capsys, "center", "--json", text)
    assert status == EXIT_OK
    assert doc["complete"] is True
    assert len(doc["rows"]) == 4


def test_swap(capsys):
    pair = {
        "phiA": {"domain": {"kind": "cantor"}, "images": {"0": [[0, 1, 1, 2]]}},
        "phiB": {"domain": {"kind": "cantor"}, "images": {"0": [[1, 2, 1, 1]]}},
        "m": 1,
    }
    status, doc = run_json(capsys, "swap", "--json", json.dumps(pair))
    assert status == EXIT_OK
    assert doc["symmetric"] is True

    pair["phiB"]["images"]["0"] = [[0, 1, 1, 4]]
    status, doc = run_json(capsys, "swap", "--json", json.dumps(pair))
    assert status == EXIT_OK
    assert doc["symmetric"] is False
    assert doc["report"]["violations"]


def test_name(capsys):
    query = {
        "hom": {"domain": {"kind": "cantor"}},
        "point": {"rational": [1, 3]},
        "queries": ["C0", "C1", "~C0"],
    }
    status, doc = run_json(capsys, "name", "--json", json.dumps(query))
    assert status == EXIT_OK
    assert [a["accepted"] for a in doc["answers"]] == [False, True, True]
    assert [a["query"] for a in doc["answers"]] == ["C0", "C1", "~C0"]


def test_converge(capsys):
    text = '{"sequence": {"kind": "bit-flip"}, "s": 3, "N": 5}'
    status, doc = run_json(capsys, "converge", "--json", text)
    assert status == EXIT_OK
    assert doc["pointwise"] is True
    assert doc["uniform"] is False


def test_density(capsys):
    status, doc = run_json(capsys, "density", "--debug-stream", "alternating", "--bits", "100")
    assert status == EXIT_OK
    assert doc["final"] == [1, 2]
    assert doc["rows"][-1] == [100, 50, 1, 2]


# ---------------------------------------------------------------- exit codes

@pytest.mark.parametrize(
    "text",
    [
        '{"atoms": 3, "family": []}',
        '{"schema": "boolmeas/2", "atoms": 3, "family": ["100"]}',
        '{"atoms": 3, "family": ["100",',
        "[1, 2, 3]",
        '{"atoms": 3, "family": ["000"]}',
    ],
)
def test_invalid_input_exits_2(text, capsys):
    assert main(["kelley", "--json", text]) == EXIT_INVALID
    assert "invalid input" in capsys.readouterr().err


def test_pointer_in_message(capsys):
    assert main(["kelley", "--json", '{"atoms": 3, "family": ["100", "10"]}']) == EXIT_INVALID
    assert "/family/1" in capsys.readouterr().err


def test_missing_input_exits_2(tmp_path, capsys):
    assert main(["kelley", "--in", str(tmp_path / "absent.json")]) == EXIT_INVALID
    assert main(["mix"]) == EXIT_INVALID


def test_cap_exceeded_exits_3(capsys):
    text = '{"atoms": 3, "family": ["100", "010"], "N": 13}'
    assert main(["kelley", "--json", text]) == EXIT_CAP
    assert "cap exceeded" in capsys.readouterr().err


def test_bad_density_bits_exits_2(capsys):
    assert main(["density", "--bits", "0"]) == EXIT_INVALID


# ---------------------------------------------------------------- plumbing

def test_json_output_is_deterministic(capsys):
    main(["density", "--seed", "9", "--bits", "500", "--format", "json"])
    first = capsys.readouterr().out
    main(["density", "--seed", "9", "--bits", "500", "--format", "json"])
    assert capsys.readouterr().out == first


def test_out_writes_report(tmp_path, capsys):
    target = tmp_path / "reports" / "mix.json"
    assert main(["mix", "--json", HALF_MIX, "--format", "json", "--out", str(target)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert target.read_text(encoding="utf-8") == printed


def test_config_yaml_sets_format(tmp_path, capsys):
    p = tmp_path / "run.yml"
    RunConfig(output_format="csv").to_yaml(str(p))
    assert main(["mix", "--json", HALF_MIX, "--config", str(p)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("n,value,num,den")


def test_cli_flag_beats_config(tmp_path, capsys):
    p = tmp_path / "run.yml"
    RunConfig(output_format="csv").to_yaml(str(p))
    status, doc = run_json(capsys, "mix", "--json", HALF_MIX, "--config", str(p))
    assert status == EXIT_OK
    assert doc["command"] == "mix"


def test_config_shift_piece_limit_reaches_homomorphisms(tmp_path, capsys):
    query = json.dumps({
        "hom": {"domain": {"kind": "cantor"}, "shift": 3},
        "point": {"rational": [1, 3]},
        "queries": ["C0"],
    })
    status, doc = run_json(capsys, "name", "--json", query)
    assert status == EXIT_OK
    assert doc["answers"][0]["accepted"] is True

    p = tmp_path / "run.yml"
    RunConfig(shift_piece_limit=4).to_yaml(str(p))
    assert main(["name", "--json", query, "--config", str(p)]) == EXIT_CAP
    assert "shift_preimage pieces" in capsys.readouterr().err


def test_config_point_bit_cap_reaches_seeded_points(tmp_path, capsys):
    query = json.dumps({
        "hom": {"domain": {"kind": "cantor"}, "images": {"0": [[1, 4, 3, 4]]}},
        "point": {"seed": 5},
        "queries": ["C0"],
    })
    assert main(["name", "--json", query]) == EXIT_OK
    capsys.readouterr()

    p = tmp_path / "run.yml"
    RunConfig(point_bit_cap=1).to_yaml(str(p))
    assert main(["name", "--json", query, "--config", str(p)]) == EXIT_CAP
    assert "sample point digits" in capsys.readouterr().err


def test_cap_flag_over_multiset_limit_exits_3(capsys):
    assert main(["kelley", "--json", SINGLETONS, "--cap", str(MAX_MULTISET + 1)]) == EXIT_CAP
    assert "cap exceeded" in capsys.readouterr().err
    assert main(["kelley", "--json", SINGLETONS, "--cap", "0"]) == EXIT_INVALID


@pytest.mark.parametrize(
    "element, pointer",
    [
        ({"finite": [3], "cofinite": "false"}, "/queries/0/cofinite"),
        ({"finite": [3], "cofinite": 0}, "/queries/0/cofinite"),
        ({"finite": [3, -1]}, "/queries/0/finite/1"),
        ({"finite": ["3"]}, "/queries/0/finite/0"),
    ],
)
def test_finite_cofinite_query_is_strict(element, pointer, capsys):
    query = {
        "hom": {"domain": {"kind": "finite-cofinite"}},
        "point": {"rational": [1, 3]},
        "queries": [element],
    }
    assert main(["name", "--json", json.dumps(query)]) == EXIT_INVALID
    assert pointer in capsys.readouterr().err


def test_json_report_revalidates(capsys):
    status, doc = run_json(capsys, "mix", "--json", HALF_MIX)
    assert status == EXIT_OK
    again = schema.load_document(json.dumps(doc))
    assert again["schema"] == schema.SCHEMA
    assert again["command"] == "mix"
    assert schema.parse_clopen(again["a"], "/a") == normalize([(0, F(1, 2))])

    status, doc = run_json(capsys, "kelley", "--json", SINGLETONS)
    assert status == EXIT_OK
    instance = schema.parse_kelley(schema.load_document(json.dumps(doc["instance"])))
    assert instance.family == ["100", "010", "001"]
    assert instance.algebra.atom_labels == ("a", "b", "c")


def test_name_report_point_reads_back(capsys):
    query = {"hom": {"domain": {"kind": "cantor"}}, "point": {"seed": 11}, "queries": ["C0", "C1"]}
    status, doc = run_json(capsys, "name", "--json", json.dumps(query))
    assert status == EXIT_OK
    point = SamplePoint.from_dict(schema.load_document(json.dumps(doc))["point"])
    assert point.digits(2) == SamplePoint.seeded(11).digits(2)
    assert [a["accepted"] for a in doc["answers"]] == [bool(d) for d in point.digits(2)]
