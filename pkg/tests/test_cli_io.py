import json

import pytest
from gmpy2 import mpq

from crsym.catalog import builtin_models, get_model, verify_model
from crsym.cli import PUBLISHED_DIMENSIONS, main
from crsym.gaussian import GaussRational
from crsym.io import (
    SCHEMA_VERSION,
    dump_json,
    load_model,
    parse_point,
    point_from_json,
    point_to_json,
    record_from_json,
    record_to_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# JSON ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("rec", builtin_models(), ids=lambda r: r.name)
def test_record_round_trip(rec):
    obj = record_to_json(rec)
    assert obj["schema_version"] == SCHEMA_VERSION
    back = record_from_json(json.loads(dump_json(obj)))
    assert dump_json(record_to_json(back)) == dump_json(obj)
    assert back.generators == rec.generators
    if rec.defining is not None:
        assert back.defining.rho == rec.defining.rho


def test_schema_version_is_checked():
    obj = record_to_json(get_model("M5"))
    obj["schema_version"] = 99
    with pytest.raises(ValueError):
        record_from_json(obj)


def test_points():
    pt = parse_point("z1=1/2, w=-3/4*i")
    assert pt == {"z1": GaussRational(mpq(1, 2)), "w": GaussRational(0, mpq(-3, 4))}
    assert point_from_json(point_to_json(pt)) == pt
    assert parse_point("w=1+i, z1=(1-i)^2/2") == {"w": GaussRational(1, 1), "z1": GaussRational(0, -1)}
    for bad in ("z1", "z1=w", "z1="):
        with pytest.raises(ValueError):
            parse_point(bad)


def test_load_model_file(tmp_path):
    path = tmp_path / "m5.json"
    path.write_text(dump_json(record_to_json(get_model("M5"))), encoding="utf-8")
    assert load_model(path).defining.rho == get_model("M5").defining.rho


# commands ------------------------------------------------------------------------------------


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert len(out.splitlines()) == len(builtin_models())
    assert out.startswith("quadric-n1-p")


def test_dim_table_against_published_cells(capsys):
    code, out, _ = run(capsys, "dim-table", "--n-max", "7", "--check-paper")
    cells = sum(len(v) for v in PUBLISHED_DIMENSIONS.values())
    assert code == 0
    assert out.splitlines()[-1] == f"OK: {cells}/{cells} cells match"
    assert "n=6: 50 43 42 47" in out


def test_thresholds_and_max_parabolic(capsys):
    assert run(capsys, "thresholds", "--n", "2")[1] == "15 11 8\n"
    assert run(capsys, "max-parabolic", "--n", "4")[1] == "26 at s in {1, 3}\n"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--model", "vfrepres-n2-m1-plus", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["dim"] == 10


def test_verify_json_is_byte_identical(capsys):
    a = run(capsys, "verify", "--model", "e:p123", "--solver", "off", "--json")[1]
    b = run(capsys, "verify", "--model", "e:p123", "--solver", "off", "--json")[1]
    assert a == b


def test_verify_from_file(capsys, tmp_path):
    path = tmp_path / "heis.json"
    path.write_text(dump_json(record_to_json(get_model("heis-semidirect"))), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--file", str(path))
    assert code == 0 and out.startswith("heis-semidirect [bracket-only]: PASS")


def test_failing_verification_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--model", "ramified-n1-m2-r3", "--solver", "on")
    assert code == 1 and "FAIL solver" in out


def test_unknown_model_is_a_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--model", "nope")
    assert code == 2 and "unknown model" in err and "usage" in err


def test_syntax_error_exits_two(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("Im(w - abs2(z1)\n", encoding="utf-8")
    code, _, err = run(capsys, "solve", "--file", str(path), "--degree", "2")
    assert code == 2
    assert err.strip() == "crsym: syntax error at offset 16: expected ')', found end of input"


def test_non_real_file_exits_two(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("w - abs2(z1)\n", encoding="utf-8")
    assert run(capsys, "levi", "--file", str(path), "--point", "z1=0,w=0")[0] == 2


def test_missing_file_exits_two(capsys, tmp_path):
    assert run(capsys, "solve", "--file", str(tmp_path / "absent"), "--degree", "1")[0] == 2


def test_solve_text_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("Im(w) - abs2(w)*abs2(z1)\n", encoding="utf-8")
    code, out, _ = run(capsys, "solve", "--file", str(path), "--degree", "3", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["dim"] == 5 and len(obj["basis"]) == 5 and obj["degree"] == 3


def test_blowup_and_levi(capsys, tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("Im(w) - abs2(z1)\n", encoding="utf-8")
    code, out, _ = run(capsys, "blowup", "--file", str(path), "--map", "point")
    assert code == 0
    assert "normalized: -z1*conj(z1)*w*conj(w) + 1/2*i*conj(w) - 1/2*i*w" in out
    code, out, _ = run(capsys, "levi", "--file", str(path), "--point", "z1=0,w=0")
    assert code == 0 and "signature (1, 0)" in out


def test_stabilizer(capsys):
    code, out, _ = run(capsys, "stabilizer", "--model", "quadric-n2-pm", "--subspace", "z2,w")
    assert code == 0 and "dimension 8" in out.splitlines()[0]
    code, out, _ = run(capsys, "stabilizer", "--model", "M5", "--subspace", "w", "--json")
    assert code == 0 and json.loads(out)["dim"] == 6


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "--n-max", "30")
    assert code == 0 and out.strip() == "OK: n=1..30, every candidate below the parabolic maximum"


def test_report_is_ordered_and_deterministic(capsys):
    code1, out1, _ = run(capsys, "report")
    code2, out2, _ = run(capsys, "report", "--jobs", "3")
    assert out1 == out2 and code1 == code2
    summary = json.loads(out1)
    assert [r["model"] for r in summary["reports"]] == [r.name for r in builtin_models()]
    # the three ramified records fail only their solver cross-check
    assert summary["failed"] == ["ramified-n1-m2-r3", "ramified-n2-m2-r3", "ramified-n2-m3-r5"]
    assert code1 == 1
    for r in summary["reports"]:
        if r["model"] in summary["failed"]:
            bad = [c["name"] for c in r["checks"] if c["status"] == "fail"]
            assert bad == ["solver"]


def test_report_matches_library(capsys):
    summary = json.loads(run(capsys, "report")[1])
    first = summary["reports"][0]
    assert first == verify_model(get_model(first["model"])).as_dict()
