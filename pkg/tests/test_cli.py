import json

from bisurf.cli import main
from bisurf.tpoly import parse_tpoly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_saturate_d2(capsys, inputs_dir):
    code, out, _ = run(capsys, "info", str(inputs_dir / "d2_example.ex"), "--saturate")
    assert code == 0
    assert "optimized nu0: 2" in out
    assert "saturation indeg 1" in out
    assert "euler characteristic: 0" in out
    assert "expected degree: 7" in out


def test_info_json_round_trip(capsys, inputs_dir):
    code, text_out, _ = run(capsys, "info", str(inputs_dir / "segre.ex"))
    code2, json_out, _ = run(capsys, "info", str(inputs_dir / "segre.ex"), "--json")
    assert code == code2 == 0
    payload = json.loads(json_out)
    assert payload["expected_det_degree"] == 2
    assert f"expected degree: {payload['expected_det_degree']}" in text_out
    assert f"euler characteristic: {payload['euler_char']}" in text_out


def test_info_warns_on_common_factor(capsys, inputs_dir):
    code, out, err = run(capsys, "info", str(inputs_dir / "common_factor.ex"))
    assert code == 2
    assert "not finite" in err


def test_matrix_dimensions(capsys, inputs_dir):
    code, out, _ = run(
        capsys, "matrix", str(inputs_dir / "d2_example.ex"), "--saturate", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == 9 and payload["cols"] == 12 and payload["nu"] == 2


def test_membership_output(capsys, inputs_dir):
    code, out, _ = run(
        capsys, "membership", str(inputs_dir / "segre.ex"), "--point", "1,1,1,2"
    )
    assert code == 0
    assert out.strip() == "OFF (rank 4 = k)"
    code, out, _ = run(
        capsys, "membership", str(inputs_dir / "segre.ex"), "--point", "1,1,1,1"
    )
    assert out.strip() == "ON (rank 3 < 4)"


def test_membership_rejects_zero_point(capsys, inputs_dir):
    code, _, err = run(
        capsys, "membership", str(inputs_dir / "segre.ex"), "--point", "0,0,0,0"
    )
    assert code == 1 and "projective" in err


def test_implicit_segre(capsys, inputs_dir):
    code, out, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"))
    assert code == 0
    assert out.splitlines()[0] == "T1*T4 - T2*T3"


def test_implicit_text_json_agree(capsys, inputs_dir):
    code, text_out, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"))
    code2, json_out, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"), "--json")
    assert code == code2 == 0
    payload = json.loads(json_out)
    assert parse_tpoly(payload["implicit_equation"]) == parse_tpoly(text_out.splitlines()[0])
    assert payload["power"] == 1 and payload["base_points_lci"] is True


def test_implicit_deterministic(capsys, inputs_dir):
    _, out1, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"), "--seed", "4")
    _, out2, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"), "--seed", "4")
    assert out1 == out2


def test_implicit_output_passes_verify(capsys, inputs_dir, tmp_path):
    _, out, _ = run(capsys, "implicit", str(inputs_dir / "segre.ex"))
    eq_file = tmp_path / "eq.txt"
    eq_file.write_text(out.splitlines()[0] + "\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "verify", str(inputs_dir / "segre.ex"), "--equation", str(eq_file)
    )
    assert code == 0
    assert out.strip() == "VERIFIED"


def test_verify_rejects_wrong_equation(capsys, inputs_dir, tmp_path):
    eq_file = tmp_path / "eq.txt"
    eq_file.write_text("T1\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "verify", str(inputs_dir / "segre.ex"), "--equation", str(eq_file)
    )
    assert code == 2
    assert "FAILED" in out


def test_lift_round_trips(capsys, inputs_dir, tmp_path):
    code, out, _ = run(capsys, "lift", str(inputs_dir / "mixed23.ex"))
    assert code == 0
    assert out.startswith("degree: 6 6")
    lifted = tmp_path / "lifted.ex"
    lifted.write_text(out, encoding="utf-8")
    code, out2, _ = run(capsys, "lift", str(lifted))
    assert code == 0 and out2 == out


def test_mod_option(capsys, inputs_dir):
    code, out, _ = run(
        capsys, "implicit", str(inputs_dir / "segre.ex"), "--mod", "101"
    )
    assert code == 0
    assert out.splitlines()[0] == "T1*T4 + 100*T2*T3"
    code, _, err = run(
        capsys, "implicit", str(inputs_dir / "segre.ex"), "--mod", "100"
    )
    assert code == 1 and "prime" in err


def test_unreadable_file(capsys, tmp_path):
    code, _, err = run(capsys, "info", str(tmp_path / "missing.ex"))
    assert code == 1


def test_bad_strategy(capsys, inputs_dir):
    code, _, err = run(
        capsys, "implicit", str(inputs_dir / "segre.ex"), "--strategy", "sampled:x"
    )
    assert code == 1
