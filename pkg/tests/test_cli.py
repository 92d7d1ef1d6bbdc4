import json

from gw_euler.cli import run


def test_degree_headline_example(capsys):
    code = run(["degree", "--system", "x^2-1;y^2-x^2;z^2+x^2", "--field", "Q"])
    out = capsys.readouterr()
    assert code == 0
    assert out.out.strip() == "4H"


def test_simplify_example(capsys):
    assert run(["simplify", "<9>", "--field", "Q"]) == 0
    assert capsys.readouterr().out.strip() == "<1>"


def test_o_n_stacky_example(capsys):
    assert run(["o-n-stacky", "--n", "3", "--mode", "naive"]) == 0
    assert capsys.readouterr().out.strip() == "3<1>"


def test_json_mode_embeds_manifest(capsys):
    assert run(["degree", "--system", "x^2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "H"
    manifest = payload["manifest"]
    assert manifest["command"] == "degree"
    assert manifest["order"] == "degrevlex"
    assert manifest["version"]


def test_determinism_byte_identical(capsys):
    args = ["ss", "--system", "x^3-1", "--json"]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    second = capsys.readouterr().out
    assert first == second


def test_domain_error_exits_2_with_error_object(capsys):
    code = run(["degree", "--system", "x^2;x*y"])
    out = capsys.readouterr().out
    assert code == 2
    payload = json.loads(out)
    assert payload["error"]["type"] == "NonIsolatedZeros"


def test_usage_error_exits_1(capsys):
    assert run(["no-such-command"]) == 1
    assert run(["degree", "--system", "x^2-1", "--field", "fp:6"]) == 1


def test_o_n_signs(capsys):
    assert run(["o-n", "--n", "3", "--sign", "-1"]) == 0
    assert capsys.readouterr().out.strip() == "H + <-1>"
    assert run(["o-n", "--n", "2", "--sign", "+1"]) == 0
    assert capsys.readouterr().out.strip() == "H"


def test_trace_form_command(capsys):
    assert run(["trace-form", "--modulus", "t^2+t+1", "--elem", "3*t^2",
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["gram"] == [[-3, 6], [6, -3]]
    assert payload["invariants"]["rank"] == 2
    assert payload["invariants"]["signature"] == 0


def test_consistency_command(capsys):
    assert run(["consistency", "--system", "x^3-1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "match"


def test_lines_p4_over_f7(capsys):
    assert run(["lines-p4", "--field", "fp:7", "--seed", "42", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 5
    assert payload["stacky_class"] == "2H + <1>"
    assert "swapped_class" in payload


def test_lines_p4_swap_flag(capsys):
    assert run(["lines-p4", "--field", "fp:7", "--seed", "42",
                "--swap-first-pair", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 5


def test_verify_lines_command(capsys):
    assert run(["verify-lines", "--p", "7", "--seed", "42", "--trials", "1",
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["p"] == 7
    assert payload["trials"]


def test_ss_report(capsys):
    assert run(["ss", "--system", "x^3-1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 3
    assert payload["class"] == "H + <1>"
    assert payload["invariants"]["signature"] == 1


def test_lines_p4_separate_p_flag(capsys):
    """--field fp with a separate --p combines into fp:<p>."""
    assert run(["lines-p4", "--field", "fp", "--p", "7", "--seed", "42",
                "--swap-first-pair", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 5
    assert payload["manifest"]["field"] == "fp:7"


def test_lines_p4_planes_file(tmp_path, capsys):
    from gw_euler.enumerative import reference_lines_config
    path = tmp_path / "planes.json"
    path.write_text(json.dumps(reference_lines_config().to_json()))
    assert run(["lines-p4", "--field", "Q", "--planes", str(path),
                "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 5


def test_ext_field_flag(tmp_path, capsys):
    from gw_euler.fields import field_to_json, make_extension, QQ
    path = tmp_path / "field.json"
    path.write_text(json.dumps(field_to_json(make_extension(QQ, "t^2+1"))))
    assert run(["simplify", "<8*t> + <-8*t>", "--field", f"ext:{path}"]) == 0
    assert capsys.readouterr().out.strip() == "H"
