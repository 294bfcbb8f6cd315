import json

import pytest

from crossed_order.scenario_io import canonical_dumps, dumps_scenario, load_json, load_scenario

CANONICAL = ["example_a", "example_b", "example_c", "wild_f2t_t", "wild_f2t_t2", "mixed_f4t_t", "s3_p3"]


def test_validate_ok(run_cli, scen):
    code, out, _ = run_cli("validate", scen / "example_a.json")
    assert code == 0 and out == "valid\n"


def test_validate_domain_error(run_cli, scen):
    code, out, _ = run_cli("validate", scen / "bad_p2_e0.json")
    assert code == 1
    assert "image order not prime to p" in out
    code, out, _ = run_cli("validate", "--json", scen / "bad_p2_e0.json")
    rec = json.loads(out)
    assert code == 1 and rec["valid"] is False


def test_validate_malformed(run_cli, scen):
    code, out, err = run_cli("validate", scen / "truncated.json")
    assert code == 2 and "malformed JSON" in err and out == ""


def test_missing_file(run_cli, tmp_path):
    code, _, err = run_cli("analyze", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


def test_unknown_key(run_cli, scen, tmp_path):
    obj = load_json(scen / "example_a.json")
    obj["colour"] = "blue"
    p = tmp_path / "x.json"
    p.write_text(json.dumps(obj))
    code, _, err = run_cli("analyze", p)
    assert code == 2 and "schema violation" in err


def test_analyze_example_a(run_cli, scen):
    code, out, _ = run_cli("analyze", "--oracle", scen / "example_a.json")
    assert code == 0
    assert "verdict: NOT MAXIMAL; hereditary; |H_f|=2; 2 maximal orders" in out
    assert "2 components (formula) = 2 (oracle): OK" in out


def test_analyze_json(run_cli, scen):
    code, out, _ = run_cli("analyze", "--json", scen / "example_c.json")
    rec = json.loads(out)
    assert code == 0 and rec["maximal"] is True and rec["maximal_order_count"] == 1
    assert "oracle" not in rec


def test_analyze_not_hereditary(run_cli, scen):
    code, out, _ = run_cli("analyze", scen / "wild_f2t_t2.json")
    assert code == 0
    assert "NOT HEREDITARY" in out and "N^2 = 0" in out


def test_analyze_invalid_scenario(run_cli, scen):
    code, _, err = run_cli("analyze", scen / "bad_p2_e0.json")
    assert code == 1 and "image order not prime to p" in err


def test_seed_choices(run_cli, scen, tmp_path):
    obj = {"version": 1, "field": {"kind": "prime", "p": 5}, "group": "cyclic:4",
           "ramification": {"a": 2}, "cocycle": {"cyclic": 4}}
    p = tmp_path / "c4.json"
    p.write_text(canonical_dumps(obj))
    _, base, _ = run_cli("analyze", "--json", p)
    code, alt, _ = run_cli("analyze", "--json", "--seed-choices", "zeta=3", p)
    assert code == 0
    b, a = json.loads(base), json.loads(alt)
    assert a["sigma0"] == "a^3" and b["sigma0"] == "a"
    for key in ("Gamma_f", "H_f", "component_count", "d"):
        assert a[key] == b[key]
    code, _, err = run_cli("analyze", "--seed-choices", "sigma0=a^2", p)
    assert code == 1
    code, _, err = run_cli("analyze", "--seed-choices", "colour=3", p)
    assert code == 2


def test_oracle_budget(run_cli, scen, monkeypatch):
    monkeypatch.setenv("CROSSED_ORDER_ORACLE_BUDGET", "1")
    code, out, err = run_cli("analyze", "--oracle", scen / "example_c.json")
    assert code == 3
    assert "verdict: MAXIMAL" in out
    assert "oracle out of range" in err
    # without --oracle the budget is irrelevant
    code, _, _ = run_cli("analyze", scen / "example_c.json")
    assert code == 0


def test_census_cli(run_cli, scen):
    code, out, _ = run_cli("census", scen / "census_f5_cyclic.json")
    assert code == 0 and out.endswith("census: 8 scenarios; zero mismatches\n")
    code, out, _ = run_cli("census", "--json", scen / "census_f5_cyclic.json")
    assert json.loads(out)["total"] == 8
    code, _, err = run_cli("census", scen / "census_tiny_budget.json")
    assert code == 3 and "oracle out of range" in err
    code, out, _ = run_cli("census", scen / "census_empty.json")
    assert code == 0 and "0 scenarios" in out


def test_reduce(run_cli, scen, tmp_path):
    target = tmp_path / "local.json"
    code, out, _ = run_cli("reduce", "-o", target, scen / "global" / "g2_k2_klein.json")
    assert code == 0
    assert "note: global verdict read from the decomposition-group corner" in out
    s = load_scenario(target)
    assert s.group.order == 2
    code, out2, _ = run_cli("analyze", target)
    assert out2.split("verdict:")[1].splitlines()[0] == out.split("verdict:")[1].splitlines()[0]


def test_reduce_intransitive(run_cli, scen):
    code, _, err = run_cli("reduce", scen / "global" / "bad_intransitive.json")
    assert code == 1 and "reduce each orbit separately" in err


def test_version(run_cli, capsys):
    from crossed_order.cli import main

    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "crossed-order" in capsys.readouterr().out


@pytest.mark.parametrize("name", CANONICAL)
def test_round_trip(scen, name):
    path = scen / f"{name}.json"
    assert dumps_scenario(load_scenario(path)) == path.read_text(encoding="utf-8")
