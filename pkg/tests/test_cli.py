import json

import pytest

from cayleykit.cli import main, parse_spec
from cayleykit.zoo import GroupSpec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write_group_file(tmp_path, name, spec):
    from cayleykit.zoo import regular_representation
    G = regular_representation(spec, "left").group
    path = tmp_path / name
    path.write_text(json.dumps({
        "degree": G.degree,
        "generators": [list(g.images) for g in G.generators]}))
    return str(path)


class TestParseSpec:
    def test_name_forms(self):
        assert parse_spec("cyclic(12)").size == 12
        assert parse_spec("frobenius(7, 3)").size == 21
        assert parse_spec("q8").size == 8
        assert parse_spec("elementary_abelian_2(3)").size == 8

    def test_json_form(self):
        text = json.dumps(GroupSpec.dicyclic(5).to_json())
        spec = parse_spec(text)
        assert spec.size == 20 and spec.kind == "dicyclic"

    def test_rejects_garbage(self):
        for bad in ["", "cyclic(", "wat(3)", "q8(2)"]:
            with pytest.raises(ValueError):
                parse_spec(bad)


class TestConstruct:
    def test_regular(self, capsys, tmp_path):
        out = tmp_path / "g.json"
        code, payload = run(capsys, "construct", "--spec", "cyclic(6)",
                            "--out", str(out))
        assert code == 0
        assert payload["group"]["order"] == 6
        assert json.loads(out.read_text()) == payload

    def test_holomorph(self, capsys):
        code, payload = run(capsys, "construct", "--spec", "q8",
                            "--holomorph")
        assert code == 0
        assert payload["construction"] == "inner_holomorph"
        assert payload["group"]["order"] == 32

    def test_bad_spec_is_usage_error(self, capsys):
        code, _ = run(capsys, "construct", "--spec", "nope(1)")
        assert code == 2


class TestClosure:
    def test_prime_cycle_2_closed(self, capsys):
        code, payload = run(capsys, "closure", "--spec", "cyclic(5)", "--k",
                            "2")
        assert code == 0
        assert payload["is_k_closed"]
        assert payload["closure"]["order"] == 5

    def test_needs_spec_or_fixture(self, capsys):
        code, _ = run(capsys, "closure", "--k", "2")
        assert code == 2

    def test_budget_exit_code(self, capsys):
        code, _ = run(capsys, "closure", "--spec", "cyclic(10)", "--k", "2",
                      "--budget", "8")
        assert code == 3

    def test_fixture_input(self, capsys, tmp_path):
        path = write_group_file(tmp_path, "z4.json", GroupSpec.cyclic(4))
        code, payload = run(capsys, "closure", "--fixture", path, "--k", "2")
        assert code == 0 and payload["source"] == {"fixture": path}


class TestCiCheck:
    def test_single_class_passes(self, capsys):
        code, payload = run(capsys, "ci-check", "--spec", "cyclic(5)",
                            "--target-spec", "cyclic(5)")
        assert code == 0
        assert payload["verdict"]["status"] == "ci_for_this_structure"

    def test_witness_fails(self, capsys):
        code, payload = run(capsys, "ci-check", "--spec", "frobenius(5,4)",
                            "--target-spec", "dicyclic(5)")
        assert code == 1
        assert payload["verdict"]["status"] == "not_ci_witness"
        assert payload["verdict"]["classes"] == 2


class TestTower:
    def test_same_group(self, capsys, tmp_path):
        p1 = write_group_file(tmp_path, "a.json", GroupSpec.cyclic(12))
        p2 = write_group_file(tmp_path, "b.json", GroupSpec.cyclic(12))
        code, payload = run(capsys, "tower", p1, p2)
        assert code == 0
        assert payload["ratios"] == [3, 2, 2]

    def test_outside_family_is_usage_error(self, capsys, tmp_path):
        p = write_group_file(tmp_path, "z9.json", GroupSpec.cyclic(9))
        code, _ = run(capsys, "tower", p, p)
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _ = run(capsys, "tower", str(tmp_path / "x.json"),
                      str(tmp_path / "y.json"))
        assert code == 2


class TestReproduce:
    def test_passing_claim(self, capsys):
        code, payload = run(capsys, "reproduce", "zsigmondy-table")
        assert code == 0
        assert payload["report"]["pass"]
        assert "wall_time_seconds" in payload

    def test_report_body_is_stable(self, capsys):
        _, first = run(capsys, "reproduce", "blocks-oracle")
        _, second = run(capsys, "reproduce", "blocks-oracle")
        assert first["report"] == second["report"]

    def test_unknown_claim(self, capsys):
        code, _ = run(capsys, "reproduce", "nonsense")
        assert code == 2


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
