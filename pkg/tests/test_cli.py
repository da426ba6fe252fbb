"""CLI behavior: outputs, determinism, exit codes."""

import json
from fractions import Fraction

import pytest

from incmax.cli import main
from incmax.adversarial import gen_knapsack_trap
from incmax.instance_io import save_instance


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestRun:
    def test_gk_json_exact_ratio(self, capsys):
        code, out = run_cli(
            capsys, "run", "--gen", "gk:k=2", "--alg", "greedy", "--kmax", "4",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        rows = doc["algorithms"]["greedy"]["rows"]
        assert rows[3]["ratio"] == "32/15"
        assert doc["algorithms"]["greedy"]["worst_ratio"] == "32/15"

    def test_gk_csv_nine_digits(self, capsys):
        code, out = run_cli(
            capsys, "run", "--gen", "gk:k=2", "--alg", "greedy", "--kmax", "4",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,alg_value,opt_value,ratio"
        assert lines[4] == "4,30,64,2.13333333"

    def test_region_phase_within_bound(self, capsys):
        code, out = run_cli(
            capsys, "run", "--gen", "region:N=8,beta=0.86", "--alg", "phase",
            "--kmax", "8", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)["algorithms"]["phase"]
        assert doc["worst_ratio"] <= 2.6180339888
        assert doc["bound_satisfied"] is True

    def test_knapsack_trap_ratio(self, capsys):
        # oracle: opt_4 = 4(1 - 2 eps) = 7/2 by enumeration, greedy holds the
        # big item plus three tiny ones (243/256), so the worst ratio is
        # 896/243, comfortably above k - 1
        code, out = run_cli(
            capsys, "run", "--gen", "knapsack_trap:k=4", "--alg", "greedy",
            "--kmax", "4", "--format", "json",
        )
        assert code == 0
        worst = json.loads(out)["algorithms"]["greedy"]["worst_ratio"]
        p, q = worst.split("/")
        assert Fraction(int(p), int(q)) == Fraction(896, 243)
        assert Fraction(int(p), int(q)) > Fraction(7, 2)

    def test_both_algorithms_sections(self, capsys):
        code, out = run_cli(
            capsys, "run", "--gen", "region:N=3,beta=0.86", "--alg", "both",
            "--kmax", "3",
        )
        assert code == 0
        assert "# algorithm: phase" in out and "# algorithm: greedy" in out

    def test_csv_and_json_carry_same_numbers(self, capsys):
        _, csv_out = run_cli(
            capsys, "run", "--gen", "gk:k=2", "--alg", "greedy", "--kmax", "4",
        )
        _, json_out = run_cli(
            capsys, "run", "--gen", "gk:k=2", "--alg", "greedy", "--kmax", "4",
            "--format", "json",
        )
        doc = json.loads(json_out)["algorithms"]["greedy"]
        csv_rows = [line.split(",") for line in csv_out.strip().splitlines()[1:-1]]
        for row, json_row in zip(csv_rows, doc["rows"]):
            ratio = json_row["ratio"]
            if isinstance(ratio, str) and "/" in ratio:
                p, q = ratio.split("/")
                ratio = int(p) / int(q)
            assert float(row[3]) == pytest.approx(float(ratio), rel=1e-8)

    def test_deterministic_output_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            code = main(
                ["run", "--gen", "gk:k=2", "--alg", "both", "--kmax", "4",
                 "--format", "json", "--out", str(path)]
            )
            assert code == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "trap.json"
        save_instance(path, gen_knapsack_trap(2))
        code, out = run_cli(
            capsys, "run", "--file", str(path), "--alg", "greedy", "--kmax", "2",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["k_max"] == 2


class TestVerify:
    def test_witness_verdicts(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--gen", "flow_trap",
            "--checks", "monotone,subadditive,accountable", "--format", "json",
        )
        assert code == 0
        verdicts = {c["property"]: c["verdict"] for c in json.loads(out)["checks"]}
        assert verdicts == {
            "monotone": "holds",
            "subadditive": "fails",
            "accountable": "fails",
        }

    def test_augmentable_check_token(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--gen", "path_matching",
            "--checks", "submodular,augmentable:2", "--format", "json",
        )
        assert code == 0
        verdicts = {c["property"]: c["verdict"] for c in json.loads(out)["checks"]}
        assert verdicts["submodular"] == "fails"
        assert verdicts["alpha-augmentable(2)"] == "holds"

    def test_region_all_three_hold(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--gen", "region:N=3,beta=0.86", "--format", "json",
        )
        assert code == 0
        assert all(c["verdict"] == "holds" for c in json.loads(out)["checks"])

    def test_expectation_match_and_mismatch(self, capsys, tmp_path):
        good = tmp_path / "good.json"
        good.write_text(json.dumps({"monotone": True, "subadditive": False}))
        code, _ = run_cli(
            capsys, "verify", "--gen", "flow_trap",
            "--checks", "monotone,subadditive", "--expect", str(good),
        )
        assert code == 0
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"subadditive": "holds"}))
        code, _ = run_cli(
            capsys, "verify", "--gen", "flow_trap",
            "--checks", "monotone,subadditive", "--expect", str(bad),
        )
        assert code == 1


class TestLowerbound:
    def test_problematic_pair_certified(self, capsys):
        code, out = run_cli(
            capsys, "lowerbound", "--mode", "problematic-pair",
            "--rho", "2.18", "--beta", "0.86", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["certified"] is True

    def test_problematic_pair_rejected(self, capsys):
        code, out = run_cli(
            capsys, "lowerbound", "--mode", "problematic-pair",
            "--rho", "1.0", "--beta", "0.5", "--format", "json",
        )
        assert code == 1
        assert json.loads(out)["certified"] is False

    def test_gk_table_matches_closed_form(self, capsys):
        code, out = run_cli(
            capsys, "lowerbound", "--mode", "gk-table", "--kmin", "2", "--kmax", "3",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert [row["match"] for row in doc["rows"]] == [True, True]
        assert doc["rows"][0]["ratio"] == "32/15"

    def test_gk_table_consistent_with_run(self, capsys):
        _, table_out = run_cli(
            capsys, "lowerbound", "--mode", "gk-table", "--kmin", "2", "--kmax", "2",
            "--format", "json",
        )
        _, run_out = run_cli(
            capsys, "run", "--gen", "gk:k=2", "--alg", "greedy", "--kmax", "4",
            "--format", "json",
        )
        table_ratio = json.loads(table_out)["rows"][0]["ratio"]
        run_worst = json.loads(run_out)["algorithms"]["greedy"]["worst_ratio"]
        assert table_ratio == run_worst

    def test_region_search_rows(self, capsys):
        code, out = run_cli(
            capsys, "lowerbound", "--mode", "region-search", "--beta", "0.86",
            "--nmin", "3", "--nmax", "5", "--nstep", "1", "--format", "json",
        )
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [r["N"] for r in rows] == [3, 4, 5]
        ratios = [r["worst_ratio"] for r in rows]
        assert all(a <= b + 1e-12 for a, b in zip(ratios, ratios[1:]))


class TestExitCodes:
    def test_unknown_generator_is_input_error(self, capsys):
        code, _ = run_cli(capsys, "run", "--gen", "mystery:k=2", "--alg", "greedy",
                          "--kmax", "2")
        assert code == 2

    def test_unparseable_file_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ nope")
        code, _ = run_cli(capsys, "run", "--file", str(path), "--alg", "greedy",
                          "--kmax", "2")
        assert code == 2

    def test_budget_exhaustion_is_resource_error(self, capsys):
        code, _ = run_cli(
            capsys, "run", "--gen", "knapsack_trap:k=4", "--alg", "greedy",
            "--kmax", "4", "--budget", "10",
        )
        assert code == 3

    def test_bad_flag_is_input_error(self, capsys):
        assert main(["run", "--alg", "nope", "--kmax", "2", "--gen", "gk:k=2"]) == 2

    def test_env_var_sets_default_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("INCMAX_ENUM_BUDGET", "10")
        code, _ = run_cli(
            capsys, "run", "--gen", "knapsack_trap:k=4", "--alg", "greedy",
            "--kmax", "4",
        )
        assert code == 3
