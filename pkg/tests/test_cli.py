import csv
import io
import json

import pytest

from qhashgen.cli import EXIT_BUDGET, EXIT_NOT_ACHIEVED, EXIT_OK, EXIT_USAGE, SWEEP_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def strip_runtime(obj):
    if isinstance(obj, dict):
        return {k: strip_runtime(v) for k, v in obj.items() if k != "runtime_ms"}
    if isinstance(obj, list):
        return [strip_runtime(v) for v in obj]
    return obj


class TestFamily:
    def test_linear(self, capsys):
        out = run_json(capsys, "family", "--kind", "linear", "--q", "3", "--k", "2", "--census", "exhaustive")
        assert out["family"]["N"] == 9 and out["family"]["K"] == 8
        assert out["census"]["epsilon_measured"] == pytest.approx(1 / 3)

    def test_freivalds_sampled(self, capsys):
        out = run_json(capsys, "family", "--kind", "freivalds", "--k", "8", "--c", "2", "--census", "sampled",
                       "--pairs", "500", "--seed", "3")
        assert out["family"]["kind"] == "freivalds"
        assert out["census"]["pairs_examined"] == 500

    def test_cap(self, capsys):
        code, _, err = run(capsys, "family", "--kind", "rs", "--q", "5", "--k", "3", "--census", "exhaustive",
                           "--cap", "10")
        assert code == EXIT_BUDGET and "budget" in err

    def test_composite_q(self, capsys):
        code, _, err = run(capsys, "family", "--kind", "linear", "--q", "4", "--k", "2")
        assert code == EXIT_USAGE and "prime" in err


class TestGenerator:
    def test_composed_with_word(self, capsys):
        out = run_json(capsys, "generator", "--q", "5", "--k", "2", "--n", "4", "--bset", "0,1,2,3", "--word", "2,1")
        assert out["generator"]["N"] == 4
        assert out["state"]["word"] == "2,1"

    def test_fingerprint(self, capsys):
        out = run_json(capsys, "generator", "--gen", "fingerprint", "--code", "simplex", "--m", "3")
        assert out["generator"]["kind"] == "binary_fingerprint"

    def test_hdq_needs_q(self, capsys):
        code, _, _ = run(capsys, "generator", "--gen", "hdq", "--delta", "0.5")
        assert code == EXIT_USAGE

    def test_text_format(self, capsys):
        code, out, _ = run(capsys, "generator", "--gen", "hdq", "--q", "7", "--bset", "1,2", "--format", "text")
        assert code == EXIT_OK and "generator.kind: hdq" in out


class TestResist:
    def test_exhaustive(self, capsys):
        out = run_json(capsys, "resist", "--q", "5", "--k", "2", "--n", "4", "--exhaustive-bset", "--T", "4")
        assert out["report"]["pairs_evaluated"] == 300
        assert out["delta_bound_check"]["satisfied"]
        assert out["qubit_lower_bound_check"] == "pass"

    def test_skipped_check(self, capsys):
        out = run_json(capsys, "resist", "--gen", "hdq", "--q", "7", "--bset", "0")
        assert out["qubit_lower_bound_check"] == "skipped"

    def test_budget_exit(self, capsys):
        code, _, _ = run(capsys, "resist", "--q", "5", "--k", "2", "--n", "4", "--bset", "1,2", "--budget", "5")
        assert code == EXIT_BUDGET

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "resist", "--gen", "hdq", "--q", "7", "--bset", "1,2", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK and len(rows) == 1 and "report.delta_measured" in rows[0]

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        code, out, _ = run(capsys, "resist", "--gen", "hdq", "--q", "7", "--bset", "1,2", "--out", str(path))
        assert code == EXIT_OK and out == ""
        assert json.loads(path.read_text())["report"]["mode"] == "exhaustive"


class TestBsearch:
    def test_achieved(self, capsys):
        out = run_json(capsys, "bsearch", "--q", "101", "--delta", "0.35", "--seed", "1")
        assert out["result"]["T"] == 87
        assert out["result"]["delta_achieved"] <= 0.35

    def test_not_achieved_exit(self, capsys):
        code, out, _ = run(capsys, "bsearch", "--q", "13", "--delta", "0.01", "--T", "2", "--restarts", "3")
        assert code == EXIT_NOT_ACHIEVED
        assert json.loads(out)["result"]["achieved"] is False

    def test_capped(self, capsys):
        out = run_json(capsys, "bsearch", "--q", "101", "--delta", "0.3", "--restarts", "1")
        assert out["T_formula"] == 118 and out["T_capped"] and out["result"]["T"] == 101

    @pytest.mark.parametrize("delta", ["0", "1", "1.5"])
    def test_bad_delta(self, capsys, delta):
        code, _, _ = run(capsys, "bsearch", "--q", "11", "--delta", delta)
        assert code == EXIT_USAGE


class TestBounds:
    def test_lower(self, capsys):
        out = run_json(capsys, "bounds", "--log2K", "256", "--delta", "0.5")
        assert out["qubit_lower_bound"] == pytest.approx(6.335551292546111, abs=1e-9)

    def test_full(self, capsys):
        out = run_json(capsys, "bounds", "--K", "65536", "--delta", "0.3", "--epsilon", "0.25", "--q", "101",
                       "--k", "2", "--n", "100", "--N", "100")
        assert out["hdq_T"] == 118 and out["hdq_T_capped"] == 101
        assert out["composed_delta_bound"] == pytest.approx(0.55)
        assert out["qubit_lower_bound"] == pytest.approx(2.486234766811337, abs=1e-9)

    def test_freivalds(self, capsys):
        out = run_json(capsys, "bounds", "--delta", "0.5", "--k", "16", "--c", "2")
        fr = out["freivalds"]
        assert fr["s"] <= fr["qubit_upper_bound"] + 1

    def test_bad_k(self, capsys):
        code, _, _ = run(capsys, "bounds", "--K", "1", "--delta", "0.5")
        assert code == EXIT_USAGE


class TestSwaptest:
    def test_identical(self, capsys):
        out = run_json(capsys, "swaptest", "--q", "5", "--k", "2", "--n", "4", "--bset", "0,1,2,3",
                       "--word", "1,1", "--word2", "1,1", "--shots", "1000")
        assert out["exact_p"] == pytest.approx(1.0) and out["frequency"] == 1.0

    def test_frequency_close(self, capsys):
        out = run_json(capsys, "swaptest", "--gen", "fingerprint", "--m", "4", "--word", "1000", "--word2", "0100",
                       "--shots", "100000", "--seed", "2")
        assert abs(out["frequency"] - out["exact_p"]) < 0.01

    def test_bad_word(self, capsys):
        code, _, _ = run(capsys, "swaptest", "--q", "5", "--k", "2", "--n", "4", "--bset", "1",
                         "--word", "9,9", "--word2", "1,1")
        assert code == EXIT_USAGE


class TestSweep:
    def test_csv_columns(self, capsys):
        code, out, _ = run(capsys, "sweep", "--qs", "5,7", "--deltas", "0.5,0.8", "--restarts", "3")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK and len(rows) == 4
        assert tuple(rows[0]) == SWEEP_COLUMNS
        for r in rows:
            assert float(r["delta_measured"]) <= float(r["delta_bound"]) + 1e-9

    def test_deterministic_across_workers(self, capsys):
        base = ("sweep", "--qs", "7", "--deltas", "0.5", "--seeds", "0,1", "--format", "json")
        a = run_json(capsys, *base)
        b = run_json(capsys, *base, "--workers", "3")
        assert a == b


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


def test_json_is_deterministic(capsys):
    argv = ("resist", "--q", "7", "--k", "2", "--n", "6", "--delta", "0.6", "--seed", "4", "--restarts", "5")
    assert strip_runtime(run_json(capsys, *argv)) == strip_runtime(run_json(capsys, *argv))
