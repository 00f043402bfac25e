import csv
import json
from pathlib import Path

import pytest

from listsched import config_by_name, load_schedule, save_instance, validate_schedule
from listsched.cli import main
from listsched.model import load_instance


@pytest.fixture
def dataset_dir(tmp_path):
    out = tmp_path / "ds"
    assert main([
        "generate", "--kind", "chains", "--ccr", "1", "--count", "3",
        "--seed", "5", "--out", str(out),
    ]) == 0
    return out


@pytest.fixture
def instance_file(tmp_path, chain_fast_slow):
    path = tmp_path / "instance.json"
    save_instance(chain_fast_slow, path)
    return path


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


class TestGenerate:
    def test_writes_instances_and_manifest(self, dataset_dir):
        files = sorted(p.name for p in dataset_dir.iterdir())
        assert files == [
            "instance_000.json", "instance_001.json", "instance_002.json",
            "manifest.json",
        ]
        manifest = json.loads((dataset_dir / "manifest.json").read_text())
        assert manifest == {
            "name": "chains_ccr_1", "kind": "chains", "target_ccr": 1.0,
            "seed": 5, "count": 3,
        }

    def test_regeneration_is_byte_identical(self, tmp_path):
        args = ["generate", "--kind", "in_trees", "--ccr", "0.2", "--count", "4",
                "--seed", "9"]
        assert main(args + ["--out", str(tmp_path / "a")]) == 0
        assert main(args + ["--out", str(tmp_path / "b")]) == 0
        for name in ("manifest.json", "instance_000.json", "instance_003.json"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_zero_count_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--kind", "chains", "--count", "0",
                  "--out", str(tmp_path / "x")])
        assert exc.value.code == 2


class TestSchedule:
    def test_alias_accepted(self, instance_file, tmp_path, capsys, chain_fast_slow):
        out = tmp_path / "sched.json"
        assert main(["schedule", "--instance", str(instance_file),
                     "--scheduler", "HEFT", "--out", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "1.0"
        result = load_schedule(out)
        assert validate_schedule(chain_fast_slow, result) == []

    def test_canonical_accepted(self, instance_file, tmp_path):
        out = tmp_path / "sched.json"
        assert main(["schedule", "--instance", str(instance_file),
                     "--scheduler", "EFT_Ins_UR", "--out", str(out)]) == 0

    def test_unknown_scheduler_lists_names(self, instance_file, tmp_path, capsys):
        code = main(["schedule", "--instance", str(instance_file),
                     "--scheduler", "FOO", "--out", str(tmp_path / "x.json")])
        assert code == 1
        err = capsys.readouterr().err
        # every canonical name is listed for the user
        listed = [line.strip() for line in err.splitlines() if line.startswith("  ")]
        assert len(listed) == 72


class TestValidate:
    def test_valid_pair(self, instance_file, tmp_path, capsys):
        out = tmp_path / "sched.json"
        main(["schedule", "--instance", str(instance_file),
              "--scheduler", "HEFT", "--out", str(out)])
        capsys.readouterr()
        assert main(["validate", "--instance", str(instance_file),
                     "--schedule", str(out)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_overlap_reported(self, instance_file, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"entries": [
            {"task": "A", "node": "n1", "start": 0.0, "end": 1.0},
            {"task": "B", "node": "n1", "start": 0.5, "end": 1.5},
        ]}))
        assert main(["validate", "--instance", str(instance_file),
                     "--schedule", str(bad)]) == 1
        assert "NodeOverlap" in capsys.readouterr().out

    def test_missing_task_reported(self, instance_file, tmp_path, capsys):
        partial = tmp_path / "partial.json"
        partial.write_text(json.dumps({"entries": [
            {"task": "A", "node": "n1", "start": 0.0, "end": 1.0},
        ]}))
        assert main(["validate", "--instance", str(instance_file),
                     "--schedule", str(partial)]) == 1
        assert "UnscheduledTask" in capsys.readouterr().out


class TestBenchmark:
    def test_subset_of_schedulers(self, dataset_dir, tmp_path):
        out = tmp_path / "results.csv"
        assert main(["benchmark", "--datasets", str(dataset_dir),
                     "--schedulers", "HEFT,MET", "--repeats", "1",
                     "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 6  # 3 instances x 2 schedulers
        assert {r["scheduler"] for r in rows} == {"HEFT", "MET"}
        assert all(float(r["makespan_ratio"]) >= 1.0 for r in rows)

    def test_all_schedulers(self, dataset_dir, tmp_path):
        out = tmp_path / "results.csv"
        assert main(["benchmark", "--datasets", str(dataset_dir),
                     "--repeats", "1", "--out", str(out)]) == 0
        assert len(read_rows(out)) == 3 * 72

    def test_makespan_columns_reproducible(self, dataset_dir, tmp_path):
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["benchmark", "--datasets", str(dataset_dir),
                "--schedulers", "HEFT,MCT,MET", "--repeats", "1"]
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        pick = lambda rows: [(r["scheduler"], r["makespan"], r["makespan_ratio"]) for r in rows]
        assert pick(read_rows(out_a)) == pick(read_rows(out_b))

    def test_missing_dataset_dir(self, tmp_path, capsys):
        code = main(["benchmark", "--datasets", str(tmp_path / "nope"),
                     "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_unknown_scheduler_name(self, dataset_dir, tmp_path):
        code = main(["benchmark", "--datasets", str(dataset_dir),
                     "--schedulers", "HEFT,NOPE", "--out", str(tmp_path / "x.csv")])
        assert code == 1


@pytest.fixture
def results_csv(dataset_dir, tmp_path):
    out = tmp_path / "results.csv"
    assert main(["benchmark", "--datasets", str(dataset_dir),
                 "--repeats", "1", "--out", str(out)]) == 0
    return out


class TestAnalyze:
    def test_pareto(self, results_csv, tmp_path, capsys):
        out = tmp_path / "pareto.csv"
        assert main(["analyze", "--results", str(results_csv),
                     "--mode", "pareto", "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 72
        assert {r["pareto_optimal"] for r in rows} <= {"True", "False"}
        assert sum(r["pareto_optimal"] == "True" for r in rows) >= 1
        svg = Path(out.with_suffix(".svg"))
        assert svg.is_file() and svg.read_text().startswith("<svg")

    def test_pareto_synthetic_example(self, tmp_path):
        src = tmp_path / "synthetic.csv"
        with open(src, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dataset", "instance", "scheduler", "makespan",
                             "runtime_seconds", "makespan_ratio", "runtime_ratio",
                             "error"])
            writer.writerow(["d", 0, "fast", 2.0, 0.001, "", "", ""])
            writer.writerow(["d", 0, "good", 1.0, 0.002, "", "", ""])
            writer.writerow(["d", 0, "bad", 2.5, 0.004, "", "", ""])
        out = tmp_path / "pareto.csv"
        assert main(["analyze", "--results", str(src), "--mode", "pareto",
                     "--out", str(out)]) == 0
        rows = {r["scheduler"]: r["pareto_optimal"] for r in read_rows(out)}
        assert rows == {"fast": "True", "good": "True", "bad": "False"}

    def test_effects_shape(self, results_csv, tmp_path):
        out = tmp_path / "effects.csv"
        assert main(["analyze", "--results", str(results_csv),
                     "--mode", "effects", "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 12
        assert {r["parameter"] for r in rows} == {
            "initial_priority", "compare", "append_only", "critical_path", "sufferage"
        }

    def test_effects_incomplete_cross_product(self, dataset_dir, tmp_path):
        src = tmp_path / "partial.csv"
        assert main(["benchmark", "--datasets", str(dataset_dir),
                     "--schedulers", "HEFT,MET", "--repeats", "1",
                     "--out", str(src)]) == 0
        assert main(["analyze", "--results", str(src), "--mode", "effects",
                     "--out", str(tmp_path / "x.csv")]) == 1

    def test_interactions_shape(self, results_csv, tmp_path):
        out = tmp_path / "inter.csv"
        assert main(["analyze", "--results", str(results_csv),
                     "--mode", "interactions", "--params", "compare,ccr",
                     "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 3  # one dataset -> one CCR level x three compares
        assert {r["level_a"] for r in rows} == {"EFT", "EST", "Quickest"}

    def test_interactions_require_params(self, results_csv, tmp_path):
        assert main(["analyze", "--results", str(results_csv),
                     "--mode", "interactions", "--out", str(tmp_path / "x.csv")]) == 2

    def test_ratios_mode_round_trips(self, results_csv, tmp_path):
        out = tmp_path / "ratios.csv"
        assert main(["analyze", "--results", str(results_csv),
                     "--mode", "ratios", "--out", str(out)]) == 0
        a, b = read_rows(results_csv), read_rows(out)
        assert [r["makespan_ratio"] for r in a] == [r["makespan_ratio"] for r in b]


class TestListSchedulers:
    def test_72_lines_round_trip(self, capsys):
        assert main(["list-schedulers"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 72
        aliased = [l for l in lines if "(alias:" in l]
        assert len(aliased) == 4
        for line in lines:
            name = line.split()[0]
            config_by_name(name)  # raises if it does not round-trip

    def test_instance_file_round_trips_through_cli(self, instance_file, chain_fast_slow):
        assert load_instance(instance_file) == chain_fast_slow
