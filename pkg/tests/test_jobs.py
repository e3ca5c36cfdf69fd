import json

import numpy as np
import pytest

from configs import paths
from run_experiment import run_jobs
from src.entangle.batch_run import (
    SweepRunner, csv_columns, csv_text, default_csv_path, save_csv, sweep_sample,
)
from src.entangle.core.builder import ReportBuilder, render_json, render_text, save_document
from src.entangle.core.errors import InvalidJob, InvalidParameters
from src.entangle.job_loader import (
    JobLoader, JobOptions, JobSpec, StateSource, parse_base, parse_dims, resolve_states,
)


# --- ReportBuilder ---

def test_report_document_shape():
    doc = (ReportBuilder("eval", {"ket": "|0>"}, {"base": 2})
           .add_result(value=np.float64(0.5), flags=np.array([True, False]), z=1 + 2j)
           .get_document())
    assert doc["schema"] == 1
    assert doc["input"] == {"source": {"ket": "|0>"}, "options": {"base": 2}}
    assert doc["results"] == [{"value": 0.5, "flags": [True, False], "z": [1.0, 2.0]}]


def test_render_json_keeps_full_precision():
    doc = ReportBuilder("eval").add_result(x=0.1, y=1 / 3, zero=-0.0, missing=None).get_document()
    text = render_json(doc)
    assert "0.10000000000000001" in text
    parsed = json.loads(text)
    assert parsed["results"][0]["y"] == 1 / 3
    assert parsed["results"][0]["zero"] == 0
    assert parsed["results"][0]["missing"] is None


def test_render_json_nan_becomes_null():
    doc = ReportBuilder("eval").add_result(x=float("nan")).get_document()
    assert json.loads(render_json(doc))["results"][0]["x"] is None


def test_render_text_uses_seven_digits():
    doc = ReportBuilder("eval").add_result(c=2 * np.sqrt(2) / 3, ok=True).get_document()
    text = render_text(doc)
    assert "c: 0.942809" in text
    assert "ok: true" in text
    assert "schema: 1" in text


def test_save_report(tmp_path):
    target = tmp_path / "nested" / "doc.json"
    ReportBuilder("catalog").add_result(name="W3").save_report(str(target), "json")
    assert json.loads(target.read_text(encoding="utf-8"))["results"] == [{"name": "W3"}]


def test_save_document_text(tmp_path):
    doc = ReportBuilder("eval").add_result(c=2 * np.sqrt(2) / 3).get_document()
    target = tmp_path / "a" / "b" / "doc.txt"
    save_document(doc, str(target), "text")
    assert target.read_text(encoding="utf-8") == render_text(doc)


# --- JobSpec / JobLoader ---

def test_parse_helpers():
    assert parse_dims("2, 3,2") == (2, 3, 2)
    assert parse_dims([2, 2]) == (2, 2)
    assert parse_base("2") == 2
    assert parse_base("e") == "e"
    with pytest.raises(InvalidParameters):
        parse_dims("2,x")
    with pytest.raises(InvalidParameters):
        parse_base("10")


def test_state_source_needs_exactly_one():
    with pytest.raises(InvalidJob):
        StateSource()
    with pytest.raises(InvalidJob):
        StateSource(ket="|0>", catalog="W3")
    with pytest.raises(InvalidJob):
        StateSource(random=(2, 2), count=0)


def test_job_options_validation():
    with pytest.raises(InvalidJob):
        JobOptions(format="xml")
    with pytest.raises(InvalidJob):
        JobOptions(tol=0)
    options = JobOptions(tol=1e-6, out="x.json")
    assert options.tolerances.equality_tol == 1e-6
    assert "out" not in options.echo()


def test_job_spec_from_dict():
    job = JobSpec.from_dict({"command": "eval", "source": {"ket": "|01>", "dims": [2, 3]},
                             "options": {"splits": ["1|0"], "format": "json"}})
    assert job.source.dims_hint == (2, 3)
    assert job.options.splits == ("1|0",)
    (label, state), = resolve_states(job.source, job.options)
    assert label == "|01>"
    assert state.dims == (2, 3)

    job = JobSpec.from_dict({"command": "sweep", "dims": [2, 2, 2], "count": 10})
    assert job.extra == {"dims": [2, 2, 2], "count": 10}


@pytest.mark.parametrize("raw", [
    [],
    {"command": "dance"},
    {"command": "eval"},
    {"command": "eval", "source": {"ket": "|0>"}, "options": {"colour": "red"}},
    {"command": "eval", "source": {"random": {"seed": 1}}},
])
def test_job_spec_rejects(raw):
    with pytest.raises(InvalidJob):
        JobSpec.from_dict(raw)


def test_resolve_random_states():
    source = StateSource(random=(2, 2), seed=4, count=2)
    states = resolve_states(source)
    assert [label for label, _ in states] == ["random(seed=4)", "random(seed=5)"]


def test_job_loader(tmp_path):
    good = tmp_path / "jobs.json"
    good.write_text(json.dumps([
        {"command": "eval", "source": {"catalog": "W3"}},
        {"command": "nope"},
        {"command": "catalog", "action": "list"},
    ]), encoding="utf-8")
    single = tmp_path / "single.json"
    single.write_text(json.dumps({"command": "polygon", "source": {"catalog": "GHZ"}}), encoding="utf-8")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")

    loader = JobLoader([good, single, broken, tmp_path / "missing.json"])
    assert len(loader) == 3
    assert [job.command for job in loader] == ["eval", "catalog", "polygon"]
    assert loader[0].source.catalog == "W3"


def test_job_loader_skips_jobs_with_bad_parameters(tmp_path):
    path = tmp_path / "jobs.json"
    path.write_text(json.dumps([
        {"command": "eval", "source": {"catalog": "W3"}},
        {"command": "eval", "source": {"catalog": "W3"}, "options": {"base": "10"}},
        {"command": "eval", "source": {"random": {"dims": "2,x"}}},
        {"command": "eval", "source": {"random": {"dims": ["2", None]}}},
        {"command": "eval", "source": {"random": {"dims": [2, 2], "seed": "abc"}}},
        {"command": "eval", "source": {"ket": "|00>", "dims": [2, "y"]}},
        {"command": "eval", "source": {"ket": "|00>"}, "options": {"splits": 3}},
    ]), encoding="utf-8")
    loader = JobLoader(path)
    assert len(loader) == 1
    assert loader[0].source.catalog == "W3"


def test_parse_dims_rejects_non_integer_lists():
    with pytest.raises(InvalidParameters):
        parse_dims([2, "x"])
    with pytest.raises(InvalidParameters):
        parse_dims([2, None])


def test_run_jobs(tmp_path):
    jobs = tmp_path / "jobs.json"
    jobs.write_text(json.dumps([
        {"command": "eval", "source": {"ket": "(|00> + |11>)/sqrt(2)"}, "options": {"format": "json"}},
        {"command": "polygon", "source": {"catalog": "PhiPlus"}},
        {"command": "teleport", "source": {"ket": "0.6|0> + 0.8|1>"}},
    ]), encoding="utf-8")
    out_dir = tmp_path / "reports"
    assert run_jobs([jobs], out_dir) == (2, 1)
    report = json.loads((out_dir / "job_000_eval.json").read_text(encoding="utf-8"))
    assert report["results"][0]["splits"][0]["c_wedge"] == pytest.approx(1.0)
    assert (out_dir / "job_002_teleport.txt").exists()


def test_sample_job_file_loads():
    loader = JobLoader(paths.PROJECT_ROOT / "configs" / "jobs" / "catalog_states.json")
    assert len(loader) == 7
    assert loader[6].command == "sweep"


# --- sweep ---

def test_csv_columns():
    assert ",".join(csv_columns(3)) == "index,seed,C_0,C_1,C_2,slack_lin_min,slack_sq_min,oracle_disc_max"
    assert csv_columns(2)[2:4] == ["C_0", "C_1"]


def test_default_csv_path():
    assert default_csv_path((2, 2, 2), 42) == paths.SWEEP_OUTPUT_ROOT / "sweep_2x2x2_seed42.csv"


def test_sweep_sample_two_parties():
    row = sweep_sample((2, 3), 0, 9)
    assert row["slack_lin_min"] is None
    assert row["oracle_disc_max"] <= 1e-10
    text = csv_text([row], 2)
    assert text.splitlines()[2].startswith("0,9,")
    assert text.splitlines()[2].endswith(f",,,{format(row['oracle_disc_max'], '.17g')}")


def test_sweep_qutrits_agree_with_oracle():
    runner = SweepRunner((3, 3, 3), 100, seed=1, progress=False)
    summary = runner.summarize(runner.run())["summary"]
    assert summary["max_discrepancy"] <= 1e-10
    assert summary["violation_count"] == 0
    assert summary["discrepancy_violations"] == 0


def test_sweep_three_qubits_has_no_violations():
    runner = SweepRunner((2, 2, 2), 1000, seed=42, progress=False)
    rows = runner.run()
    assert [r["seed"] for r in rows[:3]] == [42, 43, 44]
    summary = runner.summarize(rows, "-")["summary"]
    assert summary["count"] == 1000
    assert summary["violation_count"] == 0
    assert summary["min_linear_slack"] >= -1e-10


def test_sweep_is_independent_of_worker_count():
    serial = SweepRunner((2, 2, 2), 12, seed=5, workers=1, progress=False).run()
    parallel = SweepRunner((2, 2, 2), 12, seed=5, workers=2, progress=False).run()
    assert csv_text(serial, 3) == csv_text(parallel, 3)


def test_sweep_runner_validation():
    with pytest.raises(InvalidParameters):
        SweepRunner((2, 2), 0)
    with pytest.raises(InvalidParameters):
        SweepRunner((2, 2), 5, workers=0)


def test_save_csv(tmp_path):
    rows = SweepRunner((2, 2, 2), 3, seed=0, progress=False).run()
    target = tmp_path / "out" / "sweep.csv"
    save_csv(rows, 3, target)
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# schema=1"
    assert len(lines) == 5
