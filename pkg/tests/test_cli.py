import json

import numpy as np
import pytest

from depthstroke.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from depthstroke.projection import load_curve
from depthstroke.stroke import RawStroke, StrokeSample, save_stroke
from depthstroke.synth import GenSpec, generate


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """A small trained model plus train/test data, built once via the CLI."""
    root = tmp_path_factory.mktemp("cli")
    data = root / "train.jsonl"
    model = root / "model.json"
    assert main(["gen", "--spiral", "8", "--forward", "8", "--backward", "8",
                 "--seed", "5", "--out", str(data)]) == EXIT_OK
    assert main(["train", "--data", str(data), "--out", str(model),
                 "--topology", "50:12:3", "--max-iters", "3000",
                 "--target-mse", "0.002", "--seed", "0"]) == EXIT_OK
    return {"root": root, "data": data, "model": model}


def write_stroke(path, pressures):
    samples = tuple(
        StrokeSample(x=float(i), y=np.sin(i / 10) * 40.0, p=float(p), t=float(i * 8))
        for i, p in enumerate(pressures)
    )
    save_stroke(RawStroke(samples), path)


class TestGen:
    def test_counts_and_lines(self, tmp_path, capsys):
        out = tmp_path / "data.jsonl"
        code = main(["gen", "--spiral", "3", "--forward", "4", "--backward", "5",
                     "--seed", "1", "--out", str(out)])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "spiral: 3" in printed and "forward: 4" in printed and "backward: 5" in printed
        assert len(out.read_text().splitlines()) == 12

    def test_zero_count_is_usage_error(self, tmp_path, capsys):
        code = main(["gen", "--spiral", "0", "--forward", "4", "--backward", "5",
                     "--seed", "1", "--out", str(tmp_path / "x.jsonl")])
        assert code == EXIT_USAGE

    def test_byte_deterministic(self, tmp_path):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        for out in (a, b):
            main(["gen", "--spiral", "3", "--forward", "3", "--backward", "3",
                  "--seed", "7", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()


class TestTrain:
    def test_zero_iters_writes_untrained_model(self, workspace, tmp_path, capsys):
        model = tmp_path / "untrained.json"
        code = main(["train", "--data", str(workspace["data"]), "--out", str(model),
                     "--topology", "50:8:3", "--max-iters", "0"])
        assert code == EXIT_OK
        captured = capsys.readouterr()
        assert "untrained" in captured.err
        assert model.exists()

    def test_missing_dataset_is_io_error(self, tmp_path, capsys):
        code = main(["train", "--data", str(tmp_path / "absent.jsonl"),
                     "--out", str(tmp_path / "m.json")])
        assert code == EXIT_IO

    def test_bad_dataset_line_is_validation_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"class": "spiral", "pressure": [0.1, 0.2]}\n{"oops": 1}\n')
        code = main(["train", "--data", str(bad), "--out", str(tmp_path / "m.json")])
        assert code == EXIT_VALIDATION
        assert ":2" in capsys.readouterr().err

    def test_sweep_prints_rows_and_rule_of_thumb(self, workspace, capsys):
        code = main(["train", "--data", str(workspace["data"]), "--sweep", "4..5",
                     "--max-iters", "40"])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "hidden" in printed
        assert "rule-of-thumb" in printed and "35" in printed

    def test_two_hidden_layer_topology_accepted(self, workspace, tmp_path, capsys):
        model = tmp_path / "deep.json"
        code = main(["train", "--data", str(workspace["data"]), "--out", str(model),
                     "--topology", "50:10:6:3", "--max-iters", "50"])
        assert code == EXIT_OK
        payload = json.loads(model.read_text())
        assert payload["topology"] == [50, 10, 6, 3]


class TestClassifyProcess:
    def test_classify_prints_class_and_scores(self, workspace, tmp_path, capsys):
        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, generate(GenSpec(
            __import__("depthstroke").CurveClass.FORWARD, length=400, seed=3)))
        code = main(["classify", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path)])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert printed.startswith("class:")
        assert "scores:" in printed

    def test_classify_empty_stroke_file_names_it(self, workspace, tmp_path, capsys):
        stroke_path = tmp_path / "empty.json"
        stroke_path.write_text("")
        code = main(["classify", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path)])
        assert code == EXIT_VALIDATION
        assert "empty.json" in capsys.readouterr().err

    def test_feature_flag_mismatch_rejected(self, workspace, tmp_path, capsys):
        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, [0.2, 0.5, 0.7, 0.4])
        code = main(["classify", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path), "--fft-len", "256"])
        assert code == EXIT_VALIDATION

    def test_process_writes_curves(self, workspace, tmp_path, capsys):
        from depthstroke import CurveClass

        stroke_path = tmp_path / "stroke.json"
        profile = generate(GenSpec(CurveClass.FORWARD, length=350, seed=4))
        write_stroke(stroke_path, profile)
        out = tmp_path / "curve.json"
        trace = tmp_path / "trace.json"
        code = main(["process", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path), "--out", str(out),
                     "--trace", str(trace)])
        assert code == EXIT_OK
        curve = load_curve(out)
        assert curve.shape == (350, 3)
        smoothed = load_curve(out.with_suffix(".smoothed.json"))
        assert smoothed.shape[0] >= 4
        stages = json.loads(trace.read_text())["stages"]
        assert [s["stage"] for s in stages][0] in (
            "low_pass", "reassign_landing_lifting")

    def test_process_smooth_flag(self, workspace, tmp_path, capsys):
        from depthstroke import CurveClass

        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, generate(GenSpec(CurveClass.FORWARD, length=320, seed=6)))
        out = tmp_path / "curve.json"
        code = main(["process", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path), "--out", str(out),
                     "--smooth", "chaikin8"])
        assert code == EXIT_OK

    def test_process_unknown_smooth_rejected(self, workspace, tmp_path, capsys):
        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, [0.1, 0.2, 0.3, 0.4])
        code = main(["process", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path), "--out", str(tmp_path / "c.json"),
                     "--smooth", "nurbs"])
        assert code == EXIT_VALIDATION

    def test_process_byte_deterministic(self, workspace, tmp_path):
        from depthstroke import CurveClass

        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, generate(GenSpec(CurveClass.SPIRAL, length=400, seed=9)))
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            main(["process", "--model", str(workspace["model"]),
                  "--stroke", str(stroke_path), "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestEval:
    def test_eval_layout(self, workspace, tmp_path, capsys):
        test_data = tmp_path / "test.jsonl"
        main(["gen", "--spiral", "5", "--forward", "5", "--backward", "5",
              "--seed", "21", "--out", str(test_data)])
        capsys.readouterr()
        code = main(["eval", "--model", str(workspace["model"]),
                     "--data", str(test_data)])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "->spiral" in printed and "->forward" in printed and "->backward" in printed
        assert "overall:" in printed
        assert "trend check:" in printed
        # each class row reports 5 tested
        for label in ("spiral", "forward", "backward"):
            row = next(line for line in printed.splitlines() if line.startswith(label))
            assert row.split()[1] == "5"


class TestConfigCmd:
    def test_dump_matches_defaults(self, capsys):
        code = main(["config", "--dump"])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        obj = json.loads(printed)
        assert obj["spiral"]["low_pass"]["alpha"] == 0.075
        assert obj["backward"]["sigmoid"]["threshold"] == 0.3

    def test_dump_deterministic(self, capsys):
        main(["config", "--dump"])
        first = capsys.readouterr().out
        main(["config", "--dump"])
        second = capsys.readouterr().out
        assert first == second

    def test_config_file_round_trip(self, tmp_path, capsys):
        out = tmp_path / "pipeline.json"
        main(["config", "--dump", "--out", str(out)])
        capsys.readouterr()
        code = main(["config", "--dump", "--pipeline-config", str(out)])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["version"] == 1


class TestReports:
    def test_eval_report_files(self, workspace, tmp_path, capsys):
        test_data = tmp_path / "test.jsonl"
        main(["gen", "--spiral", "3", "--forward", "3", "--backward", "3",
              "--seed", "31", "--out", str(test_data)])
        report_dir = tmp_path / "report"
        code = main(["eval", "--model", str(workspace["model"]),
                     "--data", str(test_data), "--report-dir", str(report_dir)])
        assert code == EXIT_OK
        assert (report_dir / "confusion.csv").exists()
        assert (report_dir / "confusion.png").exists()
        assert (report_dir / "accuracy.png").exists()
        header = (report_dir / "confusion.csv").read_text().splitlines()[0]
        assert header.startswith("class,tested,predicted_spiral")

    def test_process_report_files(self, workspace, tmp_path, capsys):
        from depthstroke import CurveClass

        stroke_path = tmp_path / "stroke.json"
        write_stroke(stroke_path, generate(GenSpec(CurveClass.SPIRAL, length=400, seed=12)))
        report_dir = tmp_path / "report"
        code = main(["process", "--model", str(workspace["model"]),
                     "--stroke", str(stroke_path), "--out", str(tmp_path / "c.json"),
                     "--report-dir", str(report_dir)])
        assert code == EXIT_OK
        assert (report_dir / "profile_stages.csv").exists()
        assert (report_dir / "profile.png").exists()
        assert (report_dir / "curve3d.png").exists()

    def test_train_report_files(self, workspace, tmp_path, capsys):
        report_dir = tmp_path / "report"
        code = main(["train", "--data", str(workspace["data"]),
                     "--max-iters", "30", "--report-dir", str(report_dir)])
        assert code == EXIT_OK
        assert (report_dir / "mse_trace.csv").exists()
        assert (report_dir / "mse_trace.png").exists()
