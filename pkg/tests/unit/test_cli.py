"""Unit tests for the command-line surface."""
import pytest

from src.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, build_parser, main
from src.errors import CheckpointFormatError, ContractError


@pytest.fixture
def inputs(tmp_path):
    paths = {}
    for name in ("config.conf", "manifest.csv", "dict.csv", "model.ckpt", "clip.wav"):
        path = tmp_path / name
        path.write_text("")
        paths[name] = str(path)
    return paths


class TestParser:
    """Test argument parsing."""

    def test_dict_flag_maps_to_dictionary(self):
        """Test --dict is stored as args.dictionary."""
        args = build_parser().parse_args(
            ["train", "--config", "c", "--manifest", "m", "--dict", "d", "--out", "o"]
        )
        assert args.dictionary == "d"

    def test_defaults(self):
        """Test eval defaults to zs on the global branch."""
        args = build_parser().parse_args(["eval", "--ckpt", "c", "--manifest", "m", "--dict", "d"])
        assert (args.task, args.branch, args.report) == ("zs", "global", None)


class TestExitCodes:
    """Test exit status mapping."""

    def test_unknown_flag(self, capsys):
        """Test an unknown flag is a usage error."""
        assert main(["synth", "--out", "x", "--colour", "red"]) == EXIT_USAGE
        assert "unrecognized arguments" in capsys.readouterr().err

    def test_missing_command(self):
        """Test no subcommand is a usage error."""
        assert main([]) == EXIT_USAGE

    def test_invalid_task(self, inputs):
        """Test a task outside zs/gzs/seen is a usage error."""
        argv = ["eval", "--ckpt", inputs["model.ckpt"], "--manifest", inputs["manifest.csv"],
                "--dict", inputs["dict.csv"], "--task", "all"]
        assert main(argv) == EXIT_USAGE

    def test_missing_input_file(self, inputs, mocker, capsys):
        """Test a missing input file is a usage error and the task never runs."""
        task = mocker.patch("src.cli.features_task")
        argv = ["features", "--wav", inputs["clip.wav"] + ".missing", "--out", "x.csv"]
        assert main(argv) == EXIT_USAGE
        task.assert_not_called()
        assert "input file not found" in capsys.readouterr().err

    def test_runtime_error(self, inputs, mocker, capsys):
        """Test package errors raised by a task exit with 2."""
        mocker.patch("src.cli.evaluate_task", side_effect=CheckpointFormatError("Bad magic"))
        argv = ["eval", "--ckpt", inputs["model.ckpt"], "--manifest", inputs["manifest.csv"],
                "--dict", inputs["dict.csv"]]
        assert main(argv) == EXIT_RUNTIME
        assert "Bad magic" in capsys.readouterr().err

    def test_contract_error_in_training(self, inputs, mocker):
        """Test training on unseen classes exits with 2."""
        mocker.patch("src.cli.train_task", side_effect=ContractError("unseen label"))
        argv = ["train", "--config", inputs["config.conf"], "--manifest", inputs["manifest.csv"],
                "--dict", inputs["dict.csv"], "--out", "model.ckpt"]
        assert main(argv) == EXIT_RUNTIME


class TestCommands:
    """Test successful dispatch to tasks."""

    def test_train_prints_epoch_losses(self, inputs, mocker, capsys):
        """Test each epoch callback prints one loss line."""
        def fake_train(config, manifest, dictionary, out, on_epoch):
            on_epoch(1, 2.5)
            on_epoch(2, 1.25)

        task = mocker.patch("src.cli.train_task", side_effect=fake_train)
        argv = ["train", "--config", inputs["config.conf"], "--manifest", inputs["manifest.csv"],
                "--dict", inputs["dict.csv"], "--out", "model.ckpt"]
        assert main(argv) == EXIT_OK
        expected = (inputs["config.conf"], inputs["manifest.csv"], inputs["dict.csv"], "model.ckpt")
        assert task.call_args.args[:4] == expected
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["epoch=1 loss=2.500000", "epoch=2 loss=1.250000"]

    def test_eval_prints_report(self, inputs, mocker, capsys):
        """Test eval writes the report text containing the accuracy line."""
        report = mocker.MagicMock()
        report.to_text.return_value = "task: gzs\ngzs_accuracy=0.500000\n"
        task = mocker.patch("src.cli.evaluate_task", return_value=report)
        argv = ["eval", "--ckpt", inputs["model.ckpt"], "--manifest", inputs["manifest.csv"],
                "--dict", inputs["dict.csv"], "--task", "gzs", "--report", "out.csv"]
        assert main(argv) == EXIT_OK
        assert task.call_args.kwargs == {"task": "gzs", "report": "out.csv", "branch": "global"}
        assert "gzs_accuracy=0.500000" in capsys.readouterr().out

    def test_synth(self, mocker, capsys, tmp_path):
        """Test synth forwards sizes and seed."""
        corpus = mocker.MagicMock(rows=[1, 2, 3], dictionary=[1])
        task = mocker.patch("src.cli.synth_task", return_value=corpus)
        assert main(["synth", "--out", str(tmp_path), "--seed", "4", "--per-class", "2"]) == EXIT_OK
        assert task.call_args.kwargs == {"seed": 4, "n_seen": 12, "n_unseen": 4, "per_class": 2}
        assert "clips=3 classes=1" in capsys.readouterr().out

    def test_experiment_optional_config(self, inputs, mocker):
        """Test experiment runs without --config and forwards seeds and losses."""
        task = mocker.patch("src.cli.experiment_task")
        argv = ["experiment", "--manifest", inputs["manifest.csv"], "--dict", inputs["dict.csv"],
                "--out", "results.csv", "--seeds", "5", "--losses", "sm", "bce"]
        assert main(argv) == EXIT_OK
        assert task.call_args.kwargs == {"seeds": [5], "losses": ["sm", "bce"], "config_path": None}
