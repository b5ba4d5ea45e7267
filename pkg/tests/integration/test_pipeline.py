"""End-to-end runs of every CLI command on a tiny synthetic corpus."""
import csv

import numpy as np
import pytest

from src.attributes import ATTRIBUTES, load_dictionary
from src.cli import EXIT_OK, EXIT_RUNTIME, main
from src.data import read_manifest
from src.training import load_checkpoint

pytestmark = pytest.mark.integration

TINY_CONFIG = """\
epochs = 2
batch_size = 4
learning_rate = 0.001
seed = 0
loss.mode = sm
loss.use_local = true
loss.lambda = 10
encoder.blocks = 4x1, 4x1, 4x1
basemod.hidden = 8
"""


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("pipeline")
    corpus = root / "corpus"
    assert main(["synth", "--out", str(corpus), "--seed", "3", "--n-seen", "6",
                 "--n-unseen", "2", "--per-class", "4"]) == EXIT_OK
    config = root / "tiny.conf"
    config.write_text(TINY_CONFIG)
    checkpoint = root / "model.ckpt"
    assert main(["train", "--config", str(config), "--manifest", str(corpus / "manifest.csv"),
                 "--dict", str(corpus / "dictionary.csv"), "--out", str(checkpoint)]) == EXIT_OK
    return {"root": root, "corpus": corpus, "config": config, "checkpoint": checkpoint}


class TestPipeline:
    """Test synth, train, eval, viz, features and experiment together."""

    def test_corpus_written(self, workspace):
        """Test manifest and dictionary agree on classes and splits."""
        corpus = workspace["corpus"]
        rows = read_manifest(corpus / "manifest.csv")
        dictionary = load_dictionary(corpus / "dictionary.csv")
        assert len(rows) == 32
        assert {row.label for row in rows} == {entry.label for entry in dictionary}
        assert all(dictionary.is_seen(row.label) for row in rows if row.split == "train")

    def test_checkpoint_config(self, workspace):
        """Test the checkpoint carries the training config."""
        checkpoint = load_checkpoint(workspace["checkpoint"])
        assert checkpoint.config.encoder.blocks == [(4, 1), (4, 1), (4, 1)]
        assert checkpoint.config.loss.name == "sm+local"

    @pytest.mark.parametrize("task", ["zs", "gzs", "seen"])
    def test_eval(self, workspace, task, capsys):
        """Test eval prints the accuracy line and writes the per-class report."""
        report = workspace["root"] / f"report_{task}.csv"
        corpus = workspace["corpus"]
        code = main([
            "eval", "--ckpt", str(workspace["checkpoint"]),
            "--manifest", str(corpus / "manifest.csv"), "--dict", str(corpus / "dictionary.csv"),
            "--task", task, "--report", str(report),
        ])
        assert code == EXIT_OK
        out = capsys.readouterr().out.splitlines()
        line = next(text for text in out if text.startswith(f"{task}_accuracy="))
        assert 0.0 <= float(line.split("=")[1]) <= 1.0
        rows = list(csv.DictReader(report.open()))
        assert rows[-1]["scope"] == "overall"

    def test_viz(self, workspace):
        """Test viz writes one heatmap per attribute and an index."""
        corpus = workspace["corpus"]
        wav = corpus / read_manifest(corpus / "manifest.csv")[0].path
        out = workspace["root"] / "maps"
        argv = ["viz", "--ckpt", str(workspace["checkpoint"]), "--wav", str(wav), "--out", str(out)]
        assert main(argv) == EXIT_OK
        assert sorted(p.stem for p in out.glob("*.pgm")) == sorted(ATTRIBUTES)
        assert len((out / "index.csv").read_text().splitlines()) == 16

    def test_features(self, workspace):
        """Test features dumps an 80x100 matrix."""
        corpus = workspace["corpus"]
        wav = corpus / read_manifest(corpus / "manifest.csv")[0].path
        out = workspace["root"] / "mel.csv"
        assert main(["features", "--wav", str(wav), "--out", str(out)]) == EXIT_OK
        assert np.loadtxt(out, delimiter=",").shape == (80, 100)

    def test_experiment(self, workspace):
        """Test one seed of two presets produces per-run and mean rows."""
        corpus = workspace["corpus"]
        out = workspace["root"] / "results.csv"
        code = main([
            "experiment",
            "--manifest", str(corpus / "manifest.csv"), "--dict", str(corpus / "dictionary.csv"),
            "--out", str(out), "--config", str(workspace["config"]),
            "--seeds", "0", "--losses", "bce", "sm",
        ])
        assert code == EXIT_OK
        rows = list(csv.DictReader(out.open()))
        assert [(r["loss"], r["seed"]) for r in rows] == [
            ("bce", "0"), ("sm", "0"), ("bce", "mean"), ("sm", "mean")
        ]
        for row in rows:
            assert float(row["gzs_accuracy"]) <= float(row["zs_accuracy"])

    def test_training_on_unseen_rows_fails(self, workspace, tmp_path):
        """Test a manifest that trains on an unseen class exits with 2."""
        corpus = workspace["corpus"]
        dictionary = load_dictionary(corpus / "dictionary.csv")
        lines = (corpus / "manifest.csv").read_text().splitlines()
        unseen = dictionary.unseen_labels[0]
        poisoned = [lines[0]] + [
            line.replace(",test", ",train") if f",{unseen}," in line else line for line in lines[1:]
        ]
        manifest = corpus / "poisoned.csv"
        manifest.write_text("\n".join(poisoned) + "\n")
        code = main(["train", "--config", str(workspace["config"]), "--manifest", str(manifest),
                     "--dict", str(corpus / "dictionary.csv"), "--out", str(tmp_path / "bad.ckpt")])
        assert code == EXIT_RUNTIME
        assert not (tmp_path / "bad.ckpt").exists()
