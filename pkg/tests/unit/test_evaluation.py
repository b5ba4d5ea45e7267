"""Unit tests for zero-shot inference and evaluation protocols."""
from pathlib import Path

import numpy as np
import pytest
from scipy.special import expit

from src.attributes import SAV, Task, load_dictionary
from src.data import Sample
from src.errors import ConfigurationError, ContractError
from src.evaluation import (
    AttributeMetrics,
    attribute_metrics_from_scores,
    attribute_scores,
    classify,
    classify_scores,
    evaluate,
)
from src.models import BaseModConfig
from src.network import SAVNet

from tests.helpers import make_sav, random_mel


def _nearest_oracle(scores, candidates):
    best_label, best_distance = None, None
    for label, sav in sorted(candidates, key=lambda c: c[0]):
        distance = 0.0
        for score, bit in zip(scores, sav.bits):
            distance += (score - bit) ** 2
        if best_distance is None or distance < best_distance:
            best_label, best_distance = label, distance
    return best_label


class TestClassifyScores:
    """Test nearest-SAV selection."""

    def test_exact_match_wins(self):
        """Test a score vector equal to a candidate SAV selects that label."""
        candidates = [("a", make_sav("long")), ("b", make_sav("short"))]
        assert classify_scores(make_sav("short").as_array(), candidates) == "b"

    def test_tie_goes_to_smallest_label(self):
        """Test equidistant candidates resolve lexicographically."""
        candidates = [("zeta", make_sav("long")), ("alpha", make_sav("short"))]
        scores = np.zeros(15)
        scores[3] = scores[5] = 0.5
        assert classify_scores(scores, candidates) == "alpha"

    def test_no_candidates(self):
        """Test an empty candidate list raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            classify_scores(np.zeros(15), [])

    def test_matches_brute_force_oracle(self):
        """Test 100 random instances against a loop-based nearest-SAV search with the tie rule."""
        rng = np.random.default_rng(0)
        for _ in range(100):
            labels = [f"c{v:02d}" for v in rng.choice(100, size=6, replace=False)]
            bits = rng.integers(0, 2, size=(6, 15))
            if rng.random() < 0.3:
                bits[rng.integers(1, 6)] = bits[0]
            candidates = [(label, SAV(bits=row)) for label, row in zip(labels, bits)]
            g = rng.normal(0.0, 2.0, size=15)
            scores = 1.0 / (1.0 + np.exp(-g))
            assert classify_scores(scores, candidates) == _nearest_oracle(scores, candidates)

    def test_classify_uses_model_scores(self, tiny_encoder, tiny_dictionary):
        """Test classify agrees with classify_scores on the model's global scores."""
        model = SAVNet(tiny_encoder, BaseModConfig(hidden=8), seed=0)
        mel = random_mel(4)
        candidates = tiny_dictionary.candidate_matrix(Task.GZS)
        expected = classify_scores(attribute_scores(model, mel), candidates)
        assert classify(mel, model, candidates) == expected


class TestAttributeScores:
    """Test the two scoring branches."""

    def test_branches_in_unit_interval(self, tiny_encoder):
        """Test global and local scores lie in [0, 1]."""
        model = SAVNet(tiny_encoder, BaseModConfig(hidden=8), seed=0)
        for branch in ("global", "local"):
            scores = attribute_scores(model, random_mel(5), branch)
            assert scores.shape == (15,)
            assert np.all((scores >= 0.0) & (scores <= 1.0))

    def test_unknown_branch(self, tiny_encoder):
        """Test an unknown branch raises ValueError."""
        model = SAVNet(tiny_encoder, BaseModConfig(hidden=8), seed=0)
        with pytest.raises(ValueError, match="Unsupported branch"):
            attribute_scores(model, random_mel(5), "both")


class TestAttributeMetrics:
    """Test micro-averaged detection counts."""

    def test_counts_at_threshold(self):
        """Test 0.5 counts as detected."""
        scores = np.array([[0.5, 0.49, 0.9, 0.1]])
        metrics = attribute_metrics_from_scores(scores, np.array([[1, 1, 0, 0]]))
        assert (metrics.true_positives, metrics.false_negatives) == (1, 1)
        assert (metrics.false_positives, metrics.true_negatives) == (1, 1)
        assert metrics.precision == metrics.recall == metrics.f1 == 0.5

    def test_no_detections(self):
        """Test empty denominators give zero rather than an error."""
        metrics = AttributeMetrics(
            true_positives=0, false_positives=0, false_negatives=3, true_negatives=0
        )
        assert (metrics.precision, metrics.recall, metrics.f1) == (0.0, 0.0, 0.0)

    def test_f1_formulas_agree(self):
        """Test 2PR / (P + R) equals 2TP / (2TP + FP + FN) on random detections."""
        rng = np.random.default_rng(0)
        for _ in range(20):
            metrics = attribute_metrics_from_scores(
                rng.random((30, 15)), rng.integers(0, 2, size=(30, 15))
            )
            tp, fp, fn = metrics.true_positives, metrics.false_positives, metrics.false_negatives
            assert metrics.f1 == pytest.approx(2 * tp / (2 * tp + fp + fn), abs=1e-12)

    def test_zero_logits_detect_everything(self):
        """Test g = 0 gives recall 1 and precision equal to the density of 1-bits."""
        truths = np.random.default_rng(1).integers(0, 2, size=(40, 15))
        metrics = attribute_metrics_from_scores(expit(np.zeros((40, 15))), truths)
        assert metrics.recall == 1.0
        assert metrics.precision == pytest.approx(truths.mean(), abs=1e-12)


def _fake_scores(table):
    def _scores(model, mel, branch="global"):
        return table[mel.source_id]

    return _scores


class TestEvaluate:
    """Test the zs, gzs and seen protocols with patched attribute scores."""

    @pytest.fixture
    def dataset(self):
        return [
            Sample(mel=random_mel(0, "gong-a"), label="gong"),
            Sample(mel=random_mel(1, "gong-b"), label="gong"),
            Sample(mel=random_mel(2, "rattle-a"), label="rattle"),
            Sample(mel=random_mel(3, "bell-a"), label="bell"),
        ]

    @pytest.fixture
    def table(self, tiny_dictionary):
        ambiguous = tiny_dictionary.sav("gong").as_array().copy()
        ambiguous[0] = ambiguous[2] = 0.5
        return {
            "gong-a": tiny_dictionary.sav("gong").as_array(),
            "gong-b": ambiguous,
            "rattle-a": tiny_dictionary.sav("rattle").as_array(),
            "bell-a": tiny_dictionary.sav("bell").as_array(),
        }

    def test_zs_perfect(self, dataset, table, tiny_dictionary, mocker):
        """Test zs evaluates only unseen samples against unseen candidates."""
        mocker.patch("src.evaluation.metrics.attribute_scores", side_effect=_fake_scores(table))
        report = evaluate(dataset, tiny_dictionary, model=None, task="zs")
        assert report.n_samples == 3
        assert report.accuracy == 1.0
        assert report.per_class["gong"].count == 2

    def test_gzs_not_above_zs(self, dataset, table, tiny_dictionary, mocker):
        """Test the ambiguous gong sample ties with bell under gzs and loses."""
        mocker.patch("src.evaluation.metrics.attribute_scores", side_effect=_fake_scores(table))
        zs = evaluate(dataset, tiny_dictionary, model=None, task=Task.ZS)
        gzs = evaluate(dataset, tiny_dictionary, model=None, task=Task.GZS)
        assert gzs.accuracy == pytest.approx(2 / 3)
        assert gzs.accuracy <= zs.accuracy
        assert gzs.confusion["gong"] == {"gong": 1, "bell": 1}

    def test_seen_task(self, dataset, table, tiny_dictionary, mocker):
        """Test seen evaluates seen samples only."""
        mocker.patch("src.evaluation.metrics.attribute_scores", side_effect=_fake_scores(table))
        report = evaluate(dataset, tiny_dictionary, model=None, task="seen")
        assert report.n_samples == 1
        assert report.correct == 1
        assert report.attributes.f1 == 1.0

    def test_report_formats(self, dataset, table, tiny_dictionary, mocker):
        """Test the text report carries the accuracy key and the CSV an overall row."""
        mocker.patch("src.evaluation.metrics.attribute_scores", side_effect=_fake_scores(table))
        report = evaluate(dataset, tiny_dictionary, model=None, task="zs")
        assert "zs_accuracy=1.000000" in report.to_text()
        assert report.to_csv().splitlines()[-1].startswith("overall,*,3,3,1.000000")

    def test_unknown_label(self, tiny_dictionary):
        """Test a label missing from the dictionary raises ContractError."""
        with pytest.raises(ContractError):
            evaluate([Sample(mel=random_mel(0), label="violin")], tiny_dictionary, None, "zs")

    def test_no_samples_for_task(self, tiny_dictionary):
        """Test zs over seen-only data raises ConfigurationError."""
        with pytest.raises(ConfigurationError, match="No test samples"):
            evaluate([Sample(mel=random_mel(0), label="bell")], tiny_dictionary, None, "zs")


class TestRandomBaseline:
    """Test the protocols against a predictor that picks a uniformly random candidate."""

    ILLUSTRATIVE = Path(__file__).resolve().parents[2] / "data" / "rwcp_illustrative_dictionary.csv"

    @pytest.fixture
    def dictionary(self):
        return load_dictionary(self.ILLUSTRATIVE)

    @pytest.fixture
    def random_predictor(self, mocker):
        rng = np.random.default_rng(7)
        mocker.patch("src.evaluation.metrics.attribute_scores", return_value=np.zeros(15))
        mocker.patch(
            "src.evaluation.metrics.classify_scores",
            side_effect=lambda scores, candidates: candidates[rng.integers(len(candidates))][0],
        )

    def test_zero_shot_near_one_sixth(self, dictionary, random_predictor):
        """Test zs accuracy over 6 unseen candidates lands near 1/6."""
        mel = random_mel(0)
        dataset = [Sample(mel=mel, label=label) for label in dictionary.unseen_labels] * 200
        report = evaluate(dataset, dictionary, model=None, task=Task.ZS)
        assert report.accuracy == pytest.approx(1 / 6, abs=0.04)

    def test_seen_near_one_thirty_sixth(self, dictionary, random_predictor):
        """Test seen accuracy over all 36 candidates lands near 1/36."""
        mel = random_mel(0)
        dataset = [Sample(mel=mel, label=label) for label in dictionary.seen_labels] * 60
        report = evaluate(dataset, dictionary, model=None, task=Task.SEEN)
        assert report.accuracy == pytest.approx(1 / 36, abs=0.015)
