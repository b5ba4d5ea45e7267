"""Unit tests for the synthetic corpus generator."""
import json

import numpy as np
import pytest

from src.audio import SAMPLE_RATE, extract_features, load_wav
from src.errors import ConfigurationError
from src.storage import LocalArtifactStore
from src.synth import (
    CLIP_SAMPLES,
    DICTIONARY_FILE,
    MANIFEST_FILE,
    RECIPES_FILE,
    EventRecipe,
    derive_sav,
    generate_corpus,
    random_recipe,
    render,
    sample_classes,
)
from src.synth.corpus import (
    MIN_SEEN_DISTANCE,
    MIN_UNSEEN_DISTANCE,
    _primitives,
    hamming,
    supported_attributes,
)


def _centroid(samples: np.ndarray) -> float:
    power = np.abs(np.fft.rfft(samples)) ** 2
    freqs = np.fft.rfftfreq(samples.size, d=1.0 / SAMPLE_RATE)
    return float(np.sum(freqs * power) / np.sum(power))


class TestRecipes:
    """Test SAV derivation from recipes."""

    def test_metal_high_short_collision(self):
        """Test the four named attributes and nothing else are set."""
        recipe = EventRecipe(label="x", pitch="high", length="short", material="metal", collision=True)
        sav = derive_sav(recipe)
        assert [i for i, b in enumerate(sav.bits) if b] == [0, 5, 7, 13]
        assert recipe.describe() == "metal-high-short-collision"

    def test_plain_low_long(self):
        """Test a recipe without material or flags has exactly two bits."""
        sav = derive_sav(EventRecipe(label="x", pitch="low", length="long"))
        assert sum(sav.bits) == 2
        assert sav.attributes() == ("low-pitched", "long")

    def test_random_recipe_always_has_pitch_and_length(self):
        """Test one pitch and one length bit in every random draw."""
        rng = np.random.default_rng(0)
        for _ in range(50):
            bits = derive_sav(random_recipe(rng, "x")).bits
            assert sum(bits[0:3]) == 1
            assert sum(bits[3:6]) == 1
            assert sum(bits[6:10]) <= 1


class TestRender:
    """Test rendered audio."""

    def test_clip_format(self):
        """Test 1.2 s at 16 kHz with peak 0.5."""
        clip = render(EventRecipe(label="x", pitch="middle", length="middle", material="wood"), 0)
        assert clip.sample_rate == SAMPLE_RATE
        assert clip.samples.size == CLIP_SAMPLES
        assert np.max(np.abs(clip.samples)) == pytest.approx(0.5)

    def test_deterministic(self):
        """Test the same recipe and instance seed give identical samples."""
        recipe = EventRecipe(
            label="x", pitch="high", length="short", noise_like=True, many=True, timbre_seed=3
        )
        np.testing.assert_array_equal(render(recipe, 7).samples, render(recipe, 7).samples)
        assert not np.array_equal(render(recipe, 7).samples, render(recipe, 8).samples)

    @pytest.mark.parametrize("flags", [{}, {"repeating": True}, {"falling": True}, {"many": True}])
    def test_short_events_end_early(self, flags):
        """Test short events carry under 1% of their energy after 0.3 s."""
        for seed in range(5):
            recipe = EventRecipe(
                label="x", pitch="middle", length="short", material="metal", timbre_seed=seed, **flags
            )
            samples = render(recipe, seed).samples
            tail = int(0.3 * SAMPLE_RATE)
            assert np.sum(samples[tail:] ** 2) < 0.01 * np.sum(samples ** 2)

    def test_long_events_last(self):
        """Test long events still sound after 0.7 s."""
        recipe = EventRecipe(label="x", pitch="middle", length="long")
        samples = render(recipe, 0).samples
        assert np.max(np.abs(samples[int(0.7 * SAMPLE_RATE):int(0.8 * SAMPLE_RATE)])) > 0.05

    def test_pitch_orders_centroid(self):
        """Test low-pitched renders have a lower spectral centroid than high-pitched ones."""
        for seed in range(5):
            low = render(EventRecipe(label="x", pitch="low", length="long", timbre_seed=seed), 0)
            high = render(EventRecipe(label="x", pitch="high", length="long", timbre_seed=seed), 0)
            assert _centroid(low.samples) < _centroid(high.samples)

    def test_pitch_band_separable_by_one_threshold(self):
        """Test a mel-centroid threshold at the middle bin separates high from low pitch."""
        correct, total = 0, 0
        for seed in range(10):
            for material in (None, "wood", "metal"):
                for noise_like in (False, True):
                    for pitch in ("low", "high"):
                        recipe = EventRecipe(
                            label="x", pitch=pitch, length="middle", material=material,
                            noise_like=noise_like, timbre_seed=seed,
                        )
                        mel = extract_features(render(recipe, seed)).values[0]
                        energy = np.exp(mel).sum(axis=1)
                        centroid = np.sum(np.arange(energy.size) * energy) / np.sum(energy)
                        correct += (centroid >= energy.size / 2) == (pitch == "high")
                        total += 1
        assert correct / total >= 0.95


class TestSampleClasses:
    """Test class sampling."""

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_default_draw_properties(self, seed):
        """Test distinct SAVs, taught unseen attributes and the distance margins."""
        seen, unseen = sample_classes(12, 4, np.random.default_rng(seed))
        savs = [derive_sav(r).bits for r in seen + unseen]
        assert len(set(savs)) == 16
        supported = supported_attributes(seen)
        for recipe in unseen:
            assert _primitives(recipe) <= supported
            assert min(hamming(recipe, s) for s in seen) >= MIN_SEEN_DISTANCE
        for i, a in enumerate(unseen):
            for b in unseen[i + 1:]:
                assert hamming(a, b) >= MIN_UNSEEN_DISTANCE
        assert all(r.label.startswith("s") for r in seen)
        assert all(r.label.startswith("u") for r in unseen)

    def test_confounded_attribute_not_supported(self):
        """Test an attribute always paired with the same pitch is not taught."""
        seen = [
            EventRecipe(label="a", pitch="low", length="long", falling=True),
            EventRecipe(label="b", pitch="low", length="short", falling=True),
            EventRecipe(label="c", pitch="high", length="long"),
            EventRecipe(label="d", pitch="high", length="short"),
        ]
        supported = supported_attributes(seen)
        assert "falling" not in supported
        assert "low-pitched" not in supported
        assert {"high-pitched", "long", "short"} <= supported

    def test_single_carrier_not_supported(self):
        """Test an attribute carried by one seen class is not taught."""
        seen = [
            EventRecipe(label="a", pitch="low", length="long", material="wood"),
            EventRecipe(label="b", pitch="high", length="long"),
        ]
        assert "wood" not in supported_attributes(seen)

    def test_needs_a_seen_class(self):
        """Test n_seen = 0 is rejected."""
        with pytest.raises(ConfigurationError):
            sample_classes(0, 2, np.random.default_rng(0))


class TestGenerateCorpus:
    """Test the written corpus."""

    @pytest.fixture
    def corpus_dir(self, tmp_path):
        out = tmp_path / "corpus"
        generate_corpus(LocalArtifactStore(str(out)), n_seen=6, n_unseen=2, per_class=4, seed=0)
        return out

    def test_layout_and_counts(self, corpus_dir):
        """Test files, row counts and the 3/1 train/test split of seen classes."""
        lines = (corpus_dir / MANIFEST_FILE).read_text().splitlines()
        assert lines[0] == "path,label,split"
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == 32
        assert sum(1 for _, _, split in rows if split == "train") == 18
        for path, _, _ in rows:
            clip = load_wav(corpus_dir / path)
            assert clip.samples.size == CLIP_SAMPLES
        assert (corpus_dir / DICTIONARY_FILE).exists()
        recipes = json.loads((corpus_dir / RECIPES_FILE).read_text())
        assert (len(recipes["seen"]), len(recipes["unseen"])) == (6, 2)

    def test_unseen_never_in_train(self, corpus_dir):
        """Test unseen labels only appear in the test split."""
        recipes = json.loads((corpus_dir / RECIPES_FILE).read_text())
        unseen = {r["label"] for r in recipes["unseen"]}
        for line in (corpus_dir / MANIFEST_FILE).read_text().splitlines()[1:]:
            _, label, split = line.split(",")
            if label in unseen:
                assert split == "test"

    def test_deterministic(self, corpus_dir, tmp_path):
        """Test a second run with the same seed writes identical bytes."""
        again = tmp_path / "again"
        generate_corpus(LocalArtifactStore(str(again)), n_seen=6, n_unseen=2, per_class=4, seed=0)
        for name in (MANIFEST_FILE, DICTIONARY_FILE, RECIPES_FILE):
            assert (again / name).read_bytes() == (corpus_dir / name).read_bytes()
        for wav in corpus_dir.rglob("*.wav"):
            assert (again / wav.relative_to(corpus_dir)).read_bytes() == wav.read_bytes()

    def test_invalid_per_class(self, tmp_path):
        """Test per_class = 0 is rejected."""
        with pytest.raises(ConfigurationError):
            generate_corpus(LocalArtifactStore(str(tmp_path)), per_class=0)
