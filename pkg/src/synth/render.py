"""
Attribute-controlled sound rendering.

pitch     fundamental band (high 3-6 kHz, middle 0.8-2.5 kHz, low 150-600 Hz)
length    active duration (long 0.8-1.0 s, middle 0.35-0.7 s, short 0.08-0.2 s)
material  partial structure and decay
flags     repeating bursts, filtered-noise content, bounce trains, transient
          onsets and superposed instances

Every render is a pure function of (recipe, instance_seed).
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.signal import butter, sosfilt

from src.audio import SAMPLE_RATE, AudioClip

from .recipes import EventRecipe

CLIP_SECONDS = 1.2
CLIP_SAMPLES = int(CLIP_SECONDS * SAMPLE_RATE)
PEAK = 0.5
MAX_PARTIAL_HZ = 7800.0

PITCH_BANDS: Dict[str, Tuple[float, float]] = {
    "high": (3000.0, 6000.0),
    "middle": (800.0, 2500.0),
    "low": (150.0, 600.0),
}
LENGTH_BANDS: Dict[str, Tuple[float, float]] = {
    "long": (0.8, 1.0),
    "middle": (0.35, 0.7),
    "short": (0.08, 0.2),
}

ONSET_RANGE = (0.01, 0.05)
MANY_OFFSET_MAX = 0.04
REPEAT_COUNT = 4
BOUNCE_COUNT = 6
BOUNCE_RATIO = 0.65
RELEASE_SECONDS = 0.005


@dataclass(frozen=True)
class MaterialModel:
    ratios: Tuple[float, ...]
    amplitudes: Tuple[float, ...]
    decay: Optional[float]  # time constant as a fraction of the unit length; None = sustained
    attack: float
    broadband: float = 0.0


MATERIAL_MODELS: Dict[Optional[str], MaterialModel] = {
    None: MaterialModel((1.0, 2.0, 3.0), (1.0, 0.5, 0.25), decay=None, attack=0.01),
    "wood": MaterialModel((1.0, 2.0), (1.0, 0.3), decay=0.15, attack=0.003),
    "metal": MaterialModel((1.0, 2.76, 5.40, 8.93), (1.0, 0.6, 0.4, 0.25), decay=1.0, attack=0.003),
    "plastic": MaterialModel((1.0, 2.0), (1.0, 0.2), decay=0.25, attack=0.005, broadband=0.5),
    "ceramic": MaterialModel((1.0, 3.9, 6.2), (0.6, 0.8, 0.5), decay=0.35, attack=0.001),
}


@dataclass(frozen=True)
class Timbre:
    """Class-level constants drawn once from the recipe's timbre seed."""

    f0: float
    duration: float
    ratios: Tuple[float, ...]
    amplitudes: Tuple[float, ...]


def class_timbre(recipe: EventRecipe) -> Timbre:
    rng = np.random.default_rng(recipe.timbre_seed)
    model = MATERIAL_MODELS[recipe.material]
    low, high = PITCH_BANDS[recipe.pitch]
    d_low, d_high = LENGTH_BANDS[recipe.length]
    jitter = rng.uniform(-0.02, 0.02, size=len(model.ratios))
    return Timbre(
        f0=float(np.exp(rng.uniform(np.log(low), np.log(high)))),
        duration=float(rng.uniform(d_low, d_high)),
        ratios=tuple(
            float(r * (1.0 + j)) if r != 1.0 else 1.0 for r, j in zip(model.ratios, jitter)
        ),
        amplitudes=tuple(float(a * rng.uniform(0.8, 1.2)) for a in model.amplitudes),
    )


def _bandpass_noise(rng: np.random.Generator, n: int, low: float, high: float) -> np.ndarray:
    high = min(high, MAX_PARTIAL_HZ)
    sos = butter(4, [low, high], btype="bandpass", fs=SAMPLE_RATE, output="sos")
    noise = sosfilt(sos, rng.standard_normal(n))
    rms = np.sqrt(np.mean(noise ** 2))
    return noise / rms if rms > 0 else noise


def _unit(
    recipe: EventRecipe, timbre: Timbre, f0: float, seconds: float, rng: np.random.Generator
) -> np.ndarray:
    """One burst of the event: content shaped by the material envelope, zero after `seconds`."""
    n = max(int(round(seconds * SAMPLE_RATE)), 8)
    t = np.arange(n) / SAMPLE_RATE
    model = MATERIAL_MODELS[recipe.material]

    if recipe.noise_like:
        low, high = PITCH_BANDS[recipe.pitch]
        content = _bandpass_noise(rng, n, low, high)
    else:
        content = np.zeros(n)
        for ratio, amplitude in zip(timbre.ratios, timbre.amplitudes):
            freq = f0 * ratio
            if freq >= MAX_PARTIAL_HZ:
                continue
            content += amplitude * np.sin(2.0 * np.pi * freq * t + rng.uniform(0.0, 2.0 * np.pi))
        if model.broadband:
            content += model.broadband * _bandpass_noise(rng, n, 0.5 * f0, 4.0 * f0)

    attack = 0.001 if recipe.collision else model.attack
    attack_n = max(1, min(int(attack * SAMPLE_RATE), n // 4))
    release_n = max(1, min(int(RELEASE_SECONDS * SAMPLE_RATE), n // 4))
    envelope = np.ones(n)
    envelope[:attack_n] = np.linspace(0.0, 1.0, attack_n, endpoint=False)
    envelope[n - release_n:] *= np.linspace(1.0, 0.0, release_n)
    if model.decay is not None:
        envelope *= np.exp(-t / (model.decay * seconds))

    burst = content * envelope
    if recipe.collision:
        click_n = min(int(0.003 * SAMPLE_RATE), n)
        click = rng.standard_normal(click_n) * np.exp(-np.arange(click_n) / (0.0008 * SAMPLE_RATE))
        burst[:click_n] += 1.5 * click
    return burst


def _train(
    recipe: EventRecipe, timbre: Timbre, f0: float, seconds: float, rng: np.random.Generator
) -> np.ndarray:
    """A single burst, or a bounce train with geometrically shrinking gaps and amplitudes."""
    if not recipe.falling:
        return _unit(recipe, timbre, f0, seconds, rng)

    n = max(int(round(seconds * SAMPLE_RATE)), 8)
    out = np.zeros(n)
    r = BOUNCE_RATIO
    intervals = seconds * (1.0 - r) * r ** np.arange(BOUNCE_COUNT) / (1.0 - r ** BOUNCE_COUNT)
    start = 0.0
    for i, interval in enumerate(intervals):
        bounce = _unit(recipe, timbre, f0, max(0.7 * interval, 0.005), rng) * (0.7 ** i)
        offset = int(round(start * SAMPLE_RATE))
        end = min(offset + bounce.size, n)
        out[offset:end] += bounce[:end - offset]
        start += interval
    return out


def _event(recipe: EventRecipe, timbre: Timbre, rng: np.random.Generator) -> np.ndarray:
    low, high = LENGTH_BANDS[recipe.length]
    seconds = float(np.clip(timbre.duration * rng.uniform(0.95, 1.05), low, high))
    f0 = timbre.f0 * rng.uniform(0.98, 1.02)

    if not recipe.repeating:
        return _train(recipe, timbre, f0, seconds, rng)

    n = int(round(seconds * SAMPLE_RATE))
    out = np.zeros(n)
    period = seconds / REPEAT_COUNT
    for k in range(REPEAT_COUNT):
        burst = _train(recipe, timbre, f0, 0.5 * period, rng)
        offset = int(round(k * period * SAMPLE_RATE))
        end = min(offset + burst.size, n)
        out[offset:end] += burst[:end - offset]
    return out


def _place(clip: np.ndarray, event: np.ndarray, onset: float) -> None:
    start = int(round(onset * SAMPLE_RATE))
    end = min(start + event.size, clip.size)
    clip[start:end] += event[:end - start]


def render(recipe: EventRecipe, instance_seed: int) -> AudioClip:
    """
    Render one 1.2 s, 16 kHz instance of a recipe, peak-normalized to 0.5.

    `many` superposes 3-5 independent instances with small onset offsets.
    """
    rng = np.random.default_rng([recipe.timbre_seed, instance_seed])
    timbre = class_timbre(recipe)
    clip = np.zeros(CLIP_SAMPLES)
    onset = rng.uniform(*ONSET_RANGE)

    layers = int(rng.integers(3, 6)) if recipe.many else 1
    for layer in range(layers):
        event = _event(recipe, timbre, rng)
        offset = 0.0
        if layer:
            event = event * rng.uniform(0.7, 1.0)
            offset = rng.uniform(0.0, MANY_OFFSET_MAX)
        _place(clip, event, onset + offset)

    peak = np.max(np.abs(clip))
    if peak > 0:
        clip *= PEAK / peak
    return AudioClip(samples=clip, sample_rate=SAMPLE_RATE)
