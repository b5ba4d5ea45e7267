"""Synthetic corpus generation: class recipes, rendered WAVs, manifest and dictionary."""
import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from src.attributes import ClassDictionary, ClassEntry, dump_dictionary
from src.audio import write_wav
from src.data import format_manifest
from src.errors import ConfigurationError
from src.models import ManifestRow
from src.parallel import ordered_map
from src.storage import ArtifactStore

from .recipes import EventRecipe, derive_sav, random_recipe
from .render import render

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.csv"
DICTIONARY_FILE = "dictionary.csv"
RECIPES_FILE = "recipes.json"
TRAIN_FRACTION = 0.75
MAX_ATTEMPTS = 1000
CANDIDATE_DRAWS = 200
# An attribute transfers only if at least this many seen classes carry it
# and those classes share no other attribute.
MIN_SUPPORT = 2
# Hamming distances: between two unseen SAVs, and from an unseen SAV to any seen SAV.
MIN_UNSEEN_DISTANCE = 4
MIN_SEEN_DISTANCE = 2


@dataclass(frozen=True)
class Corpus:
    rows: List[ManifestRow]
    dictionary: ClassDictionary
    seen: List[EventRecipe]
    unseen: List[EventRecipe]


def _primitives(recipe: EventRecipe) -> Set[str]:
    return set(derive_sav(recipe).attributes())


def _labelled(recipes: List[EventRecipe], prefix: str) -> List[EventRecipe]:
    return [
        r.model_copy(update={"label": f"{prefix}{i:02d}-{r.describe()}"})
        for i, r in enumerate(recipes)
    ]


def hamming(a: EventRecipe, b: EventRecipe) -> int:
    return sum(x != y for x, y in zip(derive_sav(a).bits, derive_sav(b).bits))


def supported_attributes(seen: List[EventRecipe]) -> Set[str]:
    """
    Attributes that seen classes teach independently of any other attribute.

    An attribute qualifies when at least MIN_SUPPORT seen classes carry it and
    the only attribute all of those classes have in common is the attribute
    itself. A `falling` that only ever occurs together with `low-pitched`
    does not qualify.
    """
    carriers: Dict[str, List[Set[str]]] = {}
    for recipe in seen:
        attributes = _primitives(recipe)
        for name in attributes:
            carriers.setdefault(name, []).append(attributes)
    return {
        name
        for name, groups in carriers.items()
        if len(groups) >= MIN_SUPPORT and set.intersection(*groups) == {name}
    }


def _draw_seen(n_seen: int, rng: np.random.Generator) -> List[EventRecipe]:
    recipes: List[EventRecipe] = []
    savs = set()
    while len(recipes) < n_seen:
        candidate = random_recipe(rng, label="")
        bits = derive_sav(candidate).bits
        if bits not in savs:
            savs.add(bits)
            recipes.append(candidate)
    return recipes


def _draw_unseen(
    seen: List[EventRecipe], n_unseen: int, rng: np.random.Generator
) -> Optional[List[EventRecipe]]:
    supported = supported_attributes(seen)
    unseen: List[EventRecipe] = []
    for _ in range(CANDIDATE_DRAWS * max(n_unseen, 1)):
        if len(unseen) == n_unseen:
            break
        candidate = random_recipe(rng, label="")
        if not _primitives(candidate) <= supported:
            continue
        if any(hamming(candidate, s) < MIN_SEEN_DISTANCE for s in seen):
            continue
        if any(hamming(candidate, u) < MIN_UNSEEN_DISTANCE for u in unseen):
            continue
        unseen.append(candidate)
    return unseen if len(unseen) == n_unseen else None


def sample_classes(
    n_seen: int, n_unseen: int, rng: np.random.Generator
) -> Tuple[List[EventRecipe], List[EventRecipe]]:
    """
    Draw seen and unseen recipes with pairwise distinct SAVs.

    Unseen classes are new combinations of attributes the seen classes teach
    (see `supported_attributes`). Unseen SAVs differ pairwise in at least
    MIN_UNSEEN_DISTANCE bits and from every seen SAV in at least
    MIN_SEEN_DISTANCE bits. Seen sets that admit no such unseen classes are
    redrawn.

    Raises:
        ConfigurationError: If no valid draw is found
    """
    if n_seen < 1 or n_unseen < 0:
        raise ConfigurationError(
            f"Need at least one seen class, got n_seen={n_seen}, n_unseen={n_unseen}"
        )

    for attempt in range(1, MAX_ATTEMPTS + 1):
        seen = _draw_seen(n_seen, rng)
        unseen = _draw_unseen(seen, n_unseen, rng)
        if unseen is not None:
            logger.debug(f"Class draw accepted after {attempt} attempt(s)")
            return _labelled(seen, "s"), _labelled(unseen, "u")

    raise ConfigurationError(
        f"Could not draw {n_unseen} unseen classes composed of attributes "
        f"taught by {n_seen} seen classes"
    )


def _recipes_json(seen: List[EventRecipe], unseen: List[EventRecipe]) -> str:
    payload = {
        "seen": [r.model_dump() for r in seen],
        "unseen": [r.model_dump() for r in unseen],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def generate_corpus(
    store: ArtifactStore,
    n_seen: int = 12,
    n_unseen: int = 4,
    per_class: int = 40,
    seed: int = 0,
) -> Corpus:
    """
    Render a complete synthetic corpus into `store`.

    Layout: `wav/<label>/<label>_NNN.wav`, `manifest.csv` (paths relative to
    the store root), `dictionary.csv` and `recipes.json`. Seen classes are
    split 75/25 into train/test; unseen classes are test only. The output is
    a deterministic function of the arguments.
    """
    if per_class < 1:
        raise ConfigurationError(f"per_class must be positive, got {per_class}")

    rng = np.random.default_rng(seed)
    seen, unseen = sample_classes(n_seen, n_unseen, rng)
    n_train = int(round(TRAIN_FRACTION * per_class))

    jobs = []
    for recipe in seen:
        for i in range(per_class):
            jobs.append((recipe, i, "train" if i < n_train else "test"))
    for recipe in unseen:
        for i in range(per_class):
            jobs.append((recipe, i, "test"))

    def _render_one(job) -> ManifestRow:
        recipe, instance, split = job
        path = f"wav/{recipe.label}/{recipe.label}_{instance:03d}.wav"
        with store.open_for_writing(path) as handle:
            write_wav(handle, render(recipe, instance))
        return ManifestRow(path=path, label=recipe.label, split=split)

    logger.info(
        f"Rendering {len(jobs)} clips for {len(seen)} seen and {len(unseen)} unseen classes"
    )
    rows = ordered_map(_render_one, jobs)

    dictionary = ClassDictionary(
        [ClassEntry(label=r.label, split="seen", sav=derive_sav(r)) for r in seen]
        + [ClassEntry(label=r.label, split="unseen", sav=derive_sav(r)) for r in unseen]
    )
    store.write_text(format_manifest(rows), MANIFEST_FILE)
    store.write_text(dump_dictionary(dictionary), DICTIONARY_FILE)
    store.write_text(_recipes_json(seen, unseen), RECIPES_FILE)

    logger.info(f"Corpus written to {store.resolve('')}")
    return Corpus(rows=rows, dictionary=dictionary, seen=seen, unseen=unseen)
