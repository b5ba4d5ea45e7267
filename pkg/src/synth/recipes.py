"""Event recipes: the acoustic description of a synthetic class and its SAV."""
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.attributes import SAV

Pitch = Literal["high", "middle", "low"]
Length = Literal["long", "middle", "short"]
Material = Literal["wood", "metal", "plastic", "ceramic"]

PITCHES = ("high", "middle", "low")
LENGTHS = ("long", "middle", "short")
MATERIALS = ("wood", "metal", "plastic", "ceramic")
FLAGS = ("repeating", "noise_like", "falling", "collision", "many")


class EventRecipe(BaseModel):
    """
    Exactly one pitch band and one length class, at most one material and any
    combination of the situation flags. The SAV is derived from these fields.
    """

    model_config = ConfigDict(frozen=True)

    label: str
    pitch: Pitch
    length: Length
    material: Optional[Material] = None
    repeating: bool = False
    noise_like: bool = False
    falling: bool = False
    collision: bool = False
    many: bool = False
    timbre_seed: int = 0

    def describe(self) -> str:
        source = self.material or ("noise" if self.noise_like else "tone")
        flags = [f.replace("_", "") for f in FLAGS if getattr(self, f) and f != "noise_like"]
        return "-".join([source, self.pitch, self.length, *flags])


def derive_sav(recipe: EventRecipe) -> SAV:
    names = [f"{recipe.pitch}-pitched", recipe.length]
    if recipe.material is not None:
        names.append(recipe.material)
    if recipe.repeating:
        names.append("repeating")
    if recipe.noise_like:
        names.append("noise-like")
    if recipe.falling:
        names.append("falling")
    if recipe.collision:
        names.append("collision")
    if recipe.many:
        names.append("many")
    return SAV.from_attributes(names)


def random_recipe(
    rng: np.random.Generator, label: str, flag_probability: float = 0.25
) -> EventRecipe:
    materials = (None, *MATERIALS)
    return EventRecipe(
        label=label,
        pitch=PITCHES[rng.integers(len(PITCHES))],
        length=LENGTHS[rng.integers(len(LENGTHS))],
        material=materials[rng.integers(len(materials))],
        **{flag: bool(rng.random() < flag_probability) for flag in FLAGS},
        timbre_seed=int(rng.integers(2**31)),
    )
