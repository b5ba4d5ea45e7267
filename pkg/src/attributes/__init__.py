"""Sound attribute schema, SAVs and class dictionaries."""
from .dictionary import (
    ClassDictionary,
    ClassEntry,
    Task,
    dump_dictionary,
    load_dictionary,
    parse_dictionary,
)
from .schema import (
    ATTRIBUTES,
    DEFAULT_SCHEMA,
    NUM_ATTRIBUTES,
    SAV,
    AttributeSchema,
    scale_sav,
    unscale_sav,
)

__all__ = [
    "ATTRIBUTES",
    "DEFAULT_SCHEMA",
    "NUM_ATTRIBUTES",
    "SAV",
    "AttributeSchema",
    "ClassDictionary",
    "ClassEntry",
    "Task",
    "dump_dictionary",
    "load_dictionary",
    "parse_dictionary",
    "scale_sav",
    "unscale_sav",
]
