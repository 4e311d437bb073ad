"""Small shared helpers."""

import os
import random


def sort_key(x):
    """Total order over the mixed identifier types used for objects and morphisms.

    Identifiers are ints, strings, or (nested) tuples of those; the key keeps
    heterogeneous comparisons well defined so canonical representatives are
    deterministic.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(i) for i in x))
    return (3, repr(x))


def freeze(x):
    """Recursively turn lists into tuples so JSON identifiers become hashable."""
    if isinstance(x, list):
        return tuple(freeze(i) for i in x)
    return x


def render_id(x):
    """Render an identifier the way the CLI prints and parses it."""
    if isinstance(x, tuple):
        return "(" + ",".join(render_id(i) for i in x) + ")"
    return str(x)


def seeded_rng(seed=None):
    """Deterministic generator; falls back to GPDACT_SEED, then to 0."""
    if seed is None:
        seed = os.environ.get("GPDACT_SEED")
    if seed is None:
        seed = 0
    return random.Random(int(seed))
