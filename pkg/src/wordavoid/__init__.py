"""Avoidance of abelian and additive powers in morphic words."""

__version__ = "0.1.0"

from .words import (  # noqa: E402
    F_MORPHISM,
    G_MORPHISM,
    H_MORPHISM,
    LinearMorphism,
    Morphism,
    Sigma,
    apply,
    as_word,
    factors_of_fixed_point,
    iterate_prefix,
    letter_frequency,
    make_linear_morphism,
    parse_morphism,
    sigma,
    word_str,
)
from .templates import Template, ancestor_closure, bound_B, delta, parents_of  # noqa: E402

__all__ = [
    "F_MORPHISM", "G_MORPHISM", "H_MORPHISM", "LinearMorphism", "Morphism", "Sigma",
    "apply", "as_word", "factors_of_fixed_point", "iterate_prefix", "letter_frequency",
    "make_linear_morphism", "parse_morphism", "sigma", "word_str",
    "Template", "ancestor_closure", "bound_B", "delta", "parents_of",
]
