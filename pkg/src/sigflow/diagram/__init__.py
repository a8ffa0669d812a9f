"""Diagram syntax: terms, text format, graphs, dualities, equations, synthesis."""
from .dsl import parse, print_term
from .dualities import dagger_term, star_term
from .terms import (
    Compose, Gen, GenLabel, Id, Swap, Tensor, Term, compose, count_integrators, gen, scale, tensor,
    tensor_power,
)

__all__ = [
    "parse", "print_term", "dagger_term", "star_term", "Compose", "Gen", "GenLabel", "Id", "Swap",
    "Tensor", "Term", "compose", "count_integrators", "gen", "scale", "tensor", "tensor_power",
]
