"""Exact arithmetic in real cyclotomic fields extended by nested square roots."""

from .embed import (
    EmbeddingEnumeration,
    RealEmbedding,
    apply_embedding,
    approximate,
    embedding_fixes,
    identity_embedding,
    is_algebraic_integer,
    real_embeddings,
    sign,
    sign_under,
    start_precision,
)
from .poly import IntPoly, min_poly_two_cos, totient, working_precision
from .tower import FieldElement, FieldTower, find_square_root, make_tower


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    """Apply one of add, sub, mul, div."""
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    try:
        return ops[kind]()
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None


__all__ = [
    "EmbeddingEnumeration",
    "FieldElement",
    "FieldTower",
    "IntPoly",
    "RealEmbedding",
    "apply_embedding",
    "approximate",
    "arith",
    "embedding_fixes",
    "find_square_root",
    "identity_embedding",
    "is_algebraic_integer",
    "make_tower",
    "min_poly_two_cos",
    "real_embeddings",
    "sign",
    "sign_under",
    "start_precision",
    "totient",
    "working_precision",
]
