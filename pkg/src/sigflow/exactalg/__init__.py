"""Exact scalars and linear algebra."""
from .fields import GF, Q, QS, Field, FieldValue, PrimeField, RationalField, RationalFunctionField, field_from_descriptor
from .matrix import Matrix, block, direct_sum, hstack, vstack
from .poly import RatFunc, parse_ratfunc

__all__ = [
    "GF", "Q", "QS", "Field", "FieldValue", "PrimeField", "RationalField", "RationalFunctionField",
    "field_from_descriptor", "Matrix", "block", "direct_sum", "hstack", "vstack", "RatFunc", "parse_ratfunc",
]
