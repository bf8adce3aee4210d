"""Exact workbench for twisted Zhu algebras and their bimodules.

Everything is computed over Q or a cyclotomic field, with no floating
point anywhere: products, quotient presentations, induced twisted modules
and fusion-rule upper bounds are exact within explicitly declared windows.
"""

from .errors import (
    AxiomViolation,
    DivisionByZero,
    InsufficientTable,
    InvalidBox,
    ModulusMismatch,
    NonDiagonalizable,
    NonhomogeneousWeight,
    NotAModule,
    SchemaError,
    TwistedZhuError,
    WindowUnderflow,
)
from .scalars import Cyclo, F, gen_binomial, power_branch, root_of_unity, scalar_arith

__all__ = [
    "AxiomViolation",
    "Cyclo",
    "DivisionByZero",
    "F",
    "InsufficientTable",
    "InvalidBox",
    "ModulusMismatch",
    "NonDiagonalizable",
    "NonhomogeneousWeight",
    "NotAModule",
    "SchemaError",
    "TwistedZhuError",
    "WindowUnderflow",
    "gen_binomial",
    "power_branch",
    "root_of_unity",
    "scalar_arith",
]
