"""Game-semantic model of MLTT: checking, evaluation, equality and the CT demo."""

from ._core import (
    CtgError,
    IllTypedError,
    check,
    ct_report,
    derive_rules,
    equal,
    eval_nat,
    prf_eval,
    run_suite,
)

__all__ = [
    "CtgError",
    "IllTypedError",
    "check",
    "ct_report",
    "derive_rules",
    "equal",
    "eval_nat",
    "prf_eval",
    "run_suite",
]
