"""Finite-dimensional Banach algebras, projective tensor norms and approximate diagonals."""

import json
from dataclasses import dataclass

from ._amenlab import (
    EXIT_FAIL,
    EXIT_PARSE_ERROR,
    EXIT_PASS,
    EXIT_PRECONDITION,
    Algebra,
    AmenlabError,
    PreconditionViolation,
    Space,
    SpecError,
    Tensor,
    UnsupportedInstance,
    commutator,
    cyclic_group_algebra,
    derivation_basis,
    derivation_dim,
    exact_diagonal,
    grid_space,
    grothendieck_bound,
    group_algebra,
    lift_case2,
    matrix_algebra,
    metric_space,
    mixed_tensor,
    norm_exact_lp,
    norm_upper,
    product_map,
    pushforward_diagonal,
    sup_algebra,
    transfer_check,
    truncated_poly_algebra,
    vector_valued,
    verify_diagonal,
    weakly_amenable,
)
from ._amenlab import _run_json

__version__ = "0.1.0"


@dataclass
class RunResult:
    exit_code: int
    artifact: dict
    table: str


def run(spec, out=None, seed=None, field=None, eps=None):
    """Runs one experiment spec (a dict) the way the command-line tool does."""
    code, artifact, table = _run_json(
        json.dumps(spec), None if out is None else str(out), seed, field, eps
    )
    return RunResult(code, json.loads(artifact), table)


__all__ = [name for name in dir() if not name.startswith("_")]
