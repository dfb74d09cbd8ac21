"""Python access to the Toeplitz calculus: CLI reports, winding numbers, indices and Galerkin sections."""

import json

import numpy as np

from ._toeplitz_calc import (
    InputError,
    ToeplitzError,
    canonical_problem,
    commands,
    galerkin_matrix,
    hardy_toeplitz_index,
)
from ._toeplitz_calc import min_abs_det as _min_abs_det
from ._toeplitz_calc import run as _run
from ._toeplitz_calc import winding_number as _winding_number

__all__ = [
    "InputError",
    "ToeplitzError",
    "canonical_problem",
    "commands",
    "galerkin_matrix",
    "hardy_toeplitz_index",
    "min_abs_det",
    "parse_problem",
    "run",
    "winding_number",
]


def _coeffs(coeffs):
    # scalars become 1x1 blocks
    return {int(k): np.atleast_2d(np.asarray(v, dtype=complex)) for k, v in coeffs.items()}


def run(command, path, **flags):
    """Returns (exit_code, report dict)."""
    code, text = _run(command, str(path), **flags)
    return code, json.loads(text)


def parse_problem(text):
    """Validates a problem document and returns its canonical form as a dict."""
    return json.loads(canonical_problem(text))


def winding_number(coeffs, grid=256):
    return _winding_number(_coeffs(coeffs), grid)


def min_abs_det(coeffs, grid=256):
    return _min_abs_det(_coeffs(coeffs), grid)


_hardy_index = hardy_toeplitz_index


def hardy_toeplitz_index(coeffs, modes=64, tau=1e-8, depth=5):  # noqa: F811
    return _hardy_index(_coeffs(coeffs), modes, tau, depth)
