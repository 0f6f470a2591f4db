"""Fourier multiplier checks on SU(2) and tori."""

import builtins
import json

from ._core import (
    ConfigError,
    ExceptionalParameterError,
    GroupModel,
    MathInputError,
    MatrixSymbol,
    ResolutionError,
    build_symbol,
    default_ladder,
    delta2,
    delta2_by_quadrature,
    exceptional_set,
    invert_vf_symbol,
    laplace_difference,
    nweiss_delta,
    read_symbol_file,
    recursion_residual,
    required_band,
    riesz_symbol,
    symbol_product,
    vector_field_symbol,
    write_symbol_file,
)
from . import _core

__all__ = [
    "ConfigError",
    "ExceptionalParameterError",
    "GroupModel",
    "MathInputError",
    "MatrixSymbol",
    "ResolutionError",
    "build_symbol",
    "check",
    "default_ladder",
    "delta2",
    "delta2_by_quadrature",
    "exceptional_set",
    "invert_vf_symbol",
    "ladder",
    "laplace_difference",
    "nweiss_delta",
    "read_symbol_file",
    "recursion_residual",
    "required_band",
    "riesz_symbol",
    "run_command",
    "symbol_product",
    "vector_field_symbol",
    "write_symbol_file",
]


def check(symbol, checker="mikhlin", range=None, m=0.0, rho=1.0, max_order=None):
    """Run a multiplier checker and return its report as a dict."""
    model = symbol.model
    if max_order is None:
        max_order = model.kappa
    if range is None:
        fits = [r for r in builtins.range(symbol.band + 1)
                if required_band(model, checker, r, max_order) <= symbol.band]
        if not fits:
            raise ResolutionError(f"band {symbol.band} is too small for the {checker} checker")
        range = fits[-1]
    return json.loads(_core._check(symbol, checker, range, m, rho, max_order))


def ladder(which, r=None, q="rho2", s=0.0):
    """Slope ladder report: c_r, phi_l2, psi_l2, sobolev or cz_riesz."""
    return json.loads(_core._ladder(which, list(r) if r is not None else default_ladder(), q, s))


def run_command(name, **config):
    """Run a CLI command in process and return the report envelope."""
    return json.loads(_core._run_command(name, config))
