"""Compact diagonal orbits and Minkowski covering values over F_q((1/x))."""

import json

from . import _core
from ._core import FfminkError, parse_laurent, parse_poly, product_value

__all__ = [
    "FfminkError",
    "parse_laurent",
    "parse_poly",
    "product_value",
    "construct",
    "reduce",
    "margulis",
    "mu",
    "cassels",
    "escape_mass",
    "cassels_sweep",
    "visits",
    "covering",
]


def construct(q, d, Q, a=(), prec=0):
    """Lattice bundle of x_Q; also usable as a lattice for reduce/mu."""
    return json.loads(_core.construct(q, d, Q, list(a), prec))


def reduce(lattice):
    return json.loads(_core.reduce(json.dumps(lattice)))


def margulis(lattice):
    return json.loads(_core.margulis(json.dumps(lattice)))


def mu(lattice, prec=2, seconds=0.0):
    return json.loads(_core.mu(json.dumps(lattice), prec, seconds))


def cassels(q, d, Q, a=(), prec=0):
    return json.loads(_core.cassels(q, d, Q, list(a), prec))


def escape_mass(**config):
    return json.loads(_core.escape_mass(json.dumps(config)))


def cassels_sweep(**config):
    return json.loads(_core.cassels_sweep(json.dumps(config)))


def visits(**config):
    return json.loads(_core.visits(json.dumps(config)))


def covering(d_max=4, k_max=4, **config):
    return json.loads(_core.covering(json.dumps(config), d_max, k_max))
