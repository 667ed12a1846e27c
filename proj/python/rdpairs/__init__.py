"""Python access to the rdpairs core.

Exact values come back as rational strings ("3/8"); use fractions.Fraction to compute with them.
"""

import json
from fractions import Fraction

from . import _rdpairs
from ._rdpairs import RdpairsError, __version__

__all__ = [
    "RdpairsError",
    "__version__",
    "fixtures",
    "sphere_sizes",
    "schreier_counts",
    "norms",
    "convolve",
    "return_probabilities",
    "exponent_fit",
    "suite",
]


def fixtures():
    return json.loads(_rdpairs.fixtures_json())


def sphere_sizes(fixture, radius):
    return list(_rdpairs.sphere_sizes(fixture, radius))


def schreier_counts(fixture, radius):
    return list(_rdpairs.schreier_counts(fixture, radius))


def norms(fixture, f):
    """Squared norms of a function literal such as "(0,0)=1/2, (1,0)=1/2" as Fractions."""
    raw = json.loads(_rdpairs.norms_json(fixture, f))
    return {k.removesuffix("_squared"): Fraction(v) for k, v in raw.items()}


def convolve(fixture, f, g):
    return _rdpairs.convolve(fixture, f, g)


def return_probabilities(fixture, n, exact=True, mu="uniform"):
    values = _rdpairs.return_probabilities(fixture, n, exact, mu)
    return [Fraction(v) for v in values] if exact else [float(v) for v in values]


def exponent_fit(fixture, family="cosetreps", lo=4, hi=14):
    return json.loads(_rdpairs.exponent_fit_json(fixture, family, lo, hi))


def suite(fixture, radius=3, seed=0, trials=100, fit=True):
    return json.loads(_rdpairs.suite_json(fixture, radius, seed, trials, fit))
