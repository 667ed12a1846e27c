from fractions import Fraction
from math import comb

import pytest

import rdpairs


def test_sphere_sizes_of_free_group():
    assert rdpairs.sphere_sizes("f2-free", 2) == [1, 4, 12]


def test_schreier_counts_on_the_line():
    assert rdpairs.schreier_counts("z2-zline", 3) == [1, 3, 5, 7]


def test_exact_return_probabilities():
    assert rdpairs.return_probabilities("z2-zline", 2) == [Fraction(3, 8), Fraction(35, 128)]
    z = rdpairs.return_probabilities("z-trivial", 6)
    assert z == [Fraction(comb(2 * n, n), 4**n) for n in range(1, 7)]


def test_norm_chain():
    n = rdpairs.norms("z2-zline", "(0,0)=1/2, (1,0)=1/2, (0,1)=1")
    assert n["l2"] <= n["norm21"] <= n["l1"]
    assert n["norm21"] == n["pushforward"]
    assert n["l1"] == 4


def test_exponent_fit_verdicts():
    assert rdpairs.exponent_fit("z2-zline")["verdict"] == "polynomial-consistent"
    assert rdpairs.exponent_fit("bs-a")["verdict"] == "exponential-consistent"


def test_suite_passes():
    report = rdpairs.suite("z2-zline", radius=2, trials=5, fit=False)
    assert report["passed"]


def test_unknown_fixture_raises():
    with pytest.raises(rdpairs.RdpairsError):
        rdpairs.sphere_sizes("no-such-pair", 1)
