"""Base-p digit combinatorics and the diagonal membership oracle."""

import math
import random

import pytest

from charp import (
    PartsMismatch,
    ResourceLimit,
    binom_mod_p,
    binom_nonzero,
    diagonal_root_membership,
    digits_base_p,
    ideal_contains,
    make_ring,
    multinomial_mod_p,
    multinomial_nonzero,
    parse_poly,
    tau_ppower,
)


@pytest.mark.parametrize("m,p,expected", [
    (10, 3, [1, 0, 1]),
    (0, 5, []),
    (6, 7, [6]),
    (49, 7, [0, 0, 1]),
])
def test_digits_base_p(m, p, expected):
    assert digits_base_p(m, p) == expected


@pytest.mark.parametrize("m,n,p,expected", [
    (10, 2, 3, 0),
    (7, 3, 2, 1),
    (5, 7, 5, 0),
    (0, 0, 3, 1),
])
def test_binom_mod_p_examples(m, n, p, expected):
    assert binom_mod_p(m, n, p) == expected


@pytest.mark.parametrize("p", [3, 7, 13])
def test_binom_row_p_minus_one_nonzero(p):
    assert all(binom_mod_p(p - 1, i, p) != 0 for i in range(p))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_binom_against_comb(p):
    rng = random.Random(p)
    for _ in range(200):
        m = rng.randrange(0, 3000)
        n = rng.randrange(0, 3200)
        want = math.comb(m, n) % p if n <= m else 0
        assert binom_mod_p(m, n, p) == want
        assert binom_nonzero(m, n, p) == (want != 0)


def test_binom_nonzero_examples():
    assert not binom_nonzero(10, 2, 3)
    assert binom_nonzero(7, 3, 2)
    assert binom_nonzero(2**6 - 1, 37, 2)
    assert binom_nonzero(12, 0, 5)


@pytest.mark.parametrize("m,parts,p,expected", [
    (6, [4, 1, 1], 7, True),
    (3, [1, 1, 1], 3, False),
    (9, [9], 5, True),
    (4, [2, 2], 2, False),
])
def test_multinomial_nonzero(m, parts, p, expected):
    assert multinomial_nonzero(m, parts, p) == expected


def test_multinomial_parts_mismatch():
    with pytest.raises(PartsMismatch):
        multinomial_nonzero(5, [1, 1], 3)


def test_multinomial_mod_p_against_factorials():
    rng = random.Random(31)
    for _ in range(150):
        p = rng.choice((2, 3, 5, 7))
        parts = [rng.randrange(0, 9) for _ in range(rng.randrange(1, 4))]
        m = sum(parts)
        denom = 1
        for k in parts:
            denom *= math.factorial(k)
        want = (math.factorial(m) // denom) % p
        assert multinomial_mod_p(m, parts, p) == want
        assert multinomial_nonzero(m, parts, p) == (want != 0)


def test_diagonal_membership_examples():
    R = make_ring(7, ["x", "y", "z"])
    assert diagonal_root_membership(5, (2, 0, 0), 6, 1, R)
    assert not diagonal_root_membership(5, (1, 1, 0), 6, 1, R)
    assert diagonal_root_membership(5, (1, 1, 1), 6, 1, R)


def test_diagonal_membership_handles_cancellation():
    # (x^2+y^2)^3 over F_3 is x^6+y^6; both terms share one residue class,
    # so the root is the single generator x^2+y^2, not (x^2, y^2) -- and an
    # irreducible binomial contains no monomial at all
    R = make_ring(3, ["x", "y"])
    f = parse_poly(R, "x^2+y^2")
    I = tau_ppower(f, 3, 1)
    assert [str(g) for g in I.canon()] == ["x^2 + y^2"]
    for v in [(2, 0), (2, 2), (4, 2), (6, 0), (3, 3)]:
        assert not diagonal_root_membership(2, v, 3, 1, R)
        assert not ideal_contains(I, R.monomial(v))


def test_diagonal_membership_guard():
    R = make_ring(2, ["x", "y", "z"])
    with pytest.raises(ResourceLimit):
        diagonal_root_membership(3, (1, 1, 1), 10**9, 20, R)


@pytest.mark.parametrize("p,a,N,e", [
    (7, 5, 6, 1),
    (2, 5, 3, 2),
    (3, 5, 2, 1),
    (2, 9, 3, 2),
])
def test_diagonal_membership_matches_groebner(p, a, N, e):
    ring = make_ring(p, ["x", "y", "z"])
    f = parse_poly(ring, f"x^{a}+y^{a}+z^{a}")
    I = tau_ppower(f, N, e)
    rng = random.Random(a * p + e)
    for _ in range(40):
        v = tuple(rng.randrange(0, 6) for _ in range(3))
        direct = ideal_contains(I, ring.monomial(v))
        assert diagonal_root_membership(a, v, N, e, ring) == direct
