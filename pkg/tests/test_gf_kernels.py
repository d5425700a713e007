"""Finite-field layer and compiled kernels against brute-force oracles."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyred import _kernels, factorint, gf

SMALL_PRIMES = [3, 5, 7, 11]


def monic_polys(q, k):
    for tail in itertools.product(range(q), repeat=k):
        yield list(tail) + [1]


def brute_irreducible(f, q):
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for g in monic_polys(q, k):
            if not gf.rem(f, g, q):
                return False
    return True


def poly_mod(q, max_deg=6):
    return st.lists(st.integers(0, q - 1), min_size=1, max_size=max_deg).map(lambda c: c + [1])


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_gcdex_bezout(q):
    rng = random.Random(q)
    for _ in range(50):
        a = gf.strip([rng.randrange(q) for _ in range(6)])
        b = gf.strip([rng.randrange(q) for _ in range(5)])
        if not a or not b:
            continue
        s, t, g = gf.gcdex(a, b, q)
        assert gf.add(gf.mul(s, a, q), gf.mul(t, b, q), q) == g
        assert not gf.rem(a, g, q) and not gf.rem(b, g, q)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_factor_matches_brute_force(q):
    rng = random.Random(100 + q)
    for n in range(1, 6):
        for f in monic_polys(q, n):
            lc, facs = gf.factor(f, q, rng)
            prod = [lc]
            for g, m in facs:
                assert g[-1] == 1
                assert brute_irreducible(g, q)
                for _ in range(m):
                    prod = gf.mul(prod, g, q)
            assert prod == f


@pytest.mark.parametrize("q", SMALL_PRIMES[1:])
def test_kernel_ddf_matches_python(q):
    rng = random.Random(q)
    for _ in range(200):
        n = rng.randrange(1, 12)
        f = [rng.randrange(q) for _ in range(n)] + [1]
        counts = np.zeros(n + 1, dtype=np.int64)
        r = _kernels.ddf_counts(np.array(f, dtype=np.int64), q, counts)
        if len(gf.gcd(f, gf.deriv(f, q), q)) > 1:
            assert r == _kernels.NOT_SQUAREFREE
            continue
        want = [0] * (n + 1)
        for g, e in gf.distinct_degree(f, q):
            want[e] += (len(g) - 1) // e
        assert counts.tolist() == want
        assert r == sum(want)


@pytest.mark.parametrize("q", [3, 5, 7, 101, 65537])
def test_kernel_equal_degree_split(q):
    rng = random.Random(q)
    done = 0
    while done < 120:
        n = rng.randrange(1, 14)
        f = [rng.randrange(q) for _ in range(n)] + [1]
        if len(gf.gcd(f, gf.deriv(f, q), q)) > 1:
            continue
        rows = _kernels.factor_squarefree_odd(np.array(f, dtype=np.int64), q, rng.randrange(1 << 30))
        got = sorted(gf.strip(r) for r in rows.tolist())
        want = sorted(gf.factor_squarefree(f, q, random.Random(0)))
        assert got == want
        done += 1


@given(st.sampled_from([3, 5, 7]).flatmap(lambda q: st.tuples(st.just(q), poly_mod(q))))
def test_factor_mod_p_reassembles(case):
    from polyred.bigpoly import IntPolynomial

    q, f = case
    out = factorint.factor_mod_p(IntPolynomial(f), q)
    prod = [1]
    for g, m in out:
        for _ in range(m):
            prod = gf.mul(prod, list(g), q)
    assert prod == gf.reduce_mod(f, q)


def _lift(f, q, Q):
    g = gf.reduce_mod(f, q)
    facs = gf.factor_squarefree(gf.monic(g, q), q, random.Random(1))
    if len(facs) < 2:
        return None
    lifted = factorint._hensel_lift(f, facs, q, Q)
    prod = [f[-1] % Q]
    for h in lifted:
        assert h[-1] == 1
        prod = factorint._mulm(prod, h, Q)
    assert prod == factorint._pmod(f, Q)
    for h, h0 in zip(lifted, facs):
        assert gf.reduce_mod(h, q) == h0
    return lifted


def test_hensel_lift_small_and_big_agree():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        n = rng.randrange(2, 10)
        f = [rng.randrange(-20, 21) for _ in range(n)] + [rng.choice([1, 2, 3])]
        if f[0] == 0:
            continue
        q = 5
        g = gf.reduce_mod(f, q)
        if len(g) != len(f) or len(gf.gcd(g, gf.deriv(g, q), q)) > 1:
            continue
        # the lift is unique, so the int64 route and the big-int route must agree
        small = _lift(f, q, 5 ** 12)
        if small is None:
            continue
        big = _lift(f, q, 5 ** 40)
        assert [factorint._pmod(h, 5 ** 12) for h in big] == small
        checked += 1
