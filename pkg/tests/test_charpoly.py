import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyred import charpoly
from polyred.bigpoly import IntPolynomial
from polyred.charpoly import SignMatrix


def sign_matrices(max_d=7):
    return st.integers(1, max_d).flatmap(
        lambda d: st.lists(st.lists(st.sampled_from([-1, 1]), min_size=d, max_size=d), min_size=d, max_size=d)
    ).map(SignMatrix)


def test_examples():
    assert charpoly.characteristic_polynomial(SignMatrix([[1, 1], [1, 1]])) == IntPolynomial((0, -2, 1))
    assert charpoly.characteristic_polynomial(SignMatrix([[1, 1], [1, -1]])) == IntPolynomial((-2, 0, 1))
    assert charpoly.characteristic_polynomial(SignMatrix([[1]])) == IntPolynomial((-1, 1))
    assert charpoly.determinant(SignMatrix([[1, 1], [1, 1]])) == 0
    assert charpoly.determinant(SignMatrix([[1, 1], [1, -1]])) == -2


def test_rejects_bad_entries():
    for bad in ([[1, 0], [1, 1]], [[1, 1]], []):
        with pytest.raises(ValueError):
            SignMatrix(bad)


def test_two_by_two_singular_count():
    mats = [np.array(e).reshape(2, 2) for e in itertools.product((-1, 1), repeat=4)]
    assert sum(charpoly.determinant_int(m.tolist()) == 0 for m in mats) == 8


def test_sampling_laws():
    rng = np.random.default_rng(0)
    seen = {tuple(charpoly.sample_matrix(1, rng).entries[0]) for _ in range(200)}
    assert seen == {(1,), (-1,)}
    m = charpoly.sample_matrices(5, np.random.default_rng(1), 4000)
    T = m.size
    assert abs(m.mean()) <= 5 / np.sqrt(T)
    two = charpoly.sample_matrices(2, np.random.default_rng(2), 64_000)
    counts = np.unique(((two.reshape(-1, 4) + 1) // 2) @ (1 << np.arange(4)), return_counts=True)[1]
    assert len(counts) == 16
    assert np.all(np.abs(counts - 4000) <= 5 * np.sqrt(4000))


def test_matrices_by_index_enumerate_all():
    mats = charpoly.matrices_by_index(2, np.arange(16, dtype=np.int64))
    assert len({m.tobytes() for m in mats}) == 16
    assert (mats[0] == 1).all() and (mats[15] == -1).all()


@given(sign_matrices())
def test_trace_and_determinant(m):
    c = charpoly.characteristic_polynomial(m)
    d = m.dimension
    a = m.to_array()
    assert c.degree == d and c.lead == 1
    assert c[d - 1] == -int(np.trace(a))
    assert c(0) == (-1) ** d * charpoly.determinant(m)


@given(sign_matrices(), st.randoms())
def test_permutation_invariance(m, rnd):
    d = m.dimension
    perm = list(range(d))
    rnd.shuffle(perm)
    a = m.to_array()
    b = a[np.ix_(perm, perm)]
    assert charpoly.characteristic_polynomial(SignMatrix.from_array(b)) == charpoly.characteristic_polynomial(m)


@given(sign_matrices(6))
def test_cayley_hamilton(m):
    a = [list(r) for r in m.entries]
    c = charpoly.characteristic_polynomial_int(a)
    d = len(a)
    acc = [[0] * d for _ in range(d)]
    power = [[int(i == j) for j in range(d)] for i in range(d)]
    for k in range(d + 1):
        acc = [[acc[i][j] + c[k] * power[i][j] for j in range(d)] for i in range(d)]
        power = charpoly._matmul(power, a)
    assert all(v == 0 for r in acc for v in r)


@pytest.mark.parametrize("d", [1, 2, 5, 12, 25, 41])
def test_batch_matches_exact(d):
    mats = charpoly.sample_matrices(d, np.random.default_rng(d), 6)
    batch = charpoly.charpoly_batch(mats)
    for m, got in zip(mats, batch):
        assert got == charpoly.characteristic_polynomial_int(m.tolist())
        assert abs(max(got, key=abs)) <= charpoly.coefficient_bound(d)


def test_large_coefficients_exceed_int64():
    mats = charpoly.sample_matrices(40, np.random.default_rng(5), 3)
    coeffs = [c for row in charpoly.charpoly_batch(mats) for c in row]
    assert max(abs(c) for c in coeffs) > 2**63


def test_bareiss_against_fractions():
    from fractions import Fraction

    rng = np.random.default_rng(9)
    for d in range(1, 8):
        a = rng.integers(-4, 5, size=(d, d)).tolist()
        m = [[Fraction(v) for v in r] for r in a]
        det = Fraction(1)
        for i in range(d):
            piv = next((r for r in range(i, d) if m[r][i] != 0), None)
            if piv is None:
                det = Fraction(0)
                break
            if piv != i:
                m[i], m[piv] = m[piv], m[i]
                det = -det
            det *= m[i][i]
            for r in range(i + 1, d):
                f = m[r][i] / m[i][i]
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
        assert charpoly.determinant_int(a) == det
