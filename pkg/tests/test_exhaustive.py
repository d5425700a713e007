import itertools
from fractions import Fraction

import pytest

from oracles import brute_min_factor_degree, brute_reducible
from polyred import analytic, charpoly, exhaustive, models
from polyred.models import ModelSpec, SupportTooLarge


def S(text):
    return ModelSpec.parse(text)


class TestExamples:
    def test_pm1_quadratic_never_reducible(self):
        assert exhaustive.exact(S("pm1:2")).reducible_prob == 0

    def test_pm1_cubic_linear(self):
        st = exhaustive.exact(S("pm1:3"))
        assert st.linear_factor_prob == Fraction(1, 2)
        assert st.linear_factor_prob == analytic.pm1_linear_counts(3).exact

    def test_z1_cubic(self):
        st = exhaustive.exact(S("z1:3"))
        assert st.reducible_prob == Fraction(1, 2)
        assert exhaustive.conditional_linear_given_reducible(st) == 1

    def test_null_conditioning(self):
        with pytest.raises(ZeroDivisionError):
            exhaustive.conditional_linear_given_reducible(S("pm1:4"))

    def test_pm1_conditional_trend(self):
        # within the d = 3 mod 4 class; the d = 1 mod 4 class starts at 1 and dips
        vals = [exhaustive.conditional_linear_given_reducible(S(f"pm1:{d}")) for d in (11, 15)]
        assert all(0 < v <= 1 for v in vals)
        assert vals[0] < vals[1]

    def test_cap(self):
        with pytest.raises(SupportTooLarge, match=str(2**20)):
            exhaustive.exact(S("pm1:20"), cap=1000)


@pytest.mark.parametrize("text", ["z1:6", "z1-free:5", "pm1:6", "monic-sym:3:1", "monic-nonneg:3:2",
                                  "nonmonic:2:2", "binomial:3:2", "charpm1:2"])
def test_matches_brute_force_oracle(text):
    spec = S(text)
    st = exhaustive.exact(spec)
    red = lin = zero = Fraction(0)
    hist = {}
    for p, w in models.enumerate_support(spec):
        r = brute_reducible(p.coeffs)
        k = brute_min_factor_degree(p.coeffs) if p.degree > 1 else 1
        red += w * r
        lin += w * (k == 1)
        zero += w * (p[0] == 0)
        hist[k] = hist.get(k, 0) + w
    assert st.reducible_prob == red
    assert st.linear_factor_prob == lin
    assert st.constant_zero_prob == zero
    assert st.min_degree_probs == {k: v for k, v in sorted(hist.items()) if v}
    assert sum(st.min_degree_probs.values()) == 1


def test_known_values():
    assert exhaustive.exact(S("binomial:3:2")).reducible_prob == Fraction(17, 32)
    assert exhaustive.exact(S("nonmonic:2:1")).reducible_prob == Fraction(4, 9)
    assert exhaustive.exact(S("charpm1:3")).reducible_prob == Fraction(13, 16)


def test_free_constant_identity():
    for d in range(3, 11):
        free = exhaustive.exact(S(f"z1-free:{d}")).reducible_prob
        fixed = exhaustive.exact(S(f"z1:{d}")).reducible_prob
        assert free == Fraction(1, 2) + fixed / 2


def test_workers_do_not_change_results(monkeypatch):
    monkeypatch.setattr(exhaustive, "BLOCK", 256)
    spec = S("z1:13")
    assert exhaustive.exact(spec, workers=3) == exhaustive.exact(spec, workers=1)


def test_charpoly_singular_fraction_d3():
    singular = sum(
        charpoly.determinant_int([list(e[0:3]), list(e[3:6]), list(e[6:9])]) == 0
        for e in itertools.product((-1, 1), repeat=9)
    )
    st = exhaustive.exact(S("charpm1:3"))
    assert st.constant_zero_prob == Fraction(singular, 512)


@pytest.mark.parametrize("d", range(2, 15))
def test_unit_root_counts(d):
    z = exhaustive.unit_root_counts(S(f"z1:{d}"))
    assert z.root_plus_one == 0
    assert z.root_minus_one == analytic.z1_linear_count(d)
    p = exhaustive.unit_root_counts(S(f"pm1:{d}"))
    if d % 2:
        assert p.either == analytic.pm1_linear_counts(d).count
    else:
        assert p.either == 0


def test_unit_root_rejects_matrices():
    with pytest.raises(ValueError):
        exhaustive.unit_root_counts(S("charpm1:2"))


def test_as_dict_is_exact_text():
    d = exhaustive.exact(S("pm1:3")).as_dict()
    assert d["linear_factor_prob"] == {"exact": "1/2", "approx": 0.5}
    assert d["support_size"] == 8
