from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thinset.constructions import gallery
from thinset.density import (cumulative_counts, density_profile, doubling_checkpoints,
                             exact_density, uniform_density_profile, window_extremes)
from thinset.errors import ThinsetError
from thinset.setmodel import Explicit, Prefix, enumerate_upto, parse_set_expr
from thinset.setmodel.catalog import cubic_sum, cubicgap_start


def test_even_numbers():
    p = enumerate_upto(parse_set_expr("ap(2,2)"), 1000)
    prof = density_profile(p, [10, 100, 1000])
    assert list(prof.ratios) == [Fraction(1, 2)] * 3


def test_powers_of_two_at_2_20():
    N = 2**20
    prof = density_profile(enumerate_upto(parse_set_expr("pow(2)"), N), [N])
    assert prof.ratios[-1] == Fraction(20, N)


def test_pow2run_density_bound():
    N = 2**20
    p = enumerate_upto(gallery("pow2run"), N)
    cps = list(range(1, N + 1, 997)) + [2**k for k in range(21)]
    prof = density_profile(p, sorted(set(cps)))
    for n, r in zip(prof.checkpoints, prof.ratios):
        k = n.bit_length() - 1
        assert r <= Fraction((k + 1) * (k + 2), 2**k)


def test_profile_estimates_bracket_tail():
    p = enumerate_upto(parse_set_expr("union(ap(3,1),pow(2))"), 4096)
    prof = density_profile(p, doubling_checkpoints(4096))
    tail = prof.ratios[prof.tail_start:]
    assert prof.liminf_estimate == min(tail) and prof.limsup_estimate == max(tail)
    assert all(0 <= r <= 1 for r in prof.ratios)


def test_empty_checkpoints_rejected():
    with pytest.raises(ThinsetError):
        density_profile(enumerate_upto(parse_set_expr("pow(2)"), 10), [])


@pytest.mark.parametrize("text,d", [
    ("{5,7,9}", Fraction(0)),
    ("ap(4,2)", Fraction(1, 4)),
    ("union(ap(2,2),ap(4,1))", Fraction(3, 4)),
    ("union(ap(2,2),ap(3,3))", Fraction(2, 3)),
    ("inter(ap(2,2),ap(3,3))", Fraction(1, 6)),
    ("diff(ap(1,1),ap(5,5))", Fraction(4, 5)),
    ("pow(2)", Fraction(0)),
    ("union(ap(2,1),pow(2))", Fraction(1, 2)),
    ("primes", None),
])
def test_exact_density(text, d):
    assert exact_density(parse_set_expr(text)) == d


def test_exact_density_matches_enumeration():
    e = parse_set_expr("union(ap(2,2),ap(4,1))")
    s = set(enumerate_upto(e, 10**5).elements)
    assert not (set(range(2, 10**5 + 1, 2)) & set(range(1, 10**5 + 1, 4)))
    assert Fraction(len(s), 10**5) == exact_density(e)


def brute_windows(elements, N, k, h0):
    s = set(elements)
    counts = [sum(1 for v in range(h + 1, h + k + 1) if v in s) for h in range(h0, N - k + 1)]
    return max(counts), min(counts)


def test_ap3_windows():
    p = enumerate_upto(parse_set_expr("ap(3,3)"), 600)
    prof = uniform_density_profile(p, [30], 0)
    assert prof.sup_window_avg[0] == Fraction(1, 3)
    assert brute_windows(p.elements, 600, 30, 0) == (10, 10)


def test_finite_set_exhausted():
    p = Prefix(10**4, tuple(range(1, 101)))
    assert uniform_density_profile(p, [50], 200).sup_window_avg[0] == 0


def test_window_exceeding_horizon_rejected():
    p = enumerate_upto(parse_set_expr("pow(2)"), 100)
    with pytest.raises(ThinsetError):
        uniform_density_profile(p, [90], 20)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cubicgap_window_bound(n):
    # any window of length b_n + 1 starting at or after a_n holds at most n + 1 points
    a7 = cubicgap_start(7)
    p = enumerate_upto(gallery("cubicgap"), a7)
    k = cubic_sum(n) + 1
    prof = uniform_density_profile(p, [k], cubicgap_start(n) - 1)
    assert prof.sup_window_avg[0] * k <= n + 1


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 800), min_size=1, max_size=120), st.integers(1, 100),
       st.integers(0, 200))
def test_window_extremes_brute(values, k, h0):
    N = 900
    p = Prefix.of(sorted(set(values)), N)
    lo, hi = window_extremes(cumulative_counts(p), k, h0, N - k)
    assert (hi, lo) == brute_windows(p.elements, N, k, h0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 2000), min_size=1, max_size=200), st.integers(1, 64))
def test_uniform_brackets_density(values, k):
    N = 2000
    p = Prefix.of(sorted(set(values)), N)
    prof = uniform_density_profile(p, [k], 0)
    d = Fraction(len(p), N)
    assert prof.inf_window_avg[0] <= d + Fraction(k, N)
    assert prof.sup_window_avg[0] >= d - Fraction(k, N)
    assert 0 <= prof.inf_window_avg[0] <= prof.sup_window_avg[0] <= 1


@pytest.mark.parametrize("name", ["A_frak", "pow2run", "tri", "cubicgap", "pow2pair"])
def test_density_ordering_within_windows(name):
    # lower uniform <= lower density <= upper density <= upper uniform, within window slack
    N = 2**16
    p = enumerate_upto(gallery(name), N)
    prof = density_profile(p, doubling_checkpoints(N))
    k = 256
    up = uniform_density_profile(p, [k], 0)
    # tail checkpoints n >= N/2 tile [1, n] by at most n/k + 1 windows
    slack = Fraction(2 * k, N)
    assert up.inf_window_avg[0] * (1 - slack) <= prof.liminf_estimate
    assert prof.liminf_estimate <= prof.limsup_estimate
    assert prof.limsup_estimate <= up.sup_window_avg[0] * (1 + slack)
