import pytest
from hypothesis import given, settings, strategies as st

from thinset.errors import ParameterError, ParseError, UnknownNameError
from thinset.setmodel import (
    Difference, Explicit, Intersection, ResidueClass, Union, count_upto, enumerate_upto,
    gap_sequence, member, parse_set_expr, window_count,
)
from thinset.setmodel.catalog import cubic_sum, primes_upto, triangular


def elems(text, N):
    return list(enumerate_upto(parse_set_expr(text), N).elements)


@pytest.mark.parametrize("text,N,expected", [
    ("pow(2)", 100, [2, 4, 8, 16, 32, 64]),
    ("pow2plus1", 40, [3, 5, 9, 17, 33]),
    ("ap(3,1)", 12, [1, 4, 7, 10]),
    ("dyadic(2,1)", 20, [3, 7, 11, 15, 19]),
    ("tri", 30, [1, 3, 6, 10, 15, 21, 28]),
    ("blocks(pow2run)", 20, [2, 3, 4, 5, 6, 8, 9, 10, 11, 16, 17, 18, 19, 20]),
    ("blocks(pow2pair)", 40, [2, 3, 4, 6, 8, 11, 16, 20, 32, 37]),
    ("blocks(triY)", 30, [1, 2, 3, 6, 7, 10, 15, 16, 21, 28, 29]),
    ("union(pow(2),pow2plus1)", 20, [2, 3, 4, 5, 8, 9, 16, 17]),
    ("inter(ap(2,2),ap(3,3))", 30, [6, 12, 18, 24, 30]),
    ("diff(ap(1,1),pow(2))", 9, [1, 3, 5, 6, 7, 9]),
    ("{5, 1, 3, 3}", 10, [1, 3, 5]),
    ("primes", 30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]),
])
def test_enumeration_examples(text, N, expected):
    assert elems(text, N) == expected


def test_cubicgap_blocks():
    # a_1 = 1, A_1 = {1, 2}; a_2 = a_1 + 2*1 + 1 = 4, A_2 = {4, 5, 13}
    assert elems("blocks(cubicgap)", 13) == [1, 2, 4, 5, 13]
    assert cubic_sum(3) == 36


def test_parse_structure():
    e = parse_set_expr(" union( pow(2) , ap(4,1), {7} ) ")
    assert isinstance(e, Union) and len(e.members) == 3
    assert isinstance(parse_set_expr("inter(ap(2,1),tri)"), Intersection)
    assert isinstance(parse_set_expr("diff(ap(1,1),tri)"), Difference)
    assert parse_set_expr("ap(4,1)") == ResidueClass(4, 1)
    assert parse_set_expr("{4,2}") == Explicit((2, 4))
    assert parse_set_expr("pow2run") == parse_set_expr("blocks(pow2run)")


@pytest.mark.parametrize("text,pos", [("union(pow(2)", 12), ("pow(2", 5), ("ap(2,1))", 7)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_set_expr(text)
    assert exc.value.pos == pos


@pytest.mark.parametrize("text,err", [
    ("nosuch(3)", UnknownNameError),
    ("ap(3,4)", ParameterError),
    ("ap(0,1)", ParameterError),
    ("pow(1)", ParameterError),
    ("pow(2,3)", ParameterError),
    ("blocks(pow)", ParameterError),
    ("{}", ParseError),
    ("union(pow(2))", ParseError),
    ("{0, 3}", ParameterError),
])
def test_parse_rejects(text, err):
    with pytest.raises(err):
        parse_set_expr(text)


def test_roundtrip_str():
    for text in ("union(pow(2),pow2plus1)", "inter(ap(2,2),ap(3,3))", "blocks(pow2run)",
                 "diff(ap(1,1),tri)"):
        e = parse_set_expr(text)
        assert parse_set_expr(str(e)) == e


def test_primes_sieve_against_trial_division():
    def is_prime(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))
    assert list(primes_upto(2000)) == [n for n in range(2001) if is_prime(n)]


def test_triangular():
    assert [triangular(k) for k in range(1, 6)] == [1, 3, 6, 10, 15]


EXPRS = ["pow(3)", "tri", "ap(5,2)", "union(pow(2),ap(7,7))", "inter(tri,ap(2,2))",
         "diff(ap(3,1),pow(2))", "blocks(pow2run)", "blocks(triY)", "{3,9,27}", "blocks(cubicgap)",
         "poly(2,3,1)", "blocks(polyblocks(3,2,0,2))"]


@pytest.mark.parametrize("text", EXPRS)
def test_member_agrees_with_enumeration(text):
    e = parse_set_expr(text)
    got = set(enumerate_upto(e, 500).elements)
    assert {n for n in range(1, 501) if member(e, n)} == got


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(EXPRS), st.integers(1, 3000), st.integers(0, 3000), st.integers(1, 400))
def test_counts_match_brute_force(text, n, h, k):
    N = 3400
    p = enumerate_upto(parse_set_expr(text), N)
    s = set(p.elements)
    assert count_upto(p, n) == sum(1 for v in s if v <= n)
    assert window_count(p, h, k) == sum(1 for v in s if h < v <= h + k)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 10**4), max_size=60), st.lists(st.integers(1, 10**4), max_size=60))
def test_combinators_are_set_algebra(a, b):
    A, B = Explicit(tuple(sorted(set(a)))), Explicit(tuple(sorted(set(b))))
    N = 10**4
    sa, sb = set(a), set(b)
    assert set(enumerate_upto(Union((A, B)), N).elements) == sa | sb
    assert set(enumerate_upto(Intersection(A, B), N).elements) == sa & sb
    assert set(enumerate_upto(Difference(A, B), N).elements) == sa - sb


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30), st.integers(1, 30))
def test_residue_intersection(m1, r1, m2, r2):
    r1, r2 = (r1 - 1) % m1 + 1, (r2 - 1) % m2 + 1
    e = Intersection(ResidueClass(m1, r1), ResidueClass(m2, r2))
    got = enumerate_upto(e, 2000).elements
    assert list(got) == [n for n in range(1, 2001) if n % m1 == r1 % m1 and n % m2 == r2 % m2]


def test_prefix_invariants_and_gaps():
    p = enumerate_upto(parse_set_expr("pow(2)"), 64)
    assert p.horizon == 64 and 8 in p and 9 not in p
    assert list(gap_sequence(p).gaps) == [2, 4, 8, 16, 32]
    assert list(p.restrict(10).elements) == [2, 4, 8]
