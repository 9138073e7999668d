import pytest
from hypothesis import given, settings, strategies as st

from thinset.bwlab import (DYADIC, OMEGA_FAMILY, POW2RUN_FAMILY, NoRunError, TreeFamily,
                           branch_chain, build_ar_set, case1_blocks, case1_witness, offset,
                           parse_bits, tree_node, verify_tree_conditions)
from thinset.density import density_profile, doubling_checkpoints
from thinset.errors import HorizonError, ParameterError
from thinset.setmodel import OMEGA, ResidueClass, enumerate_upto, parse_set_expr
from thinset.thinness import run_statistic

bits = st.lists(st.integers(0, 1), max_size=8).map(tuple)


def elems(expr, N):
    return set(enumerate_upto(expr, N).elements)


def test_tree_node_examples():
    assert tree_node((0, 1)) == ResidueClass(4, 2)
    assert sorted(elems(tree_node((0, 1)), 14)) == [2, 6, 10, 14]
    assert tree_node(()) == OMEGA
    assert sorted(elems(tree_node((1, 1, 1)), 20)) == [1, 9, 17]
    assert offset((1, 1, 1)) == 7


@settings(max_examples=60, deadline=None)
@given(bits)
def test_tree_recursion_by_brute_force(s):
    N = 3000
    n, i = len(s), sum(b * 2**j for j, b in enumerate(s))
    direct = {v for v in range(1, N + 1) if (v + i) % 2**n == 0}
    assert elems(tree_node(s), N) == direct
    left, right = elems(tree_node(s + (0,)), N), elems(tree_node(s + (1,)), N)
    assert left | right == direct and not left & right


def test_verify_dyadic():
    assert verify_tree_conditions(DYADIC, 3, 100).passed
    rep = verify_tree_conditions(DYADIC, 10, 10**5)
    assert rep.passed and rep.nodes_checked == 2**11 - 1


def test_verify_reports_violations():
    even = parse_set_expr("ap(2,2)")
    bad = TreeFamily("bad", lambda s: OMEGA if not s else even)
    rep = verify_tree_conditions(bad, 1, 10)
    assert not rep.passed_condition("S2") and not rep.passed_condition("S3")
    assert rep.passed_condition("S1")
    s2 = next(v for v in rep.violations if v.condition == "S2")
    assert s2.witness == 1
    rep = verify_tree_conditions(TreeFamily("even", lambda s: even), 1, 10)
    assert not rep.passed_condition("S1")


def test_verify_needs_horizon():
    with pytest.raises((HorizonError, ParameterError)):
        verify_tree_conditions(DYADIC, 8, 100)


def test_branch_examples():
    (_, d0), (_, d1) = branch_chain((0, 0))
    assert sorted(elems(d0, 9)) == [1, 3, 5, 7, 9]
    assert sorted(elems(d1, 14)) == [2, 6, 10, 14]
    ((_, d),) = branch_chain((1,))
    assert sorted(elems(d, 8)) == [2, 4, 6, 8]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=10).map(tuple))
def test_branch_differences_disjoint_and_cover(x):
    N = 10**4
    diffs = [elems(d, N) for _, d in branch_chain(x)]
    for j, d in enumerate(diffs):
        assert isinstance(branch_chain(x)[j][1], ResidueClass)
        assert branch_chain(x)[j][1].modulus == 2 ** (j + 1)
    for a in range(len(diffs)):
        for b in range(a + 1, len(diffs)):
            assert not diffs[a] & diffs[b]
    rest = elems(tree_node(x), N)
    assert set().union(*diffs) | rest == set(range(1, N + 1))


def test_ar_examples():
    assert build_ar_set((0, 0), (1, 2), 50).elements == (1, 2, 6)
    assert build_ar_set((0,), (1,), 10).elements == (1,)
    ar = build_ar_set((0, 0, 0), (2, 3, 4), 200)
    assert len(ar) == 9
    with pytest.raises(HorizonError):
        build_ar_set((0, 0, 0), (2, 3, 40), 200)
    with pytest.raises(ParameterError):
        build_ar_set((0, 0), (2, 2), 200)


def test_ar_density_vanishes():
    x = (0, 1) * 6
    ar = build_ar_set(x, tuple(range(1, 13)), 10**5)
    prof = density_profile(ar, doubling_checkpoints(10**5, 2**12))
    assert all(b <= a for a, b in zip(prof.ratios, prof.ratios[1:]))


def test_case1_constant_family():
    blocks = case1_blocks(OMEGA_FAMILY, (0, 0, 0), 1, 100)
    assert blocks == [(1,), (2,), (3, 4), (5, 6, 7)]
    assert run_statistic(case1_witness(OMEGA_FAMILY, (0, 0, 0), 1, 100), 1) >= 3


def test_case1_dyadic_has_no_runs():
    with pytest.raises(NoRunError):
        case1_blocks(DYADIC, (0, 1, 1), 1, 10**4)


def test_case1_pow2run_family():
    x = parse_bits("0110")
    N = 2**7
    blocks = case1_blocks(POW2RUN_FAMILY, x, 1, N)
    B = {v for b in blocks for v in b}
    for j in range(1, len(x) + 1):
        earlier = {v for b in blocks[:j] for v in b}
        assert B - elems(POW2RUN_FAMILY(x[:j]), N) <= earlier


def test_parse_bits():
    assert parse_bits("0110") == (0, 1, 1, 0)
    assert parse_bits("") == ()
    with pytest.raises(ParameterError):
        parse_bits("012")
