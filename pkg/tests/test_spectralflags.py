import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
from oracles import brute_full_flags, flag_key, span_key
from parahiggs.errors import AmbiguityError, InvalidInputError, NonSplitError
from parahiggs.exactkernel import mat_inv, mat_mul
from parahiggs.higgsfield import residue_matrix
from parahiggs.hitchin import hitchin_map, spectral_build, spectral_smooth
from parahiggs.parabolic import PARABOLIC
from parahiggs.spectralflags import (
    coarsen,
    deg_L,
    enumerate_flags,
    fiber_count,
    flag_from_grouping,
    groupings,
    is_regular,
)


def random_conjugate(rng, J):
    B = gen.random_frame(rng, len(J))
    return mat_mul(B, mat_mul(J, mat_inv(B))), B


def test_fixture_examples():
    A = [[0, F(-1, 6)], [F(-1, 6), 0]]
    cf = flag_from_grouping(A, [[F(1, 6)], [F(-1, 6)]])
    assert span_key(cf.subspace(2)) == ((1, 1),)
    cf = flag_from_grouping(A, [[F(-1, 6)], [F(1, 6)]])
    assert span_key(cf.subspace(2)) == ((1, -1),)
    s = F(2, 3)
    J = [[s, 0], [1, s]]
    (only,) = enumerate_flags(J, [1, 1])
    assert span_key(only.subspace(2)) == ((0, 1),)


def test_counts():
    A = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert len(enumerate_flags(A, [2, 1])) == 3
    assert len(enumerate_flags(A, [1, 1, 1])) == 6
    assert len(enumerate_flags(A, [3])) == 1
    assert len(groupings([F(1), F(1), F(2)], [1, 1, 1])) == 3


def test_errors():
    with pytest.raises(NonSplitError):
        enumerate_flags([[0, 2], [1, 0]], [1, 1])
    with pytest.raises(AmbiguityError):
        enumerate_flags([[1, 0], [0, 1]], [1, 1])
    with pytest.raises(InvalidInputError):
        flag_from_grouping([[1, 0], [0, 2]], [[1], [3]])
    assert not is_regular([[1, 0], [0, 1]]) and is_regular([[1, 0], [1, 1]])


@given(st.integers(0, 10_000), st.sampled_from([2, 3]))
@settings(max_examples=30, deadline=None)
def test_distinct_spectrum_matches_brute_force(seed, r):
    rng = random.Random(seed)
    eigs = rng.sample(range(-5, 6), r)
    J = [[F(eigs[i]) if i == j else F(0) for j in range(r)] for i in range(r)]
    A, _ = random_conjugate(rng, J)
    flags = enumerate_flags(A, [1] * r)
    assert len(flags) == (2 if r == 2 else 6)
    assert {flag_key(cf) for cf in flags} == brute_full_flags(A)


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_jordan_block_matches_brute_force(seed):
    rng = random.Random(seed)
    a, b = rng.sample(range(-4, 5), 2)
    J = [[F(a), 0, 0], [F(1), F(a), 0], [0, 0, F(b)]]
    A, _ = random_conjugate(rng, J)
    flags = enumerate_flags(A, [1, 1, 1])
    assert len(flags) == 3
    assert {flag_key(cf) for cf in flags} == brute_full_flags(A)


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_uniqueness_under_conjugation(seed):
    rng = random.Random(seed)
    eigs = rng.sample(range(-5, 6), 3)
    J = [[F(eigs[i]) if i == j else F(0) for j in range(3)] for i in range(3)]
    A, _ = random_conjugate(rng, J)
    P = gen.random_frame(rng, 3)
    B = mat_mul(P, mat_mul(A, mat_inv(P)))
    for g in groupings([F(e) for e in eigs], [1, 2]):
        flag_a = flag_from_grouping(A, g)
        flag_b = flag_from_grouping(B, g)
        moved = [list(col) for col in zip(*mat_mul(P, [list(r) for r in zip(*flag_a.subspace(2))]))]
        assert span_key(moved) == span_key(flag_b.subspace(2))


def test_fixture_fiber_count(phi0):
    residues = [residue_matrix(phi0, p) for p in phi0.curve.points]
    assert fiber_count(residues, [[1, 1]] * 4) == 16
    assert fiber_count(residues, [[2]] * 4) == 1
    # the fixture flags are among the compatible ones
    for fl, A in zip(phi0.bundle.flags, residues):
        keys = {flag_key(cf) for cf in enumerate_flags(A, [1, 1])}
        assert (span_key([fl.column(1)]),) in keys


def test_coarsen_fixture(phi0):
    res = coarsen(phi0, [2], [F(1, 4)])
    assert res.classification_before == PARABOLIC
    assert res.classification_after == PARABOLIC  # a single block imposes nothing beyond End
    assert all(fl.multiplicities == (2,) for fl in res.bundle.flags)
    assert res.field.numerator == phi0.numerator
    assert res.stability is not None
    with pytest.raises(InvalidInputError):
        coarsen(phi0, [1, 2], [0, F(1, 2)])


def test_forgetful_fiber_recovers_flags(fixture_bundle):
    rng = random.Random(13)
    while True:
        phi = gen.random_parabolic_higgs(rng, fixture_bundle)
        if spectral_smooth(spectral_build(hitchin_map(phi))).smooth:
            break
    coarse = coarsen(phi, [2], [F(0)])
    residues = [residue_matrix(coarse.field, p) for p in coarse.bundle.curve.points]
    assert fiber_count(residues, [[1, 1]] * 4) == 16
    for fl, A in zip(fixture_bundle.flags, residues):
        keys = {flag_key(cf) for cf in enumerate_flags(A, [1, 1])}
        assert (span_key([fl.column(1)]),) in keys


def test_deg_L():
    assert deg_L(0, 2, 0, 4) == 2
    assert deg_L(3, 3, 2, 2) == 15
    for d in range(-2, 3):
        assert deg_L(d, 1, 0, 5) == d


def test_deg_L_matches_euler_characteristic():
    """chi(pi_* L) = chi(L) for the degree-r spectral cover: d + r(1-g) = deg L + 1 - g_s."""
    from parahiggs.hitchin import spectral_genus
    for d, r, g, n in itertools.product((-1, 0, 3), (1, 2, 3, 4), (0, 1, 2), (1, 2, 3, 4)):
        assert deg_L(d, r, g, n) == d + r * (1 - g) - 1 + spectral_genus(r, n, g)
