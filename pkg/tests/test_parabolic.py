import random
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
from oracles import oracle_best_line, oracle_generic
from parahiggs.errors import InvalidInputError, UnsupportedError
from parahiggs.exactkernel import Poly
from parahiggs.parabolic import (
    PARABOLIC,
    STRONGLY,
    FlagData,
    ParabolicBundle,
    flag_from_lines,
    global_par_end,
    induce_sub,
    induced_pdeg,
    is_generic_weights,
    is_stable,
    kernel_image,
    pdeg_slope,
    saturate,
)
from parahiggs.projline import MarkedCurve

x = Poly.x()
ONE = Poly([1])


def col(*entries):
    return [[e] for e in entries]


# ------------------------------------------------------------ data types


def test_flag_validation():
    with pytest.raises(InvalidInputError):
        flag_from_lines(1, [[1, 0], [1, 0]], [0, F(1, 2)])
    with pytest.raises(InvalidInputError):
        flag_from_lines(1, [[1, 0], [0, 1]], [F(1, 2), F(1, 2)])
    with pytest.raises(InvalidInputError):
        flag_from_lines(1, [[1, 0], [0, 1]], [0, 1])


def test_bundle_json_round_trip(fixture_bundle):
    data = fixture_bundle.to_json()
    assert data["flags"][0]["frame"] == [["1", "0"], ["1", "1"]]
    assert ParabolicBundle.from_json(data) == fixture_bundle
    data["splitting"] = [0, 1]
    with pytest.raises(InvalidInputError):
        ParabolicBundle.from_json(data)


# ------------------------------------------------------------ degrees


def test_pdeg_examples(fixture_bundle):
    assert pdeg_slope(fixture_bundle) == (F(2021, 1000), F(2021, 2000))
    c = gen.fixture_curve()
    weightless = ParabolicBundle(c, (2, -1), tuple(
        FlagData(p, (2,), ((F(1), F(0)), (F(0), F(1))), (F(0),)) for p in c.points))
    assert pdeg_slope(weightless)[0] == 1
    c3 = MarkedCurve((F(1), F(2), F(3)))
    line = ParabolicBundle(c3, (-1,), tuple(
        FlagData(p, (1,), ((F(1),),), (F(1, 3) if p == 1 else F(0),)) for p in c3.points))
    assert pdeg_slope(line)[0] == F(-2, 3)


def test_saturate_examples():
    S = saturate(col(x - 1, x * (x - 1)), (0, 0))
    assert S.matrix == ((ONE,), (x,)) and S.degree == -1
    I = saturate([[ONE, Poly()], [Poly(), ONE]], (0, 0))
    assert I.matrix == ((ONE, Poly()), (Poly(), ONE)) and I.degree == 0
    S = saturate(col(x * x, x * x + x), (0, 0))
    assert S.matrix == ((x,), (x + 1,)) and S.degree == -1
    with pytest.raises(InvalidInputError):
        saturate(col(Poly(), Poly()), (0, 0))


def test_saturate_irrational_factor():
    q = x * x - 2
    S = saturate(col(q, q * x + q), (1, 0))
    assert S.matrix == ((ONE,), (x + 1,)) and S.degree == -1
    # rank two with a common factor in the minors
    M = [[q, Poly()], [Poly(), q * (x - 3)]]
    S = saturate(M, (0, 0))
    assert S.degree == 0


def test_induce_sub_examples(fixture_bundle):
    E = fixture_bundle
    F1 = saturate(col(ONE, x), (0, 0))
    assert [ind.weights for ind in induce_sub(E, F1)] == [
        (F(1, 4) + F(e, 1000),) for e in gen.EPS]
    assert induced_pdeg(E, F1) == F(21, 1000)
    assert induced_pdeg(E, saturate(col(ONE, -x), (0, 0))) == 0
    assert induced_pdeg(E, saturate(col(ONE, Poly()), (0, 0))) == 1


# ------------------------------------------------------------ stability


def test_stability_examples(fixture_bundle, unstable):
    v = is_stable(fixture_bundle)
    assert v.verdict == "stable"
    assert v.best_slope == F(1007, 1000) < F(2021, 2000)
    assert v.witness.matrix == ((ONE,), (Poly([-2]),))
    u = is_stable(unstable)
    assert u.verdict == "unstable"
    assert u.witness.matrix == ((ONE,), (Poly(),))
    assert u.best_slope == F(4, 5) and u.slope == F(3, 5)


def test_semistable_example():
    c = gen.fixture_curve()
    flags = [flag_from_lines(p, [[0, 1], [1, 0]] if i < 2 else [[1, 0], [1, p]], [F(1, 10), F(2, 10)])
             for i, p in enumerate(c.points)]
    assert is_stable(ParabolicBundle(c, (0, 0), tuple(flags))).verdict == "semistable_not_stable"


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_stability_matches_oracle(seed):
    rng = random.Random(seed)
    E = gen.random_bundle(rng, 2, rng.choice([3, 4]), splitting=rng.choice([(0, 0), (1, -1), (0, -1)]),
                          full=rng.random() < 0.8)
    v = is_stable(E)
    assert v.best_slope == oracle_best_line(E)
    assert induced_pdeg(E, v.witness) == v.best_slope


def test_rank3_needs_candidates():
    rng = random.Random(3)
    E = gen.random_bundle(rng, 3, 3, splitting=(0, 0, 0))
    with pytest.raises(UnsupportedError):
        is_stable(E)
    cand = [saturate([[ONE], [Poly()], [Poly()]], E.splitting)]
    assert is_stable(E, candidates=cand).certificate["method"] == "candidate list"


# ------------------------------------------------------------ genericity


def test_genericity_examples():
    assert is_generic_weights(2, 0, [[1, 1]] * 4, [[F(1, 4), F(1, 4) + F(e, 1000)] for e in gen.EPS]).generic
    cert = is_generic_weights(2, 0, [[1, 1]] * 4, [[F(1, 10), F(2, 10)]] * 4)
    assert not cert.generic and cert.witness["k"] == 1
    assert is_generic_weights(2, 1, [[1, 1]], [[0, F(1, 2)]]).generic == oracle_generic(2, 1, [[1, 1]], [[0, F(1, 2)]])


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_genericity_matches_scan(seed):
    rng = random.Random(seed)
    r = rng.choice([2, 3])
    n = rng.choice([2, 3, 4])
    mults = [list(gen.random_multiplicities(rng, r)) for _ in range(n)]
    den = rng.choice([3, 4, 6, 10])
    weights = [sorted(F(v, den) for v in rng.sample(range(den), len(m))) for m in mults]
    d = rng.randint(-2, 2)
    assert is_generic_weights(r, d, mults, weights).generic == oracle_generic(r, d, mults, weights)


# ------------------------------------------------------------ endomorphisms


def test_global_par_end_examples(fixture_bundle):
    E = fixture_bundle
    p0 = global_par_end(E, PARABOLIC, 0)
    assert (p0.h0, p0.chi, p0.h1) == (1, 0, 1)
    s0 = global_par_end(E, STRONGLY, 0)
    assert (s0.h0, s0.chi, s0.h1) == (0, -8, 8)
    p2 = global_par_end(E, PARABOLIC, 2)
    assert (p2.h0, p2.h1) == (8, 0)


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_stable_implies_simple(seed):
    E = gen.random_stable_rank2(random.Random(seed))
    assert global_par_end(E, PARABOLIC, 0).h0 == 1
    assert global_par_end(E, STRONGLY, 0).h0 == 0


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_duality_swaps(seed):
    rng = random.Random(seed)
    E = gen.random_bundle(rng, rng.choice([2, 3]), rng.choice([3, 4]), full=rng.random() < 0.7)
    w = E.curve.n - 2
    par = global_par_end(E, PARABOLIC, 0)
    spk = global_par_end(E, STRONGLY, w)
    assert par.chi + spk.chi == 0
    assert (par.h0, par.h1) == (spk.h1, spk.h0)


def test_moduli_dimension_bookkeeping():
    rng = random.Random(11)
    for _ in range(5):
        E = gen.random_stable_rank2(rng)
        if not is_generic_weights(2, E.degree, [f.multiplicities for f in E.flags],
                                  [f.weights for f in E.flags]).generic:
            continue
        par = global_par_end(E, PARABOLIC, 0)
        assert par.h1 - par.h0 + 1 == -4 + 1 + sum(fl.f for fl in E.flags)


def _weights_with_mult(ind_or_flag):
    return Counter(w for m, w in zip(ind_or_flag.multiplicities, ind_or_flag.weights) for _ in range(m))


def test_kernel_image_partition_weights():
    rng = random.Random(5)
    c = gen.fixture_curve()
    checked = 0
    for _ in range(12):
        lines = [rng.choice([[[0, 1], [1, 0]], [[1, 0], [0, 1]]]) for _ in c.points]
        flags = tuple(flag_from_lines(p, ls, gen.random_weights(rng, 2)) for p, ls in zip(c.points, lines))
        E = ParabolicBundle(c, rng.choice([(0, 0), (1, 0)]), flags)
        basis = global_par_end(E, PARABOLIC, 0).basis
        for _ in range(3):
            coeffs = [gen.rand_rat(rng) for _ in basis]
            f = [[sum((m[i][j] * cc for m, cc in zip(basis, coeffs)), Poly()) for j in range(2)]
                 for i in range(2)]
            K, I = kernel_image(E, f)
            if K is None:
                continue
            for fl, kf, imf in zip(E.flags, induce_sub(E, K), induce_sub(E, I)):
                assert _weights_with_mult(kf) + _weights_with_mult(imf) == _weights_with_mult(fl)
            checked += 1
    assert checked >= 5
