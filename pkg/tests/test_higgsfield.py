import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
from parahiggs.errors import InvalidInputError
from parahiggs.exactkernel import Poly, mat_inv, mat_mul
from parahiggs.higgsfield import (
    HIGGS_ONLY,
    INVALID,
    HiggsField,
    classify,
    field_space_basis,
    residue_matrix,
    trace_residue_sum,
    validate,
)
from parahiggs.parabolic import PARABOLIC, STRONGLY

t = Poly.x()


def conj_oracle(fl, A, strict):
    """Conjugate into the flag frame and look at the block-upper part directly."""
    B = [list(row) for row in fl.frame]
    C = mat_mul(mat_inv(B), mat_mul(A, B))
    block = [b for b, m in enumerate(fl.multiplicities) for _ in range(m)]
    for i in range(len(C)):
        for j in range(len(C)):
            if block[i] < block[j] or (strict and block[i] == block[j]):
                if C[i][j]:
                    return False
    return True


def test_validate_examples(fixture_bundle, phi0):
    assert validate(phi0) == PARABOLIC
    assert validate(gen.zero_field(fixture_bundle)) == STRONGLY
    cls, detail = classify(fixture_bundle, [[Poly(), Poly()], [t ** 3, Poly()]])
    assert cls == INVALID
    assert detail == {"entry": [1, 0], "degree": 3, "bound": 2}
    with pytest.raises(InvalidInputError):
        HiggsField(fixture_bundle, ((Poly(), Poly()), (t ** 3, Poly())))


def test_negative_bound_entries_must_vanish():
    rng = random.Random(1)
    E = gen.random_bundle(rng, 2, 3, splitting=(2, -1))
    # bound for (1, 0) is -1 - 2 + 1 = -2
    cls, detail = classify(E, [[Poly(), Poly()], [Poly([1]), Poly()]])
    assert cls == INVALID and detail["bound"] == -2


def test_residue_examples(phi0):
    assert residue_matrix(phi0, 1) == [[0, F(-1, 6)], [F(-1, 6), 0]]
    assert residue_matrix(phi0, 2) == [[0, F(1, 12)], [F(4, 12), 0]]
    with pytest.raises(InvalidInputError):
        residue_matrix(phi0, 3)


def test_fixture_residue_eigenvector(phi0):
    for p in gen.POINTS:
        A = residue_matrix(phi0, p)
        v = [F(1), F(p)]
        Av = [sum(a * b for a, b in zip(row, v)) for row in A]
        lam = F(p) / phi0.curve.dq(p)
        assert Av == [lam * x for x in v]


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_trace_residue_theorem(seed):
    rng = random.Random(seed)
    E = gen.random_bundle(rng, rng.choice([2, 3]), rng.choice([3, 4, 5]), full=rng.random() < 0.6)
    assert trace_residue_sum(gen.random_valid_higgs(rng, E)) == 0


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_classification_matches_conjugation_oracle(seed):
    rng = random.Random(seed)
    E = gen.random_bundle(rng, rng.choice([2, 3]), rng.choice([3, 4]), full=rng.random() < 0.6)
    phi = gen.random_parabolic_higgs(rng, E) if rng.random() < 0.5 else gen.random_valid_higgs(rng, E)
    par = all(conj_oracle(fl, residue_matrix(phi, fl.point), False) for fl in E.flags)
    strong = all(conj_oracle(fl, residue_matrix(phi, fl.point), True) for fl in E.flags)
    expected = STRONGLY if strong else PARABOLIC if par else HIGGS_ONLY
    assert validate(phi) == expected


def test_fixture_family_stays_parabolic(fixture_bundle):
    basis = field_space_basis(fixture_bundle)
    assert len(basis) == 8
    strong = field_space_basis(fixture_bundle, STRONGLY)
    rng = random.Random(7)
    for _ in range(10):
        phi = gen.random_parabolic_higgs(rng, fixture_bundle)
        assert validate(phi) in (PARABOLIC, STRONGLY)
    for phi in strong:
        assert validate(phi) == STRONGLY


def test_json_round_trip(phi0):
    assert HiggsField.from_json(phi0.to_json()) == phi0
    with pytest.raises(InvalidInputError):
        HiggsField.from_json({"bundle": phi0.bundle.to_json()})
