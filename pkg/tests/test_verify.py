import random

import pytest

from qcross.errors import EmptyFamily, HypothesisViolated, NotMaximal, PreconditionViolated
from qcross.families import Family, construct_h1, construct_h2, trivial_family
from qcross.gf import field_new
from qcross.grassmann import contains, coordinate_space, from_text, grassmannian, meet_dim
from qcross.search import closure
from qcross.verify import (
    NA,
    b_family,
    b_family_report,
    check_cover_structure,
    size_bound_value,
    verify_pushup,
    verify_size_bound,
)


@pytest.fixture(scope="module")
def h2_631():
    F2 = field_new(2)
    return construct_h2(coordinate_space(F2, 6, [0, 1, 2]), 3, 2)


def test_pushup_example(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    S = coordinate_space(F2, 6, [1])
    res = verify_pushup(fam, T, S, 1)
    R, ok = res
    assert ok and R.dim == 2 and contains(R, S)
    assert res.size_s <= res.factor * res.size_r


def test_pushup_empty_restriction_accepts_first_candidate(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    S = from_text(F2, "011000;000110", 6)
    res = verify_pushup(fam, T, S, 1)
    assert res.size_s == 0 and res.ratio_ok and res.witness.dim == 3


def test_pushup_preconditions(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    with pytest.raises(PreconditionViolated):
        verify_pushup(fam, T, coordinate_space(F2, 6, [0, 1]), 1)
    with pytest.raises(PreconditionViolated):
        verify_pushup(fam, coordinate_space(F2, 6, [1]), coordinate_space(F2, 6, [2]), 1)


def test_pushup_exhaustive_on_h2(h2_631):
    F2 = h2_631.field
    Z = coordinate_space(F2, 6, [0, 1, 2])
    X = coordinate_space(F2, 6, [0, 1])  # a 2-dimensional 1-cover of H2(Z)
    for text in ("000100", "001100", "000110;000001"):
        S = from_text(F2, text, 6)
        if meet_dim(X, S) < 1:
            res = verify_pushup(h2_631, X, S, 1)
            assert res.ratio_ok
    del Z


def test_size_bound_tight_for_trivial(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    assert verify_size_bound(fam, fam, 1)
    assert size_bound_value(6, 2, 1, 1, 1, 2) == len(fam)


def test_size_bound_on_h2_and_search_pairs(h2_631):
    assert verify_size_bound(h2_631, h2_631, 1)
    G = grassmannian(2, 6, 2)
    rng = random.Random(3)
    for _ in range(5):
        g = closure(Family.of(rng.sample(G.members, 2)), 1)
        if len(g):
            assert verify_size_bound(closure(g, 1), g, 1)


def test_size_bound_hypotheses(F2):
    A = trivial_family(coordinate_space(F2, 5, [0]), 2)
    B = trivial_family(coordinate_space(F2, 5, [1]), 2)
    with pytest.raises(HypothesisViolated):
        verify_size_bound(A, B, 1)
    fam = trivial_family(coordinate_space(F2, 3, [0]), 2)
    with pytest.raises(HypothesisViolated):
        verify_size_bound(fam, fam, 1)


def test_b_family(h2_631):
    B = b_family(h2_631, h2_631, 1)
    assert len(B) == 0  # every member of H2(Z) contains a 2-subspace of Z
    rep = b_family_report(h2_631, h2_631, 1)
    assert rep["status"] == "exploratory"
    assert len(b_family(h2_631, h2_631.with_members([]), 1)) == 0
    T = coordinate_space(h2_631.field, 6, [0])
    triv = trivial_family(T, 3)
    with pytest.raises(HypothesisViolated):
        b_family(triv, triv, 1)


def test_structure_on_h2(h2_631):
    rep = check_cover_structure(h2_631, h2_631, 1)
    assert rep.ok and rep.tau == (2, 2)
    cross = [c for c in rep.clauses if c.statement == "cover-sets"]
    assert cross and cross[0].status == "pass"


def test_structure_on_h1_meets_codimension_one(F2):
    M, T = coordinate_space(F2, 7, [0, 1, 2, 3]), coordinate_space(F2, 7, [0])
    H1 = construct_h1(M, M, T, 3, 1)
    rep = check_cover_structure(H1, H1, 1)
    assert rep.ok
    codim = [c for c in rep.clauses if c.clause.endswith("meet-codim-1")]
    assert codim and all(c.status == "pass" for c in codim)
    # the cover families of H1 have covering number 1, so the case split does not apply
    assert any(c.status == NA for c in rep.clauses if c.statement == "cover-pairs")
    for F in H1:
        if not contains(F, T):
            assert meet_dim(M, F) == M.dim - 1


def test_structure_rejects_non_maximal(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    half = fam.with_members(fam.members[:5])
    with pytest.raises(NotMaximal):
        check_cover_structure(half, fam, 1)
    with pytest.raises(EmptyFamily):
        check_cover_structure(fam.with_members([]), fam, 1)


def test_structure_reports_not_applicable_for_trivial_pair(F2):
    T = coordinate_space(F2, 6, [0])
    fam = trivial_family(T, 2)
    rep = check_cover_structure(fam, fam, 1)
    assert rep.ok
    assert all(c.status == NA for c in rep.clauses if c.statement != "cover-sets")
