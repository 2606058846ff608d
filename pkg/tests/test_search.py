import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcross.errors import BudgetExceeded, CertificateError, EmptyFamily, HypothesisViolated, PreconditionViolated, UnknownClaim
from qcross.families import Family, construct_h2, cross_intersecting, trivial_family
from qcross.gf import field_new
from qcross.grassmann import coordinate_space, grassmannian, meet_dim
from qcross.qbinom import meet_profile_count
from qcross.search import (
    SearchConfig,
    SearchRecord,
    closure,
    compare_to_theorem,
    exhaustive_closed_pairs,
    is_maximal_pair,
    match_hm_structure,
    stochastic_improve,
)

G525 = grassmannian(2, 5, 2)


def fam_from(idx):
    return Family.of([G525.members[i] for i in idx])


index_sets = st.lists(st.integers(0, len(G525) - 1), min_size=1, max_size=4, unique=True)


@settings(max_examples=60, deadline=None)
@given(index_sets, index_sets)
def test_closure_is_antitone(a, b):
    A, AB = fam_from(a), fam_from(a + b)
    assert closure(AB, 1) <= closure(A, 1)


@settings(max_examples=60, deadline=None)
@given(index_sets)
def test_double_closure_is_extensive_and_stable(a):
    A = fam_from(a)
    c1 = closure(A, 1)
    if not len(c1):
        return
    c2 = closure(c1, 1)
    assert A <= c2
    assert closure(c2, 1) == c1
    assert is_maximal_pair(c2, c1, 1)
    assert cross_intersecting([c2, c1], 1)[0]


def test_closure_of_trivial_family(F2):
    T = coordinate_space(F2, 6, [0])
    triv = trivial_family(T, 2)
    assert triv <= closure(triv, 1)


def test_closure_of_one_member_matches_profile_count(F2):
    F0 = coordinate_space(F2, 6, [0, 1])
    c = closure(Family.of([F0]), 1)
    assert len(c) == sum(meet_profile_count(6, 2, 2, j, 2) for j in (1, 2))
    assert all(meet_dim(F0, G) >= 1 for G in c)


def test_closure_into_another_dimension(F2):
    c = closure(Family.of([coordinate_space(F2, 5, [0, 1])]), 1, k=3)
    assert c.k == 3 and all(meet_dim(G, coordinate_space(F2, 5, [0, 1])) >= 1 for G in c)


def test_closure_of_empty_family(F2):
    with pytest.raises(EmptyFamily):
        closure(Family(F2, 4, 2, ()), 1)


def test_config_validation():
    with pytest.raises(PreconditionViolated):
        SearchConfig(2, 6, 2, 1, mode="weird")
    with pytest.raises(PreconditionViolated):
        SearchConfig(2, 6, 2, 3)


def test_exhaustive_small_is_deterministic_and_certified():
    cfg = SearchConfig(2, 5, 2, 1, seed_size=2)
    r1, r2 = exhaustive_closed_pairs(cfg), exhaustive_closed_pairs(cfg)
    assert r1.to_json() == r2.to_json()
    F, G = r1.families
    assert len(F) * len(G) == r1.best_product
    assert r1.certificates["cross_intersecting"] and r1.certificates["maximality"]
    assert set(r1.coverage["levels"]) == {"1", "2"} or set(r1.coverage["levels"]) == {1, 2}


def test_exhaustive_nontrivial_each_filters():
    rec = exhaustive_closed_pairs(SearchConfig(2, 5, 2, 1, mode="nontrivial-each", seed_size=2))
    assert all(d < 1 for d in rec.certificates["nontriviality_dims"])


def test_exhaustive_budget_and_seed_size():
    with pytest.raises(BudgetExceeded):
        exhaustive_closed_pairs(SearchConfig(2, 6, 2, 1, seed_size=3, iteration_budget=1000))
    with pytest.raises(EmptyFamily):
        exhaustive_closed_pairs(SearchConfig(2, 5, 2, 1, seed_size=0))


def test_stochastic_is_seeded():
    cfg = SearchConfig(2, 6, 2, 1, mode="nontrivial-each", rng_seed=11, iteration_budget=150)
    a, b = stochastic_improve(cfg), stochastic_improve(cfg)
    assert a.to_json() == b.to_json()
    c = stochastic_improve(SearchConfig(2, 6, 2, 1, mode="nontrivial-each", rng_seed=12, iteration_budget=150))
    assert c.provenance["rng_seed"] == 12


def test_stochastic_start_is_kept_with_zero_budget(F2):
    H2 = construct_h2(coordinate_space(F2, 7, [0, 1, 2]), 3, 2)
    rec = stochastic_improve(SearchConfig(2, 7, 3, 1, mode="nontrivial-each", iteration_budget=0), start=[H2, H2])
    assert rec.best_product == len(H2) ** 2 and rec.families == [H2, H2]


def test_symmetric_search_for_three_families():
    rec = stochastic_improve(SearchConfig(2, 6, 3, 1, r=3, mode="nontrivial-each", rng_seed=1, iteration_budget=200))
    assert len(rec.families) == 3
    if rec.families:
        assert cross_intersecting(rec.families, 1)[0]


def test_record_round_trip_and_tamper_detection():
    rec = exhaustive_closed_pairs(SearchConfig(2, 5, 2, 1, seed_size=2))
    text = rec.to_json()
    back = SearchRecord.from_json(text)
    assert back.to_json() == text
    d = json.loads(text)
    d["best_product"] = str(int(d["best_product"]) + 1)
    with pytest.raises(CertificateError):
        SearchRecord.from_dict(d)
    d = json.loads(text)
    d["certificates"]["maximality"] = not d["certificates"]["maximality"]
    with pytest.raises(CertificateError):
        SearchRecord.from_dict(d)


def test_compare_to_theorem_errors_and_labels():
    rec = exhaustive_closed_pairs(SearchConfig(2, 5, 2, 1, seed_size=2))
    with pytest.raises(UnknownClaim):
        compare_to_theorem(rec, "nope")
    with pytest.raises(HypothesisViolated):
        compare_to_theorem(rec, "HM-pair")
    with pytest.raises(HypothesisViolated):
        compare_to_theorem(rec, "EKR", params={"n": 9})
    rep = compare_to_theorem(rec, "EKR")
    assert rep.status == "exploratory" and not rep.hypotheses_met


def test_hm_r_beyond_k_minus_t_plus_one_claims_nothing(F2):
    Z = coordinate_space(F2, 6, [0, 1, 2])
    H = construct_h2(Z, 2, 2)
    rec = stochastic_improve(SearchConfig(2, 6, 2, 1, r=3, mode="nontrivial-each", iteration_budget=0), start=[H, H, H])
    rep = compare_to_theorem(rec, "HM-r")
    assert rep.claim_value == 0 and rep.notes


def test_structure_matching(F2):
    Z = coordinate_space(F2, 6, [0, 1, 2])
    H2 = construct_h2(Z, 3, 2)
    assert match_hm_structure(H2, H2, 1) == "H2"
    rng = random.Random(0)
    G = grassmannian(2, 6, 3)
    S = Family.of(rng.sample(G.members, 2))
    g = closure(S, 1)
    assert match_hm_structure(closure(g, 1), g, 1) in (None, "H1", "H2")
