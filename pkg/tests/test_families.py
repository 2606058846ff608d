import json

import pytest

from qcross.errors import EmptyFamily, FormatError, NoCoverWithinBound, PreconditionViolated
from qcross.families import (
    Family,
    common_intersection,
    construct_h1,
    construct_h2,
    covering_number,
    cross_intersecting,
    full_family,
    intersection_profile,
    is_t_cover,
    is_t_intersecting,
    load_family,
    min_r_wise_intersection,
    nontriviality_dim,
    restrict_containing,
    save_family,
    trivial_family,
)
from qcross.gf import field_new
from qcross.grassmann import (
    contains,
    coordinate_space,
    enumerate_grassmannian,
    from_text,
    meet_dim,
    whole_space,
)
from qcross.qbinom import gauss_binom, h1_size
from qcross.verify import count_flags, double_counting_sides


def test_members_are_deduplicated_and_sorted(F2):
    a, b = from_text(F2, "1000;0100"), from_text(F2, "0010;0001")
    fam = Family.of([b, a, b])
    assert fam.members == (b, a) and len(fam) == 2
    assert a in fam and Family.of([a]) <= fam


def test_wrong_dimension_member_rejected(F2):
    with pytest.raises(PreconditionViolated):
        Family(F2, 4, 2, (from_text(F2, "1000"),))
    with pytest.raises(EmptyFamily):
        Family.of([])


def test_family_file_round_trip(tmp_path, F3):
    fam = trivial_family(coordinate_space(F3, 4, [0]), 2)
    path = tmp_path / "f.json"
    save_family(fam, path)
    assert load_family(path) == fam
    d = json.loads(path.read_text())
    assert (d["q"], d["n"], d["k"]) == (3, 4, 2) and len(d["members"]) == len(fam)
    save_family(load_family(path), tmp_path / "g.json")
    assert (tmp_path / "g.json").read_text() == path.read_text()


def test_family_file_errors(F2):
    with pytest.raises(FormatError):
        Family.from_json("{not json")
    with pytest.raises(FormatError):
        Family.from_dict({"q": 2, "n": 3})
    with pytest.raises(FormatError) as e:
        Family.from_dict({"q": 2, "n": 3, "k": 1, "members": ["100", "1x0"]})
    assert "member 1" in str(e.value)
    with pytest.raises(FormatError):
        Family.from_dict({"q": 2, "n": 3, "k": 2, "members": ["100"]})


def test_trivial_family(F2):
    T = coordinate_space(F2, 5, [0])
    fam = trivial_family(T, 2)
    assert len(fam) == gauss_binom(4, 1, 2)
    assert common_intersection(fam) == T
    assert covering_number(fam, 1).tau == 1 and covering_number(fam, 1).witness == T
    assert is_t_intersecting(fam, 1)


def test_h1_pair_cross_intersects(F2):
    M = coordinate_space(F2, 7, [0, 1, 2, 3])
    L = coordinate_space(F2, 7, [0, 1, 2, 4])
    T = coordinate_space(F2, 7, [0])
    F, G = construct_h1(L, M, T, 3, 1), construct_h1(M, L, T, 3, 1)
    assert len(F) == len(G) == h1_size(7, 3, 1, 2)
    assert cross_intersecting([F, G], 1)[0]


def test_h1_rejects_bad_inputs(F2):
    M = coordinate_space(F2, 6, [0, 1, 2, 3])
    with pytest.raises(PreconditionViolated):
        construct_h1(M, M, coordinate_space(F2, 6, [5]), 3, 1)
    with pytest.raises(PreconditionViolated):
        construct_h1(M, M, coordinate_space(F2, 6, [0, 1]), 3, 1)
    with pytest.raises(PreconditionViolated):
        construct_h1(coordinate_space(F2, 6, [0, 1, 2]), M, coordinate_space(F2, 6, [0]), 3, 1)


def test_h1_large_ambient_fallback_agrees():
    # q^n beyond the mask limit takes the enumeration path
    f = field_new(5)
    M, T = coordinate_space(f, 7, [0, 1, 2]), coordinate_space(f, 7, [0])
    assert len(construct_h1(M, M, T, 2, 1)) == h1_size(7, 2, 1, 5)


def test_h2_non_trivial(F2):
    Z = coordinate_space(F2, 7, [0, 1, 2])
    H2 = construct_h2(Z, 3, 2)
    assert nontriviality_dim(H2) < 1
    assert is_t_intersecting(H2, 1)
    with pytest.raises(PreconditionViolated):
        construct_h2(Z, 3, 4)


def test_min_r_wise_exact_and_sampled(F2):
    fam = full_family(F2, 4, 2)
    res = min_r_wise_intersection([fam, fam])
    assert res.exact and res.min_dim == 0 and meet_dim(*res.witness) == 0
    sampled = min_r_wise_intersection([fam, fam, fam], sample_budget=100, seed=5)
    assert sampled.partial and sampled.tuples_checked == 100
    again = min_r_wise_intersection([fam, fam, fam], sample_budget=100, seed=5)
    assert again.witness == sampled.witness


def test_cross_intersecting_witness(F2):
    A = trivial_family(coordinate_space(F2, 5, [0]), 2)
    B = trivial_family(coordinate_space(F2, 5, [1]), 2)
    ok, wit = cross_intersecting([A, B], 1)
    assert not ok and meet_dim(*wit) == 0 and wit[0] in A and wit[1] in B
    with pytest.raises(EmptyFamily):
        cross_intersecting([A, A.with_members([])], 1)


def test_cover_predicate(F2):
    T = coordinate_space(F2, 5, [0, 1])
    fam = trivial_family(T, 3)
    assert is_t_cover(whole_space(F2, 5), fam, 2)
    assert is_t_cover(T, fam, 2)
    assert not is_t_cover(coordinate_space(F2, 5, [0]), fam, 2)
    with pytest.raises(EmptyFamily):
        is_t_cover(T, fam.with_members([]), 1)


def test_covering_number_certificates(F2):
    Z = coordinate_space(F2, 6, [0, 1, 2])
    rep = covering_number(construct_h2(Z, 3, 2), 1)
    assert rep.tau == 2
    assert rep.rejected == {1: gauss_binom(6, 1, 2)}
    assert len(rep.cover_set) == 7 and all(contains(Z, c) for c in rep.cover_set)
    assert rep.spanned == Z
    with pytest.raises(NoCoverWithinBound):
        covering_number(construct_h2(Z, 3, 2), 1, max_dim=1)


def test_restrict_containing(F2):
    fam = full_family(F2, 4, 2)
    S = coordinate_space(F2, 4, [0])
    assert len(restrict_containing(fam, S)) == gauss_binom(3, 1, 2)


def test_intersection_profile_edges(F2):
    T = coordinate_space(F2, 5, [0])
    assert intersection_profile(coordinate_space(F2, 5, [0, 1, 2]), T, 1) == {1: 1}
    prof = intersection_profile(whole_space(F2, 5), T, 3)
    assert prof == {1: 0, 2: 0, 3: gauss_binom(4, 2, 2)}
    with pytest.raises(PreconditionViolated):
        intersection_profile(T, coordinate_space(F2, 5, [1]), 2)


def test_double_counting_identity_small(F2):
    M, T = coordinate_space(F2, 6, [0, 1, 2, 3]), coordinate_space(F2, 6, [0])
    prof = intersection_profile(M, T, 3)
    assert sum(prof.values()) == gauss_binom(5, 2, 2)
    for j, (lhs, rhs) in double_counting_sides(M, T, 3, prof).items():
        assert lhs == rhs == count_flags(M, T, j, 3)


def test_full_family_size(F3):
    assert len(full_family(F3, 4, 2)) == gauss_binom(4, 2, 3)
    assert set(full_family(F3, 3, 1)) == set(enumerate_grassmannian(F3, 3, 1))
