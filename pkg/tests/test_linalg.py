import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcross.errors import DimensionMismatch
from qcross.gf import field_new
from qcross.linalg import MatrixGF, nullspace_rows, rank, row_space_contains, rref


def matrices(q_choices=(2, 3, 4, 5)):
    @st.composite
    def build(draw):
        q = draw(st.sampled_from(q_choices))
        r = draw(st.integers(1, 5))
        c = draw(st.integers(1, 6))
        rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
        return MatrixGF.from_rows(field_new(q), rows)

    return build()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent_and_rank_preserving(m):
    r1, k1, piv1 = rref(m)
    r2, k2, piv2 = rref(r1)
    assert r1 == r2 and k1 == k2 and piv1 == piv2
    assert rank(m) == k1 <= min(m.rows, m.cols)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_shape(m):
    r, k, piv = rref(m)
    f = m.field
    for i, p in enumerate(piv):
        assert r.entries[i][p] == 1
        assert all(r.entries[j][p] == 0 for j in range(r.rows) if j != i)
        assert all(v == 0 for v in r.entries[i][:p])
    assert piv == sorted(piv)
    assert all(all(v == 0 for v in row) for row in r.entries[k:])
    for row in m.entries:
        assert row_space_contains(r, row)
    del f


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_nullspace_dimension_and_orthogonality(m):
    f = m.field
    ns = nullspace_rows(f, m.entries, m.cols)
    assert len(ns) + rank(m) == m.cols
    for v in ns:
        for row in m.entries:
            acc = 0
            for a, b in zip(row, v):
                acc = f.add(acc, f.mul(a, b))
            assert acc == 0


def test_identity_and_zero():
    f = field_new(7)
    assert rank(MatrixGF.identity(f, 4)) == 4
    assert rank(MatrixGF.zeros(f, 3, 5)) == 0


def test_entries_validated():
    with pytest.raises(ValueError):
        MatrixGF.from_rows(field_new(2), [[0, 2]])


def test_contains_dimension_mismatch():
    m = MatrixGF.identity(field_new(2), 3)
    with pytest.raises(DimensionMismatch):
        row_space_contains(m, [1, 0])
