from fractions import Fraction

from hypothesis import given, strategies as st

from foxcalc.lattice import hermite_normal_form, lattice_contains
from foxcalc.linalg import (
    SpanSolver,
    in_span,
    intersect_rowspaces,
    nullspace,
    rank,
    reduce_vector,
    rref,
)


def frac_matrix(rows, cols):
    return st.lists(
        st.lists(
            st.integers(-4, 4).map(Fraction), min_size=cols, max_size=cols
        ),
        min_size=rows,
        max_size=rows,
    )


@given(frac_matrix(4, 3))
def test_rref_idempotent(m):
    r = rref(m)
    assert rref(list(r)) == r


@given(frac_matrix(3, 4))
def test_rows_in_own_span(m):
    r = rref(m)
    for row in m:
        assert in_span(row, r)


@given(frac_matrix(3, 4))
def test_nullspace_kernel(m):
    for v in nullspace(m):
        for row in m:
            assert sum(a * b for a, b in zip(row, v)) == 0
    assert len(nullspace(m)) == 4 - rank(m)


@given(frac_matrix(3, 4), frac_matrix(3, 4))
def test_intersection_contained_in_both(m1, m2):
    inter = intersect_rowspaces(rref(m1), rref(m2))
    for row in inter:
        assert in_span(row, rref(m1))
        assert in_span(row, rref(m2))


@given(frac_matrix(3, 4))
def test_reduce_vector_fixed_point(m):
    r = rref(m)
    for row in m:
        assert all(c == 0 for c in reduce_vector(row, r))


@given(frac_matrix(3, 4))
def test_span_solver_coordinates(m):
    solver = SpanSolver(m)
    for row in m:
        coords = solver.coords(row)
        assert coords is not None
        rebuilt = [Fraction(0)] * 4
        for k, c in enumerate(coords):
            for i in range(4):
                rebuilt[i] += c * m[k][i]
        assert list(rebuilt) == list(map(Fraction, row))


@given(
    st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(-3, 3), min_size=1, max_size=4),
)
def test_lattice_contains_combinations(rows, comb):
    h = hermite_normal_form(rows)
    v = [0, 0, 0]
    for c, row in zip(comb, rows):
        v = [a + c * b for a, b in zip(v, row)]
    assert lattice_contains(h, v)
    for row in rows:
        assert lattice_contains(h, row)


def test_lattice_membership_negative():
    h = hermite_normal_form([[2, 0], [0, 2]])
    assert lattice_contains(h, [4, 2])
    assert not lattice_contains(h, [1, 0])
    assert not lattice_contains(h, [2, 1])


def test_hnf_shape():
    h = hermite_normal_form([[0, 0, 0], [3, 3, 3], [6, 0, 0]])
    pivots = [next(k for k, x in enumerate(r) if x) for r in h]
    assert pivots == sorted(pivots)
    assert all(r[p] > 0 for r, p in zip(h, pivots))
