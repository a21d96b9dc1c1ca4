"""Linear algebra kernel tests, with brute-force module oracles."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pargal.scalars import (
    QQ,
    Matrix,
    Modular,
    ShapeError,
    canonical_row_form,
    intersect_modules,
    invertible,
    kernel,
    module_contains,
    modules_equal,
    parse_ring,
    ring_idempotents,
    solve,
)


def enumerate_row_module(rows, n, ncols=None):
    """Brute-force row module of a matrix over Z/n as a set of tuples."""
    if not rows:
        return {(0,) * (ncols or 0)}
    ncols = len(rows[0])
    out = set()
    for coeffs in product(range(n), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % n for j in range(ncols))
        out.add(v)
    return out


def test_canonical_identity_over_q():
    m = Matrix.identity(QQ, 3)
    assert canonical_row_form(m) == m


def test_canonical_zero_matrix():
    m = Matrix.zero(QQ, 2, 3)
    assert canonical_row_form(m).nrows == 0
    z6 = Matrix.zero(Modular(6), 2, 3)
    assert canonical_row_form(z6).nrows == 0


def test_canonical_howell_single_row_z6_matches_enumeration():
    ring = Modular(6)
    m = Matrix(ring, [[2, 4]])
    h = canonical_row_form(m)
    assert enumerate_row_module(h.rows, 6) == enumerate_row_module([[2, 4]], 6)
    # canonical: same module in another presentation gives the identical form
    m2 = Matrix(ring, [[4, 2], [2, 4]])
    assert canonical_row_form(m2) == h


def test_canonical_howell_annihilator_row():
    # (2,1) over Z/6 needs the annihilator row 3*(2,1) = (0,3)
    ring = Modular(6)
    h = canonical_row_form(Matrix(ring, [[2, 1]]))
    assert h.rows == [[2, 1], [0, 3]]
    assert enumerate_row_module(h.rows, 6) == enumerate_row_module([[2, 1]], 6)


def test_solve_identity():
    v = [Fraction(1, 2), 3, 0]
    sol = solve(Matrix.identity(QQ, 3), v)
    assert sol is not None
    assert sol.particular == [Fraction(1, 2), 3, 0]
    assert sol.kernel.nrows == 0


def test_solve_mod4_no_solution():
    # 2x = 1 mod 4 has no solution: 2*x only reaches {0, 2}
    assert all((2 * x) % 4 != 1 for x in range(4))
    assert solve(Matrix(Modular(4), [[2]]), [1]) is None


def test_solve_mod4_with_kernel():
    # brute force: {x : 2x = 2 mod 4} = {1, 3}; homogeneous {0, 2}
    assert {x for x in range(4) if (2 * x) % 4 == 2} == {1, 3}
    sol = solve(Matrix(Modular(4), [[2]]), [2])
    assert sol is not None
    assert sol.particular == [1]
    assert sol.kernel.rows == [[2]]


def test_solve_shape_mismatch():
    with pytest.raises(ShapeError):
        solve(Matrix.identity(QQ, 2), [1, 2, 3])


def test_intersect_idempotent():
    u = Matrix(QQ, [[1, 2], [0, 1]])
    assert intersect_modules(u, u) == canonical_row_form(u)


def test_intersect_complementary_lines():
    u = Matrix(QQ, [[1, 0]])
    v = Matrix(QQ, [[0, 1]])
    assert intersect_modules(u, v).nrows == 0


def test_intersect_mod4_matches_bruteforce():
    ring = Modular(4)
    u = [[2, 0], [0, 1]]
    v = [[1, 1]]
    expected = enumerate_row_module(u, 4) & enumerate_row_module(v, 4)
    assert expected == {(0, 0), (2, 2)}
    got = intersect_modules(Matrix(ring, u), Matrix(ring, v))
    assert enumerate_row_module(got.rows, 4) == expected


def test_ring_idempotents_z6():
    assert {x for x in range(6) if (x * x) % 6 == x} == {0, 1, 3, 4}
    assert ring_idempotents(Modular(6)) == [0, 1, 3, 4]


def test_ring_idempotents_fields():
    assert ring_idempotents(Modular(5)) == [0, 1]
    assert ring_idempotents(Modular(2)) == [0, 1]


def test_ring_idempotents_rationals_refused():
    with pytest.raises(ValueError, match=r"infinite ring: idempotents are \{0,1\}"):
        ring_idempotents(QQ)


def test_parse_ring():
    assert parse_ring("Q") == QQ
    assert parse_ring("Z/6") == Modular(6)
    with pytest.raises(ValueError, match="supported rings are Q and Z/n"):
        parse_ring("Z")
    with pytest.raises(ValueError):
        parse_ring("Z/1")


small_mod = st.sampled_from([2, 3, 4, 5, 6, 8, 9])


@st.composite
def modular_matrices(draw, max_rows=3, max_cols=3):
    n = draw(small_mod)
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = st.integers(0, n - 1)
    mat = [[draw(entries) for _ in range(cols)] for _ in range(rows)]
    return n, mat


@given(modular_matrices())
@settings(max_examples=120, deadline=None)
def test_canonical_row_form_is_idempotent_and_faithful(nm):
    n, rows = nm
    ring = Modular(n)
    m = Matrix(ring, rows)
    h = canonical_row_form(m)
    assert canonical_row_form(h) == h
    if n ** len(rows[0]) <= 10 ** 4:
        assert enumerate_row_module(h.rows, n, h.ncols) == enumerate_row_module(rows, n)


@given(modular_matrices(max_rows=2, max_cols=2))
@settings(max_examples=80, deadline=None)
def test_membership_matches_bruteforce(nm):
    n, rows = nm
    ring = Modular(n)
    h = canonical_row_form(Matrix(ring, rows))
    module = enumerate_row_module(rows, n)
    for vec in product(range(n), repeat=len(rows[0])):
        assert module_contains(h, list(vec)) == (vec in module)


@given(modular_matrices())
@settings(max_examples=100, deadline=None)
def test_solve_resubstitution(nm):
    n, rows = nm
    ring = Modular(n)
    a = Matrix(ring, rows)
    # pick rhs in the column space so a solution exists
    x0 = list(range(1, a.ncols + 1))
    b = a.matvec([v % n for v in x0])
    sol = solve(a, b)
    assert sol is not None
    assert a.matvec(sol.particular) == b
    for krow in sol.kernel.rows:
        assert all(v == 0 for v in a.matvec(krow))


@given(modular_matrices(max_rows=2, max_cols=2), modular_matrices(max_rows=2, max_cols=2))
@settings(max_examples=60, deadline=None)
def test_intersection_matches_bruteforce(nm1, nm2):
    n, rows1 = nm1
    _, rows2 = nm2
    rows2 = [r[: len(rows1[0])] for r in rows2]
    if len(rows2[0]) != len(rows1[0]):
        return
    ring = Modular(n)
    got = intersect_modules(Matrix(ring, rows1), Matrix(ring, [[x % n for x in r] for r in rows2]))
    expected = enumerate_row_module(rows1, n) & enumerate_row_module(
        [[x % n for x in r] for r in rows2], n
    )
    assert enumerate_row_module(got.rows, n, got.ncols) == expected


def test_modules_equal_distinguishes():
    ring = Modular(6)
    assert modules_equal(Matrix(ring, [[2, 4]]), Matrix(ring, [[4, 2]]))
    assert not modules_equal(Matrix(ring, [[2, 4]]), Matrix(ring, [[2, 4], [0, 3]]))


def test_kernel_and_invertible():
    ring = Modular(6)
    assert invertible(Matrix(ring, [[5, 0], [1, 1]]))
    assert not invertible(Matrix(ring, [[2, 0], [0, 1]]))
    k = kernel(Matrix(ring, [[2, 0], [0, 1]]))
    assert enumerate_row_module(k.rows, 6) == {(0, 0), (3, 0)}
