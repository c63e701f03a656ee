import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jacring.errors import NotInRing
from jacring.lattice import hnf, solve_integer

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def matmul(U, M):
    return [[sum(U[i][k] * M[k][j] for k in range(len(M))) for j in range(len(M[0]))] for i in range(len(U))]


def det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n))


@given(matrices)
@settings(max_examples=150)
def test_hnf_shape(M):
    H, U, piv = hnf(M)
    assert matmul(U, M) == H
    assert abs(det(U)) == 1
    for i, c in enumerate(piv):
        assert H[i][c] > 0
        assert all(H[i][j] == 0 for j in range(c))
        assert all(0 <= H[k][c] < H[i][c] for k in range(i))
    assert all(not any(r) for r in H[len(piv):])
    assert piv == sorted(piv)


def brute_force_solvable(rows, target, box=6):
    for x in itertools.product(range(-box, box + 1), repeat=len(rows)):
        if all(sum(xi * r[j] for xi, r in zip(x, rows)) == t for j, t in enumerate(target)):
            return True
    return False


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
@settings(max_examples=150)
def test_solve_integer_against_brute_force(rows, target):
    try:
        x = solve_integer(rows, target)
    except NotInRing as exc:
        assert exc.obstruction is not None
        # small boxes only: a solution with huge entries would still be missed,
        # so only check the direction that cannot be fooled
        assert not brute_force_solvable(rows, target, box=4)
        return
    assert [sum(xi * r[j] for xi, r in zip(x, rows)) for j in range(3)] == target


def test_index_two_sublattice_obstruction():
    with pytest.raises(NotInRing):
        solve_integer([[2, 0], [0, 2]], [1, 0])
    assert solve_integer([[2, 0], [0, 2]], [4, -2]) == [2, -1]
