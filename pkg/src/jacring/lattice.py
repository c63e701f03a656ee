"""Integer linear algebra: row Hermite normal form and integer solving."""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInRing


def hnf(rows: list[list[int]]):
    """Row-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``U`` unimodular, ``U @ M = H``, the
    nonzero rows of ``H`` first, each pivot positive, and the entries above a
    pivot reduced into ``[0, pivot)``.  ``pivots[i]`` is the pivot column of
    row ``i``.
    """
    H = [[int(x) for x in r] for r in rows]
    r = len(H)
    c = len(H[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    pivots: list[int] = []
    top = 0
    for col in range(c):
        if top >= r:
            break
        # gcd-reduce the column below ``top`` into a single nonzero entry
        while True:
            nz = [i for i in range(top, r) if H[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][col]))
            if p != top:
                H[p], H[top] = H[top], H[p]
                U[p], U[top] = U[top], U[p]
            done = True
            for i in range(top + 1, r):
                if H[i][col]:
                    q = H[i][col] // H[top][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[top])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[top])]
                    if H[i][col]:
                        done = False
            if done:
                break
        if not H[top][col]:
            continue
        if H[top][col] < 0:
            H[top] = [-a for a in H[top]]
            U[top] = [-a for a in U[top]]
        piv = H[top][col]
        for i in range(top):
            q = H[i][col] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[top])]
                U[i] = [a - q * b for a, b in zip(U[i], U[top])]
        pivots.append(col)
        top += 1
    return H, U, pivots


def solve_integer(rows: list[list[int]], target: list[int]) -> list[int]:
    """Integer ``x`` with ``sum_i x[i] * rows[i] == target``.

    Raises :class:`NotInRing` carrying the obstruction (the residual vector
    left after reduction) when no integer solution exists.
    """
    target = [Fraction(t) for t in target]
    if any(t.denominator != 1 for t in target):
        raise NotInRing("target has non-integral entries", obstruction=[str(t) for t in target])
    target = [int(t) for t in target]
    if not rows:
        if any(target):
            raise NotInRing("nothing to combine", obstruction=target)
        return []
    H, U, pivots = hnf(rows)
    resid = list(target)
    y = [0] * len(rows)
    for i, col in enumerate(pivots):
        piv = H[i][col]
        if resid[col] % piv:
            raise NotInRing(
                f"column {col} needs {resid[col]}/{piv}, not an integer", obstruction=resid
            )
        y[i] = resid[col] // piv
        if y[i]:
            resid = [a - y[i] * b for a, b in zip(resid, H[i])]
    if any(resid):
        raise NotInRing("target is outside the span", obstruction=resid)
    n = len(rows)
    return [sum(y[i] * U[i][k] for i in range(n)) for k in range(n)]
