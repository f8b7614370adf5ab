"""Dense Gaussian elimination over a prime field or the rationals.

Pivot rule everywhere: scan columns left to right and take the first row (at
or below the current pivot row) with a nonzero entry.  For primes below 2**31
the elimination is vectorised with int64 numpy arrays; every product of two
reduced residues then stays below 2**62.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .fields import Field

_INT64_PRIME_LIMIT = 1 << 31


def _use_numpy(field: Field) -> bool:
    return not field.is_rational and field.p <= _INT64_PRIME_LIMIT


def _echelon_numpy(rows, ncols: int, p: int, reduced: bool):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        col = A[:, c] if reduced else A[r + 1 :, c]
        idx = np.flatnonzero(col)
        if not reduced:
            idx += r + 1
        else:
            idx = idx[idx != r]
        if idx.size:
            f = A[idx, c]
            A[idx, c:] = (A[idx, c:] - f[:, None] * A[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _echelon_python(rows, ncols: int, field: Field, reduced: bool):
    A = [[field(x) for x in row] for row in rows]
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(x, inv) for x in A[r]]
        pivot_row = A[r]
        for i in range(m):
            if i == r or (not reduced and i < r):
                continue
            f = A[i][c]
            if f != 0:
                A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], pivot_row)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    """Exact rank of the matrix given by ``rows`` (each of length ``ncols``)."""
    if not rows or ncols == 0:
        return 0
    if _use_numpy(field):
        return len(_echelon_numpy(rows, ncols, field.p, reduced=False)[1])
    return len(_echelon_python(rows, ncols, field, reduced=False)[1])


def rref(rows: Sequence[Sequence], ncols: int, field: Field):
    """Reduced row echelon form: (nonzero rows as lists, pivot columns)."""
    if not rows or ncols == 0:
        return [], []
    if _use_numpy(field):
        A, pivots = _echelon_numpy(rows, ncols, field.p, reduced=True)
        return [[int(x) for x in A[i]] for i in range(len(pivots))], pivots
    A, pivots = _echelon_python(rows, ncols, field, reduced=True)
    return A[: len(pivots)], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list:
    """Kernel basis read off the RREF: one vector per free column, 1 in that column."""
    R, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.neg(field(R[i][free]))
        basis.append(v)
    return basis


def mat_vec(rows: Sequence[Sequence], vec: Sequence, field: Field) -> list:
    out = []
    for row in rows:
        acc = field.zero
        for a, b in zip(row, vec):
            if a and b:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out
