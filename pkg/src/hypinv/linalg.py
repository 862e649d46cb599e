"""Gaussian elimination over a finite field (rows are lists of encoded ints)."""

from __future__ import annotations

from .ff import GF


def row_echelon(F: GF, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][col])
        m[r] = [F.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [F.sub(v, F.mul(c, w)) for v, w in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(F: GF, rows: list[list[int]], ncols: int) -> int:
    return len(row_echelon(F, rows, ncols)[1])


def nullspace(F: GF, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """A basis of {v : rows . v = 0}, one vector per free column."""
    ech, pivots = row_echelon(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(ech, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis
