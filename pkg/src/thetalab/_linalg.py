"""Exact dense Gaussian elimination over Q (Fraction) and F_p (int mod p).

Matrices are lists of row lists.  All routines are deterministic: pivots are
chosen as the first nonzero entry in column order, so bases come out in
reduced row echelon form with free variables set to one in index order.
"""

from __future__ import annotations

from fractions import Fraction


class FpOps:
    """Field operations for the prime field of order p."""

    def __init__(self, p: int):
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def of_int(self, n: int):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("no inverse mod p")
        return pow(x, self.p - 2, self.p)

    def is_zero(self, x) -> bool:
        return x % self.p == 0


class QOps:
    """Field operations for the rationals (exact Fractions)."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of_int(self, n: int):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("no inverse of 0")
        return 1 / Fraction(x)

    def is_zero(self, x) -> bool:
        return x == 0


def rref(rows, ops):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    if not rows:
        return [], []
    m, n = len(rows), len(rows[0])
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if not ops.is_zero(a[i][c])), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = ops.inv(a[r][c])
        a[r] = [ops.mul(inv, x) for x in a[r]]
        for i in range(m):
            if i != r and not ops.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows, ops) -> int:
    return len(rref(rows, ops)[1])


def nullspace(rows, ops, ncols=None):
    """Basis of the right kernel {x : A x = 0}, one vector per free column."""
    if not rows:
        return [] if not ncols else [
            [ops.one() if i == j else ops.zero() for i in range(ncols)]
            for j in range(ncols)
        ]
    n = len(rows[0])
    red, pivots = rref(rows, ops)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ops.zero()] * n
        v[fc] = ops.one()
        for r, pc in enumerate(pivots):
            v[pc] = ops.neg(red[r][fc])
        basis.append(v)
    return basis


def solve(rows, rhs, ops):
    """One exact solution of A x = b (free variables zero), or None."""
    if not rows:
        return None
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ops)
    if n in pivots:
        return None  # inconsistent: pivot in the augmented column
    x = [ops.zero()] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def in_span(rows, vec, ops) -> bool:
    """Whether vec lies in the row span of rows."""
    if not rows:
        return all(ops.is_zero(x) for x in vec)
    cols = list(zip(*rows))
    a = [list(c) for c in cols]
    return solve(a, list(vec), ops) is not None
