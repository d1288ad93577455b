"""Exact linear algebra over k[t] for square polynomial matrices.

Entries are the dense int-list polynomials of ``funcfield``; the row
reduction works on numpy buffers internally.  Row reduction is the
iterative weak-Popov pivot cancellation (shifts are virtual column
weights, never materialized), determinants go through fraction-free
Bareiss elimination, and the degree-bounded inverse is Cramer's rule
with every exact-division and degree promise checked.
"""

import math

import numpy as np

from .errors import InvalidInput, SingularMatrix, ContractViolation
from .field_tower import pnormalize, pdeg, psub, pscale, pdivmod
from .funcfield import amul

NEG_INF = -math.inf


class PolyMatrix:
    """Square matrix over k[t]; entries canonical (no trailing zeros)."""

    __slots__ = ("F", "n", "rows")

    def __init__(self, F, rows):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInput("matrix must be square")
        self.F = F
        self.n = n
        self.rows = [[pnormalize(F, list(e)) for e in row] for row in rows]

    @classmethod
    def identity(cls, F, n):
        return cls(F, [[[F.one] if i == j else [] for j in range(n)]
                       for i in range(n)])

    @classmethod
    def diagonal(cls, F, entries):
        n = len(entries)
        return cls(F, [[list(entries[i]) if i == j else [] for j in range(n)]
                       for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and other.F == self.F
                and other.rows == self.rows)

    def __repr__(self):
        return f"PolyMatrix({self.n}x{self.n})"

    def copy(self):
        return PolyMatrix(self.F, self.rows)

    def degree(self):
        return max((pdeg(e) for row in self.rows for e in row if e), default=NEG_INF)

    def row_degrees(self, shift=None):
        """rdeg, shifted: deg(entry) + shift[col]; -inf rows for zero rows."""
        out = []
        for row in self.rows:
            d = NEG_INF
            for j, e in enumerate(row):
                if e:
                    dj = pdeg(e) + (shift[j] if shift else 0)
                    if dj > d:
                        d = dj
            out.append(d)
        return out

    def matmul(self, other):
        if not isinstance(other, PolyMatrix) or other.n != self.n or other.F != self.F:
            raise InvalidInput("matrix dimension/field mismatch")
        F, n = self.F, self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = []
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = _padd(F, acc, amul(F, a, b))
                row.append(acc)
            out.append(row)
        return PolyMatrix(F, out)

    def __matmul__(self, other):
        return self.matmul(other)

    def scale(self, c):
        """Multiply every entry by the k[t]-polynomial c."""
        return PolyMatrix(self.F, [[amul(self.F, c, e) for e in row]
                                   for row in self.rows])

    def shift_t(self, k):
        """Multiply every entry by t^k."""
        return PolyMatrix(self.F, [[([0] * k + e) if e else [] for e in row]
                                   for row in self.rows])

    def exact_div_tk(self, k):
        """Divide every entry by t^k; every entry must be divisible."""
        out = []
        for row in self.rows:
            new = []
            for e in row:
                if e:
                    if len(e) <= k or any(e[:k]):
                        raise ContractViolation("inexact division by t^k")
                    new.append(e[k:])
                else:
                    new.append([])
            out.append(new)
        return PolyMatrix(self.F, out)

    def determinant(self):
        """Fraction-free Bareiss elimination."""
        F, n = self.F, self.n
        m = [[list(e) for e in row] for row in self.rows]
        sign = 1
        prev = [F.one]
        for k in range(n - 1):
            if not m[k][k]:
                pivot_row = next((i for i in range(k + 1, n) if m[i][k]), None)
                if pivot_row is None:
                    return []
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = psub(F, amul(F, m[i][j], m[k][k]),
                               amul(F, m[i][k], m[k][j]))
                    q, r = pdivmod(F, num, prev) if num else ([], [])
                    assert not r, "Bareiss division not exact"
                    m[i][j] = q
                m[i][k] = []
            prev = m[k][k]
        det = m[n - 1][n - 1]
        return pscale(F, F.neg(F.one), det) if sign < 0 else det

    def is_row_reduced(self, shift=None):
        """Lemma: row reduced iff deg det = |rdeg| (shifted variant by
        weighting columns with t^shift)."""
        rd = self.row_degrees(shift)
        if any(d == NEG_INF for d in rd):
            return False
        det = self.determinant()
        if not det:
            return False
        tot = pdeg(det) + (sum(shift) if shift else 0)
        return tot == sum(rd)

    def transpose(self):
        return PolyMatrix(self.F, [[self.rows[j][i] for j in range(self.n)]
                                   for i in range(self.n)])


def _padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return pnormalize(F, out)


# ----------------------------------------------------------------------
# weak-Popov row reduction with transform recovery
# ----------------------------------------------------------------------

def _np_trim(arr):
    nz = np.nonzero(arr)[0]
    return arr[:nz[-1] + 1] if nz.size else arr[:0]


def _np_deg(arr):
    return arr.size - 1 if arr.size else NEG_INF


def _row_op(p, target, source, c, k):
    """target -= c * t^k * source, entrywise over a row (numpy arrays)."""
    out = []
    for tgt, src in zip(target, source):
        if src.size == 0:
            out.append(tgt)
            continue
        width = max(tgt.size, src.size + k)
        buf = np.zeros(width, dtype=np.int64)
        buf[:tgt.size] = tgt
        buf[k:k + src.size] = (buf[k:k + src.size] - c * src) % p
        buf %= p
        out.append(_np_trim(buf))
    return out


def _pivot(row, shift):
    """(pivot column, shifted row degree); rightmost column attaining max."""
    best_j, best_d = -1, NEG_INF
    for j, e in enumerate(row):
        if e.size:
            d = _np_deg(e) + (shift[j] if shift else 0)
            if d >= best_d:
                best_j, best_d = j, d
    return best_j, best_d


def row_reduce(E, shift=None):
    """(R, U) with R = U·E row reduced (shifted sense), U unimodular.

    E must be nonsingular; a zero row during elimination raises
    SingularMatrix.  Pivot selection: the lowest row index keeps its
    pivot, colliding higher-degree rows are cancelled against it.
    """
    F, n = E.F, E.n
    p = F.p
    if shift is not None and len(shift) != n:
        raise InvalidInput("shift vector has wrong length")
    work = [[np.asarray(e, dtype=np.int64) if e else np.zeros(0, dtype=np.int64)
             for e in row] for row in E.rows]
    uni = [[np.asarray([1], dtype=np.int64) if i == j else np.zeros(0, dtype=np.int64)
            for j in range(n)] for i in range(n)]

    while True:
        pivots = {}
        collision = None
        for i in range(n):
            j, d = _pivot(work[i], shift)
            if j < 0:
                raise SingularMatrix("zero row produced during reduction")
            if j in pivots:
                collision = (pivots[j], i, j)
                break
            pivots[j] = i
        if collision is None:
            break
        i1, i2, j = collision
        d1 = _np_deg(work[i1][j])
        d2 = _np_deg(work[i2][j])
        # cancel the higher actual degree against the lower; lowest row
        # index wins ties
        if d1 > d2:
            hi, lo = i1, i2
        else:
            hi, lo = i2, i1
        k = _np_deg(work[hi][j]) - _np_deg(work[lo][j])
        c = (int(work[hi][j][-1]) * pow(int(work[lo][j][-1]), p - 2, p)) % p
        work[hi] = _row_op(p, work[hi], work[lo], c, k)
        uni[hi] = _row_op(p, uni[hi], uni[lo], c, k)

    R = PolyMatrix(F, [[e.tolist() for e in row] for row in work])
    U = PolyMatrix(F, [[e.tolist() for e in row] for row in uni])
    return R, U


def inverse_row_reduced(Fm, d):
    """t^d * Fm^{-1}, given the promise it is polynomial of degree <= d.

    Fm must be row reduced with deg Fm <= d.  Checked post hoc: the
    output X satisfies Fm @ X == t^d * I exactly, else ContractViolation.
    """
    F, n = Fm.F, Fm.n
    det = Fm.determinant()
    if not det:
        raise SingularMatrix("matrix is singular")
    # Cramer: X[i][j] = t^d * (-1)^(i+j) det(minor_ji) / det
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[Fm.rows[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            md = PolyMatrix(F, minor).determinant() if n > 1 else [F.one]
            if (i + j) % 2:
                md = pscale(F, F.neg(F.one), md)
            num = ([0] * d + md) if md else []
            if not num:
                out[i][j] = []
                continue
            q, r = pdivmod(F, num, det)
            if r:
                raise ContractViolation("t^d F^{-1} is not polynomial")
            if pdeg(q) > d:
                raise ContractViolation("t^d F^{-1} exceeds degree d")
            out[i][j] = q
    X = PolyMatrix(F, out)
    check = Fm @ X
    tdI = PolyMatrix.identity(F, n).shift_t(d)
    if check != tdI:
        raise ContractViolation("inverse verification failed")
    return X
