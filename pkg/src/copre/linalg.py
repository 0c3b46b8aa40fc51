"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (arbitrary precision, always stored
reduced with positive denominator, which is exactly the invariant we need).
Matrices are immutable and dense; elimination is fraction-free in the
Bareiss style on an integer-rescaled copy, with divisions deferred to a
single back-substitution pass.  Everything is exact: no tolerances anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(s) -> Fraction:
    """Parse "p/q" or "p" (also accepts ints for convenience)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not a rational literal: {s!r}")


def format_rational(q: Fraction) -> str:
    """Inverse of parse_rational: "p" for integers, "p/q" otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors (plain tuples of Fraction) --------------------------------------

def vzero(n):
    return (ZERO,) * n


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def viszero(u):
    return all(a == 0 for a in u)


def mat_vec(rows, v):
    return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in rows)


def mat_mul(a, b):
    bt = tuple(zip(*b)) if b else ()
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def identity_rows(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


class ExactMatrix:
    """Dense rational matrix; immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(Fraction(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, row_list):
        row_list = [tuple(r) for r in row_list]
        cols = len(row_list[0]) if row_list else 0
        flat = [e for r in row_list for e in r]
        return cls(len(row_list), cols, flat)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def row(self, i):
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def row_tuples(self):
        return tuple(self.row(i) for i in range(self.rows))

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return mat_vec(self.row_tuples(), v)

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _integer_rows(m: ExactMatrix, extra=None):
    """Rescale each row (with optional augmented entry) to integers.

    Row scaling by positive factors changes neither rank, kernel, nor the
    solution set of [m | extra].
    """
    out = []
    for i in range(m.rows):
        row = list(m.row(i))
        if extra is not None:
            row.append(extra[i])
        scale = 1
        for e in row:
            scale = scale * e.denominator // gcd(scale, e.denominator)
        out.append([int(e * scale) for e in row])
    return out


def _exact_div(a, b):
    q, rem = divmod(a, b)
    assert rem == 0, "Bareiss division must be exact"
    return q


def _bareiss_echelon(rows, ncols):
    """Fraction-free forward elimination.

    Returns (echelon rows as ints, pivot column list).  All divisions are
    exact by Sylvester's identity, which keeps intermediate entries at the
    size of minors of the input.
    """
    nrows = len(rows)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ric = rows[i][c]
            # the ric == 0 case still rescales by piv/prev so that later
            # divisions stay exact
            for j in range(c + 1, len(rows[i])):
                rows[i][j] = _exact_div(piv * rows[i][j] - ric * rows[r][j], prev)
            rows[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref(m: ExactMatrix, extra=None):
    """Reduced row echelon form via Bareiss + back-substitution.

    Returns (rref rows over Fraction, pivot columns).  When ``extra`` is
    given it is carried as an extra (augmented) column.
    """
    ncols = m.cols + (1 if extra is not None else 0)
    rows, pivots = _bareiss_echelon(_integer_rows(m, extra), m.cols)
    rank = len(pivots)
    work = [[Fraction(e) for e in rows[i]] for i in range(rank)]
    # rows below the rank are zero in all matrix columns; their augmented
    # entries are the inconsistency residues
    if extra is not None:
        residue = [Fraction(rows[i][-1]) for i in range(rank, len(rows))]
    else:
        residue = []
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        piv = work[r][c]
        work[r] = [e / piv for e in work[r]]
        for r2 in range(r):
            factor = work[r2][c]
            if factor != 0:
                work[r2] = [a - factor * b for a, b in zip(work[r2], work[r])]
    return work, pivots, residue


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    _, pivots = _bareiss_echelon(_integer_rows(m), m.cols)
    return len(pivots)


def kernel_basis(m: ExactMatrix):
    """Basis of the right kernel {v : m v = 0}.

    One basis vector per free column, normalized so the free coordinate is 1
    and every other free coordinate is 0 (reduced echelon convention).
    """
    work, pivots, _ = _rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -work[r][free]
        basis.append(tuple(v))
    return basis


def solve(m: ExactMatrix, b):
    """Some x with m x = b, or None if the system is inconsistent.

    The canonical solution sets all free variables to 0 after full reduction,
    so a given (m, b) always yields the same x.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length must match row count")
    b = tuple(Fraction(e) for e in b)
    work, pivots, residue = _rref(m, extra=b)
    # inconsistent iff an eliminated row has zero coefficients but nonzero rhs
    if any(e != 0 for e in residue):
        return None
    x = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        x[c] = work[r][-1]
    return tuple(x)
