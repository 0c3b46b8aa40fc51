"""Multilinear cochains and the graded bracket that controls pre-Lie structures.

An arity-n cochain on a d-dimensional space is a multilinear map that is
alternating in its first n-1 arguments, stored sparsely by coefficients on
the canonical basis: keys are (S, j) with S a strictly increasing (n-1)-tuple
of basis indices and j a free last index.  The circle product of two cochains
is a signed sum over unshuffles; the graded commutator of the circle product
makes the whole graded space a graded Lie algebra whose square-zero degree-1
elements are exactly the pre-Lie products.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .linalg import ONE, ZERO, vadd, vscale, vzero


class Unshuffle(NamedTuple):
    """A permutation increasing on each block of the declared split."""

    parts: tuple
    perm: tuple   # perm[k] = sigma(k+1)-1, i.e. 0-based image sequence
    sign: int


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def unshuffles(parts):
    """All unshuffles of {1..n} for the given split, with signs.

    Blocks of length 0 contribute no symbols; a negative block length makes
    the whole family empty (so signed sums over it vanish).  The count is the
    multinomial coefficient of the split.
    """
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        return []
    n = sum(parts)
    out = []

    def place(remaining, blocks_left, acc):
        if not blocks_left:
            perm = tuple(i for block in acc for i in block)
            out.append(Unshuffle(parts, perm, _perm_sign(perm)))
            return
        size = blocks_left[0]
        for chosen in combinations(remaining, size):
            rest = tuple(i for i in remaining if i not in chosen)
            place(rest, blocks_left[1:], acc + [chosen])

    place(tuple(range(n)), list(parts), [])
    return out


def sort_with_sign(idxs):
    """Sort basis indices, tracking the permutation sign; 0 on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idxs)):
        if idxs[i - 1] == idxs[i]:
            return 0, ()
    return sign, tuple(idxs)


class Cochain:
    """Coefficients of a multilinear alternating-up-front map.

    coeffs maps (S, j) -> tuple of length target_dim; zero values are dropped.
    """

    __slots__ = ("arity", "source_dim", "target_dim", "coeffs")

    def __init__(self, arity, source_dim, target_dim, coeffs=None):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        clean = {}
        for (S, j), val in (coeffs or {}).items():
            S = tuple(S)
            if len(S) != arity - 1:
                raise ValueError(f"key {S} has wrong length for arity {arity}")
            if any(not (0 <= s < source_dim) for s in S) or not (0 <= j < source_dim):
                raise ValueError(f"key ({S},{j}) out of range for dim {source_dim}")
            if list(S) != sorted(set(S)):
                raise ValueError(f"key {S} must be strictly increasing")
            val = tuple(Fraction(v) for v in val)
            if len(val) != target_dim:
                raise ValueError("coefficient vector has wrong length")
            if any(v != 0 for v in val):
                clean[(S, j)] = val
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("Cochain is immutable")

    # -- basics --------------------------------------------------------------

    def _same_space(self, other):
        return (self.arity == other.arity and self.source_dim == other.source_dim
                and self.target_dim == other.target_dim)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self._same_space(other) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.arity, self.source_dim, self.target_dim,
                     frozenset(self.coeffs.items())))

    def __repr__(self):
        return (f"Cochain(arity={self.arity}, dim={self.source_dim}->"
                f"{self.target_dim}, {len(self.coeffs)} coeffs)")

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if not self._same_space(other):
            raise ValueError("cochain space mismatch")
        keys = set(self.coeffs) | set(other.coeffs)
        z = vzero(self.target_dim)
        acc = {k: vadd(self.coeffs.get(k, z), other.coeffs.get(k, z)) for k in keys}
        return Cochain(self.arity, self.source_dim, self.target_dim, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return Cochain(self.arity, self.source_dim, self.target_dim,
                       {k: vscale(c, v) for k, v in self.coeffs.items()})

    @classmethod
    def zero(cls, arity, source_dim, target_dim):
        return cls(arity, source_dim, target_dim, {})

    def basis_keys(self):
        """All (S, j) keys in canonical order: S colexicographic, then j."""
        return basis_keys(self.arity, self.source_dim)

    # -- evaluation ----------------------------------------------------------

    def coeff(self, S, j):
        return self.coeffs.get((tuple(S), j), vzero(self.target_dim))

    def eval_basis(self, idxs):
        """Value on basis arguments e_{idxs[0]}, ..., e_{idxs[n-1]}."""
        if len(idxs) != self.arity:
            raise ValueError("argument count must equal arity")
        head, last = idxs[:-1], idxs[-1]
        sign, key = sort_with_sign(head)
        if sign == 0:
            return vzero(self.target_dim)
        val = self.coeffs.get((key, last))
        if val is None:
            return vzero(self.target_dim)
        return val if sign == 1 else vscale(-1, val)

    def eval(self, args):
        """Multilinear evaluation; each argument is a basis index or a vector."""
        if len(args) != self.arity:
            raise ValueError("argument count must equal arity")
        for a in args:
            if not isinstance(a, int) and len(a) != self.source_dim:
                raise ValueError("argument vector has wrong dimension")
        total = vzero(self.target_dim)
        slots = [(k, a) for k, a in enumerate(args) if not isinstance(a, int)]
        idxs = list(args)

        def expand(si, coeff):
            nonlocal total
            if coeff == 0:
                return
            if si == len(slots):
                v = self.eval_basis(tuple(idxs))
                if coeff != 1:
                    v = vscale(coeff, v)
                total = vadd(total, v)
                return
            k, vec = slots[si]
            for i, c in enumerate(vec):
                if c != 0:
                    idxs[k] = i
                    expand(si + 1, coeff * c)
            idxs[k] = vec

        expand(0, ONE)
        return total


def basis_keys(arity, source_dim):
    """Canonical (S, j) ordering: subsets colexicographically, then j."""
    subsets = sorted(combinations(range(source_dim), arity - 1),
                     key=lambda s: tuple(reversed(s)))
    return [(S, j) for S in subsets for j in range(source_dim)]


def basis_cochain(arity, source_dim, target_dim, S, j, component):
    """The cochain with a single 1 at key (S, j), target component given."""
    val = [ZERO] * target_dim
    val[component] = ONE
    return Cochain(arity, source_dim, target_dim, {(tuple(S), j): tuple(val)})


# -- circle product and graded bracket ---------------------------------------

def _check_endvalued_pair(P, Q):
    if P.source_dim != P.target_dim or Q.source_dim != Q.target_dim:
        raise ValueError("circle product needs endomorphism-valued cochains")
    if P.source_dim != Q.source_dim:
        raise ValueError("cochain space mismatch")


def mn_compose(P: Cochain, Q: Cochain) -> Cochain:
    """Circle product of endomorphism-valued cochains.

    For P of arity p+1 and Q of arity q+1 the result has arity p+q+1 and is
    the signed unshuffle sum: Q eaten first over (q,1,p-1)-unshuffles, then P
    with Q in the last slot over (p,q)-unshuffles weighted by (-1)^{pq}.
    Splits with a negative block are empty, which settles the p=0 and q=0
    cases: two arity-1 maps compose as plain maps.
    """
    _check_endvalued_pair(P, Q)
    p, q = P.arity - 1, Q.arity - 1
    n = p + q + 1
    d = P.source_dim
    first = unshuffles((q, 1, p - 1))
    second = unshuffles((p, q))
    sign2 = -1 if (p * q) % 2 else 1
    acc = {}
    for S, j in basis_keys(n, d):
        xs = list(S) + [j]     # positions 1..p+q are S, position p+q+1 is j
        val = vzero(d)
        for u in first:
            inner = Q.eval_basis(tuple(xs[t] for t in u.perm[:q + 1]))
            outer = [inner] + [xs[u.perm[t]] for t in range(q + 1, p + q)] + [xs[p + q]]
            val = vadd(val, vscale(u.sign, P.eval(outer)))
        for u in second:
            inner = Q.eval_basis(tuple(xs[u.perm[t]] for t in range(p, p + q)) + (xs[p + q],))
            outer = [xs[u.perm[t]] for t in range(p)] + [inner]
            val = vadd(val, vscale(sign2 * u.sign, P.eval(outer)))
        if any(v != 0 for v in val):
            acc[(S, j)] = val
    return Cochain(n, d, d, acc)


def mn_bracket(P: Cochain, Q: Cochain) -> Cochain:
    """Graded commutator P o Q - (-1)^{pq} Q o P; degrees are arity-1."""
    _check_endvalued_pair(P, Q)
    p, q = P.arity - 1, Q.arity - 1
    pq = mn_compose(P, Q)
    qp = mn_compose(Q, P)
    return pq - qp if (p * q) % 2 == 0 else pq + qp
