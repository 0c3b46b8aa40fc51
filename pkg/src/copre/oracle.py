"""Brute-force reference implementations used by the test suite.

Everything here recomputes from raw structure-constant data with literal
nested loops: permutations are enumerated in full and filtered for block
monotonicity, differentials are assembled entry by entry, and identities are
spelled out term by term.  No code is shared with the main modules beyond
plain rational arithmetic, so agreement between the two paths is meaningful
evidence against convention drift (the unshuffle conventions in particular).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .linalg import ExactMatrix


ZERO = Fraction(0)


@dataclass
class OracleResult:
    claim: str
    verdict: bool
    witness: tuple | None = None
    values: dict | None = None


# -- raw helpers (no main-module code) -----------------------------------------

def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vscale(c, u):
    return tuple(c * a for a in u)


def _vzero(n):
    return (ZERO,) * n


def _prod(table, x, y):
    """Product of coordinate vectors via direct contraction of the table."""
    d = len(table)
    out = _vzero(d)
    for i in range(d):
        if x[i] == 0:
            continue
        for j in range(d):
            if y[j] == 0:
                continue
            out = _vadd(out, _vscale(x[i] * y[j], table[i][j]))
    return out


def _basis_vec(d, i):
    return tuple(Fraction(1) if t == i else ZERO for t in range(d))


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _monotone_on_blocks(perm, parts):
    pos = 0
    for size in parts:
        block = perm[pos:pos + size]
        if any(block[t] > block[t + 1] for t in range(len(block) - 1)):
            return False
        pos += size
    return True


def all_unshuffles(parts):
    """Every permutation of {0..n-1}, filtered for monotone blocks."""
    if any(p < 0 for p in parts):
        return []
    n = sum(parts)
    return [(perm, _perm_sign(perm)) for perm in permutations(range(n))
            if _monotone_on_blocks(perm, parts)]


def eval_cochain(coeffs, arity, target_dim, idxs):
    """Evaluate stored coefficients at basis indices, sorting the head."""
    head, last = list(idxs[:-1]), idxs[-1]
    sign = 1
    for i in range(1, len(head)):
        j = i
        while j > 0 and head[j - 1] > head[j]:
            head[j - 1], head[j] = head[j], head[j - 1]
            sign = -sign
            j -= 1
    if any(head[i] == head[i + 1] for i in range(len(head) - 1)):
        return _vzero(target_dim)
    val = coeffs.get((tuple(head), last))
    if val is None:
        return _vzero(target_dim)
    return val if sign == 1 else _vscale(-1, val)


def eval_cochain_mixed(coeffs, arity, dim, target_dim, args):
    """Multilinear evaluation where each argument is a coordinate vector."""
    idxs = [0] * arity
    out = _vzero(target_dim)

    def rec(slot, coeff):
        nonlocal out
        if coeff == 0:
            return
        if slot == arity:
            out = _vadd(out, _vscale(coeff, eval_cochain(coeffs, arity, target_dim, idxs)))
            return
        for i, c in enumerate(args[slot]):
            if c != 0:
                idxs[slot] = i
                rec(slot + 1, coeff * c)

    rec(0, Fraction(1))
    return out


def circle_product(P_coeffs, p_arity, Q_coeffs, q_arity, dim, idxs):
    """The signed unshuffle sum, with full permutation filtering, evaluated
    at basis indices (not necessarily sorted)."""
    p, q = p_arity - 1, q_arity - 1
    out = _vzero(dim)
    xs = list(idxs)
    for perm, sign in all_unshuffles((q, 1, p - 1)):
        inner = eval_cochain(Q_coeffs, q_arity, dim, tuple(xs[t] for t in perm[:q + 1]))
        args = [inner] + [_basis_vec(dim, xs[perm[t]]) for t in range(q + 1, p + q)] \
            + [_basis_vec(dim, xs[p + q])]
        out = _vadd(out, _vscale(sign, eval_cochain_mixed(P_coeffs, p_arity, dim, dim, args)))
    s2 = -1 if (p * q) % 2 else 1
    for perm, sign in all_unshuffles((p, q)):
        inner = eval_cochain(Q_coeffs, q_arity, dim,
                             tuple(xs[perm[t]] for t in range(p, p + q)) + (xs[p + q],))
        args = [_basis_vec(dim, xs[perm[t]]) for t in range(p)] + [inner]
        out = _vadd(out, _vscale(s2 * sign, eval_cochain_mixed(P_coeffs, p_arity, dim, dim, args)))
    return out


def graded_bracket(P_coeffs, p_arity, Q_coeffs, q_arity, dim, idxs):
    p, q = p_arity - 1, q_arity - 1
    pq = circle_product(P_coeffs, p_arity, Q_coeffs, q_arity, dim, idxs)
    qp = circle_product(Q_coeffs, q_arity, P_coeffs, p_arity, dim, idxs)
    koszul = -1 if (p * q) % 2 else 1
    return _vadd(pq, _vscale(-koszul, qp))


# -- identity verdicts ---------------------------------------------------------

def brute_identity(identity: str, structures: dict) -> OracleResult:
    """Literal term-by-term check of one displayed identity.

    structures carries raw tables under keys named below; dims <= 4 expected.
    """
    if identity == "pre_lie":
        t = structures["product"]
        d = len(t)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    x, y, z = (_basis_vec(d, i), _basis_vec(d, j), _basis_vec(d, k))
                    lhs = _vadd(_prod(t, _prod(t, x, y), z),
                                _vscale(-1, _prod(t, x, _prod(t, y, z))))
                    rhs = _vadd(_prod(t, _prod(t, y, x), z),
                                _vscale(-1, _prod(t, y, _prod(t, x, z))))
                    if lhs != rhs:
                        return OracleResult(identity, False, (i, j, k))
        return OracleResult(identity, True)

    if identity == "compatible":
        t1, t2 = structures["product1"], structures["product2"]
        d = len(t1)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    x, y, z = (_basis_vec(d, i), _basis_vec(d, j), _basis_vec(d, k))
                    val = _prod(t1, _prod(t2, x, y), z)
                    val = _vadd(val, _prod(t2, _prod(t1, x, y), z))
                    val = _vadd(val, _vscale(-1, _prod(t1, x, _prod(t2, y, z))))
                    val = _vadd(val, _vscale(-1, _prod(t2, x, _prod(t1, y, z))))
                    val = _vadd(val, _vscale(-1, _prod(t1, _prod(t2, y, x), z)))
                    val = _vadd(val, _vscale(-1, _prod(t2, _prod(t1, y, x), z)))
                    val = _vadd(val, _prod(t1, y, _prod(t2, x, z)))
                    val = _vadd(val, _prod(t2, y, _prod(t1, x, z)))
                    if any(c != 0 for c in val):
                        return OracleResult(identity, False, (i, j, k))
        return OracleResult(identity, True)

    if identity == "jacobi":
        t = structures["bracket"]
        d = len(t)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    x, y, z = (_basis_vec(d, i), _basis_vec(d, j), _basis_vec(d, k))
                    val = _prod(t, _prod(t, x, y), z)
                    val = _vadd(val, _prod(t, _prod(t, y, z), x))
                    val = _vadd(val, _prod(t, _prod(t, z, x), y))
                    if any(c != 0 for c in val):
                        return OracleResult(identity, False, (i, j, k))
        return OracleResult(identity, True)

    if identity == "compatible_lie":
        t1, t2 = structures["bracket1"], structures["bracket2"]
        d = len(t1)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    x, y, z = (_basis_vec(d, i), _basis_vec(d, j), _basis_vec(d, k))
                    val = _prod(t1, _prod(t2, x, y), z)
                    val = _vadd(val, _prod(t1, _prod(t2, y, z), x))
                    val = _vadd(val, _prod(t1, _prod(t2, z, x), y))
                    val = _vadd(val, _prod(t2, _prod(t1, x, y), z))
                    val = _vadd(val, _prod(t2, _prod(t1, y, z), x))
                    val = _vadd(val, _prod(t2, _prod(t1, z, x), y))
                    if any(c != 0 for c in val):
                        return OracleResult(identity, False, (i, j, k))
        return OracleResult(identity, True)

    if identity == "nijenhuis":
        t = structures["product"]
        nmat = structures["operator"]          # rows
        d = len(t)

        def napply(v):
            return tuple(sum((nmat[r][c] * v[c] for c in range(d)), ZERO) for r in range(d))

        for i in range(d):
            for j in range(d):
                x, y = _basis_vec(d, i), _basis_vec(d, j)
                nx, ny = napply(x), napply(y)
                deformed = _vadd(_vadd(_prod(t, nx, y), _prod(t, x, ny)),
                                 _vscale(-1, napply(_prod(t, x, y))))
                if _prod(t, nx, ny) != napply(deformed):
                    return OracleResult(identity, False, (i, j))
        return OracleResult(identity, True)

    raise ValueError(f"unknown identity: {identity}")


# -- dense differential assembly -------------------------------------------------

def _colex_subsets(d, size):
    return sorted(combinations(range(d), size), key=lambda s: tuple(reversed(s)))


def _flat_basis(n, d, m):
    keys = [(S, j) for S in _colex_subsets(d, n - 1) for j in range(d)]
    return [(part, S, j, c) for part in range(n) for (S, j) in keys for c in range(m)]


def brute_differential(products, reps, n, rep_dim=None) -> ExactMatrix:
    """Total differential matrix in degree n, assembled by direct loops.

    products is (table1, table2); reps is None for self coefficients or
    ((rho1, mu1), (rho2, mu2)) as tuples of matrix lists for module
    coefficients.  The flattening convention (parts outer, subsets in
    colexicographic order, then the free index, then target coordinates)
    mirrors the one documented by the main modules.
    """
    t1, t2 = products
    d = len(t1)
    if reps is not None and rep_dim is None:
        rep_dim = len(reps[0][0][0])
    if reps is None:
        m = d

        def act_left(which, i, vec):
            t = t1 if which == 0 else t2
            return _prod(t, _basis_vec(d, i), vec)

        def act_right(which, vec, j):
            t = t1 if which == 0 else t2
            return _prod(t, vec, _basis_vec(d, j))
    else:
        m = rep_dim

        def act_left(which, i, vec):
            rho = reps[which][0]
            mat = rho[i]
            return tuple(sum((mat[r][c] * vec[c] for c in range(m)), ZERO) for r in range(m))

        def act_right(which, vec, j):
            mu = reps[which][1]
            mat = mu[j]
            return tuple(sum((mat[r][c] * vec[c] for c in range(m)), ZERO) for r in range(m))

    def single(which, coeffs, S, j):
        """Value of the one-product coboundary at basis args (S..., j)."""
        t = t1 if which == 0 else t2
        xs = list(S)
        val = _vzero(m)
        for i in range(n):
            sign = 1 if i % 2 == 0 else -1
            rest = xs[:i] + xs[i + 1:]
            v1 = act_left(which, xs[i], eval_cochain(coeffs, n, m, tuple(rest) + (j,)))
            v2 = act_right(which, eval_cochain(coeffs, n, m, tuple(rest) + (xs[i],)), j)
            prod_vec = _prod(t, _basis_vec(d, xs[i]), _basis_vec(d, j))
            args = [_basis_vec(d, r) for r in rest] + [prod_vec]
            v3 = eval_cochain_mixed(coeffs, n, d, m, args)
            step = _vadd(_vadd(v1, v2), _vscale(-1, v3))
            val = _vadd(val, step if sign == 1 else _vscale(-1, step))
        for a in range(n):
            for b in range(a + 1, n):
                sign = 1 if (a + b) % 2 == 0 else -1
                comm = _vadd(_prod(t, _basis_vec(d, xs[a]), _basis_vec(d, xs[b])),
                             _vscale(-1, _prod(t, _basis_vec(d, xs[b]), _basis_vec(d, xs[a]))))
                rest = [_basis_vec(d, xs[c]) for c in range(n) if c != a and c != b]
                v4 = eval_cochain_mixed(coeffs, n, d, m, [comm] + rest + [_basis_vec(d, j)])
                val = _vadd(val, v4 if sign == 1 else _vscale(-1, v4))
        return val

    dom = _flat_basis(n, d, m)
    cod = _flat_basis(n + 1, d, m)
    columns = []
    for part, S, j, c in dom:
        val = [ZERO] * m
        val[c] = Fraction(1)
        coeffs = {(S, j): tuple(val)}
        images = []
        for out_part in range(n + 1):
            if out_part == part:
                images.append((0, coeffs))      # first product acts
            elif out_part == part + 1:
                images.append((1, coeffs))      # second product acts
            else:
                images.append(None)
        col = []
        for out_part, So, jo, co in cod:
            tagged = images[out_part]
            if tagged is None:
                col.append(ZERO)
                continue
            which, cf = tagged
            col.append(single(which, cf, So, jo)[co])
        columns.append(col)
    entries = [columns[cidx][ridx] for ridx in range(len(cod)) for cidx in range(len(dom))]
    return ExactMatrix(len(cod), len(dom), entries)
