"""Coboundary operators, total complexes, horizontal lifts, and cohomology.

Two differentials exist side by side for each coefficient choice: the graded
bracket with the structure cochain, and the explicit four-sum formula.  They
must agree everywhere; keeping both guards the unshuffle conventions.  The
total complex in degree n is n copies of the single-product cochain space,
with the staircase differential mixing the two products.

Cohomology is computed by flattening the differentials to exact rational
matrices: cocycles from the kernel, coboundaries from the image, and
representatives by canonical reduction of the kernel basis modulo the image.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import BilinearProduct, CompatiblePreLie, CompatibleRep, RepMaps
from .cochain import Cochain, basis_keys, mn_bracket
from .linalg import (ExactMatrix, ONE, ZERO, _rref, kernel_basis, vadd,
                     vscale, vsub, vzero)


@dataclass(frozen=True)
class CochainTuple:
    """An element of the degree-n total complex: n cochains of arity n."""

    degree: int
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != self.degree:
            raise ValueError("a degree-n element has exactly n components")
        for p in self.parts:
            if p.arity != self.degree:
                raise ValueError("all components must have arity equal to the degree")
        object.__setattr__(self, "parts", tuple(self.parts))

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return CochainTuple(self.degree, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return CochainTuple(self.degree, tuple(p.scale(c) for p in self.parts))

    @classmethod
    def zero(cls, degree, source_dim, target_dim):
        z = Cochain.zero(degree, source_dim, target_dim)
        return cls(degree, (z,) * degree)


# -- single differentials ------------------------------------------------------

def delta_single(p: BilinearProduct, f: Cochain) -> Cochain:
    """Coboundary of f against one product, via the graded bracket."""
    if f.source_dim != p.dim or f.target_dim != p.dim:
        raise ValueError("cochain must be endomorphism-valued over the product's space")
    n = f.arity
    br = mn_bracket(p.as_cochain(), f)
    return br if (n - 1) % 2 == 0 else br.scale(-1)


def delta_single_explicit(p: BilinearProduct, f: Cochain) -> Cochain:
    """Same coboundary through the four-sum formula; independent code path."""
    if f.source_dim != p.dim or f.target_dim != p.dim:
        raise ValueError("cochain must be endomorphism-valued over the product's space")

    def left(i, vec):
        return p.apply(i, vec)

    def right(vec, j):
        return p.apply(vec, j)

    return _explicit_coboundary(p, left, right, f)


def partial_single(p: BilinearProduct, rho: RepMaps, mu: RepMaps, f: Cochain) -> Cochain:
    """Coboundary with coefficients in a module, by the explicit formula."""
    if f.source_dim != p.dim or f.target_dim != rho.rep_dim:
        raise ValueError("cochain must map the algebra into the module")

    def left(i, vec):
        return rho.apply(i, vec)

    def right(vec, j):
        return mu.apply(j, vec)

    return _explicit_coboundary(p, left, right, f)


def _explicit_coboundary(p, left, right, f):
    """Shared four-sum assembly: left actions, right actions, last-slot
    products, and commutator insertions."""
    n = f.arity
    d = p.dim
    m = f.target_dim
    comm = p.commutator()
    acc = {}
    for S, j in basis_keys(n + 1, d):
        xs = list(S)            # x_1..x_n
        last = j                # x_{n+1}
        val = vzero(m)
        for i in range(n):
            sign = 1 if i % 2 == 0 else -1
            rest = xs[:i] + xs[i + 1:]
            v1 = left(xs[i], f.eval_basis(tuple(rest) + (last,)))
            v2 = right(f.eval_basis(tuple(rest) + (xs[i],)), last)
            v3 = f.eval(rest + [p.basis(xs[i], last)])
            step = vsub(vadd(v1, v2), v3)
            val = vadd(val, step if sign == 1 else vscale(-1, step))
        for a in range(n):
            for b in range(a + 1, n):
                sign = 1 if (a + b) % 2 == 0 else -1   # (i+j) with 1-based i, j
                rest = [xs[t] for t in range(n) if t != a and t != b]
                v4 = f.eval([comm.basis(xs[a], xs[b])] + rest + [last])
                val = vadd(val, v4 if sign == 1 else vscale(-1, v4))
        if any(c != 0 for c in val):
            acc[(S, j)] = val
    return Cochain(n + 1, d, m, acc)


def partial_single_via_lift(p: BilinearProduct, rho: RepMaps, mu: RepMaps,
                            f: Cochain) -> Cochain:
    """Cross-check path: lift f and the structure map to the direct sum,
    bracket there, and read the module-valued coefficients back off."""
    d, m = p.dim, rho.rep_dim
    n = f.arity
    anchor = lift_structure(p, rho, mu)
    lifted = lift_module_cochain(f, d, m)
    br = mn_bracket(anchor, lifted)
    if (n - 1) % 2 == 1:
        br = br.scale(-1)
    acc = {}
    for (S, j), vec in br.coeffs.items():
        if any(s >= d for s in S) or j >= d:
            raise AssertionError("bracket left the lifted module-valued block")
        if any(c != 0 for c in vec[:d]):
            raise AssertionError("bracket left the lifted module-valued block")
        acc[(S, j)] = vec[d:]
    return Cochain(n + 1, d, m, acc)


# -- total differentials -------------------------------------------------------

def delta_total(a: CompatiblePreLie, t: CochainTuple) -> CochainTuple:
    """Staircase differential of the self-coefficient total complex."""
    return _total(t, lambda f: delta_single(a.p1, f), lambda f: delta_single(a.p2, f))


def partial_total(a: CompatiblePreLie, r: CompatibleRep, t: CochainTuple) -> CochainTuple:
    """Staircase differential with coefficients in a representation."""
    return _total(t,
                  lambda f: partial_single(a.p1, r.rho, r.mu, f),
                  lambda f: partial_single(a.p2, r.rho_t, r.mu_t, f))


def _total(t: CochainTuple, d1, d2):
    n = t.degree
    parts = []
    for i in range(n + 1):
        if i == 0:
            part = d1(t.parts[0])
        elif i == n:
            part = d2(t.parts[n - 1])
        else:
            part = d2(t.parts[i - 1]) + d1(t.parts[i])
        parts.append(part)
    return CochainTuple(n + 1, tuple(parts))


# -- horizontal lifts and bidegrees -------------------------------------------

@dataclass(frozen=True)
class BlockMap:
    """A multilinear map on wedge blocks of a split space g + V.

    last_in_g selects the signature: k-1 wedge factors from g, l from V, and
    a final g argument (True), or k from g, l-1 from V, and a final V
    argument (False).  target picks the summand the values land in.
    data keys are (g_tuple, v_tuple, last) with strictly increasing tuples;
    0-based indices are local to each summand.
    """

    k: int
    l: int
    last_in_g: bool
    dim_g: int
    dim_v: int
    target: int          # 1 for g, 2 for V
    data: dict = field(default_factory=dict)

    @property
    def wedge_g(self):
        return self.k - 1 if self.last_in_g else self.k

    @property
    def wedge_v(self):
        return self.l if self.last_in_g else self.l - 1

    def arity(self):
        return self.k + self.l

    def value(self, gs, vs, last):
        tdim = self.dim_g if self.target == 1 else self.dim_v
        return self.data.get((tuple(gs), tuple(vs), last), vzero(tdim))


def lift(block: BlockMap) -> Cochain:
    """Horizontal lift to a cochain on the direct sum.

    On canonical basis keys (sorted, so g indices precede V indices) exactly
    one unshuffle in the defining sum survives and it is the identity, so the
    lift just re-indexes the block data.
    """
    if block.wedge_g < 0 or block.wedge_v < 0:
        raise ValueError("malformed block signature")
    d, m = block.dim_g, block.dim_v
    n = block.arity()
    if n < 1:
        raise ValueError("lift needs arity >= 1")
    total = d + m
    acc = {}
    for S, j in basis_keys(n, total):
        gs = tuple(s for s in S if s < d)
        vs = tuple(s - d for s in S if s >= d)
        if len(gs) != block.wedge_g or len(vs) != block.wedge_v:
            continue
        if block.last_in_g != (j < d):
            continue
        last = j if j < d else j - d
        val = block.value(gs, vs, last)
        if all(c == 0 for c in val):
            continue
        if block.target == 1:
            acc[(S, j)] = tuple(val) + vzero(m)
        else:
            acc[(S, j)] = vzero(d) + tuple(val)
    return Cochain(n, total, total, acc)


def lift_module_cochain(f: Cochain, dim_g: int, dim_v: int) -> Cochain:
    """Lift of a module-valued cochain: ignore V inputs, land in the V block."""
    data = {(S, (), j): vec for (S, j), vec in f.coeffs.items()}
    block = BlockMap(k=f.arity, l=0, last_in_g=True, dim_g=dim_g, dim_v=dim_v,
                     target=2, data=data)
    return lift(block)


def lift_structure(p: BilinearProduct, rho: RepMaps, mu: RepMaps) -> Cochain:
    """Lift of product + actions: the degree-1|0 anchor of the coefficient complex."""
    d, m = p.dim, rho.rep_dim
    prod_block = BlockMap(k=2, l=0, last_in_g=True, dim_g=d, dim_v=m, target=1,
                          data={((i,), (), j): p.basis(i, j)
                                for i in range(d) for j in range(d)})
    rho_block = BlockMap(k=1, l=1, last_in_g=False, dim_g=d, dim_v=m, target=2,
                         data={((i,), (), b): tuple(rho.mat(i)[t][b] for t in range(m))
                               for i in range(d) for b in range(m)})
    mu_block = BlockMap(k=1, l=1, last_in_g=True, dim_g=d, dim_v=m, target=2,
                        data={((), (b,), j): tuple(mu.mat(j)[t][b] for t in range(m))
                              for b in range(m) for j in range(d)})
    return lift(prod_block) + lift(rho_block) + lift(mu_block)


def mc_pair_with_coefficients(a: CompatiblePreLie, r: CompatibleRep):
    """The two lifted structure cochains on g + V; their three brackets vanish
    exactly when the representation axioms hold."""
    return (lift_structure(a.p1, r.rho, r.mu),
            lift_structure(a.p2, r.rho_t, r.mu_t))


def bidegree(f: Cochain, dim_g: int, dim_v: int):
    """The (k, l) homogeneity class of a cochain on a split space, or None.

    The zero cochain has every bidegree, so None is returned for it as well;
    callers that need the distinction test is_zero first.
    """
    if f.source_dim != dim_g + dim_v or f.target_dim != dim_g + dim_v:
        raise ValueError("cochain is not an endomorphism cochain on the split space")
    candidates = None
    for (S, j), vec in f.coeffs.items():
        r = sum(1 for s in S if s < dim_g)
        s_count = len(S) - r
        if j < dim_g:
            ab = (r + 1, s_count)
        else:
            ab = (r, s_count + 1)
        here = set()
        if any(c != 0 for c in vec[:dim_g]):
            here.add((ab[0] - 1, ab[1]))
        if any(c != 0 for c in vec[dim_g:]):
            here.add((ab[0], ab[1] - 1))
        if len(here) != 1:
            return None
        candidates = here if candidates is None else candidates & here
        if not candidates:
            return None
    if candidates is None or len(candidates) != 1:
        return None
    return next(iter(candidates))


# -- flattening and cohomology groups ------------------------------------------

@dataclass(frozen=True)
class ComplexContext:
    """A total complex ready to be flattened: either self coefficients or
    coefficients in a representation."""

    algebra: CompatiblePreLie
    rep: CompatibleRep | None = None

    @property
    def source_dim(self):
        return self.algebra.dim

    @property
    def target_dim(self):
        return self.rep.rep_dim if self.rep is not None else self.algebra.dim

    def differential(self, t: CochainTuple) -> CochainTuple:
        if self.rep is None:
            return delta_total(self.algebra, t)
        return partial_total(self.algebra, self.rep, t)

    def space_dim(self, n):
        d = self.source_dim
        if n < 1 or n - 1 > d:
            return 0
        return n * _ncr(d, n - 1) * d * self.target_dim

    def tuple_basis(self, n):
        keys = basis_keys(n, self.source_dim)
        return [(part, S, j, c)
                for part in range(n)
                for S, j in keys
                for c in range(self.target_dim)]

    def flatten(self, t: CochainTuple):
        out = []
        keys = basis_keys(t.degree, self.source_dim)
        for part in t.parts:
            for S, j in keys:
                out.extend(part.coeff(S, j))
        return tuple(out)

    def unflatten(self, vec, n) -> CochainTuple:
        d, m = self.source_dim, self.target_dim
        keys = basis_keys(n, d)
        per_part = len(keys) * m
        parts = []
        for p in range(n):
            chunk = vec[p * per_part:(p + 1) * per_part]
            coeffs = {}
            for idx, (S, j) in enumerate(keys):
                val = tuple(chunk[idx * m:(idx + 1) * m])
                if any(c != 0 for c in val):
                    coeffs[(S, j)] = val
            parts.append(Cochain(n, d, m, coeffs))
        return CochainTuple(n, tuple(parts))

    def differential_matrix(self, n) -> ExactMatrix:
        """Matrix of the degree-n differential over the canonical flat basis."""
        rows_dim = self.space_dim(n + 1)
        cols_dim = self.space_dim(n)
        if cols_dim == 0 or rows_dim == 0:
            return ExactMatrix.zero(rows_dim, cols_dim)
        d, m = self.source_dim, self.target_dim
        keys = basis_keys(n, d)
        columns = []
        for part, S, j, c in self.tuple_basis(n):
            val = [ZERO] * m
            val[c] = ONE
            single = Cochain(n, d, m, {(S, j): tuple(val)})
            zero = Cochain.zero(n, d, m)
            parts = tuple(single if p == part else zero for p in range(n))
            image = self.differential(CochainTuple(n, parts))
            columns.append(self.flatten(image))
        entries = [columns[cidx][ridx] for ridx in range(rows_dim) for cidx in range(cols_dim)]
        return ExactMatrix(rows_dim, cols_dim, entries)


def _ncr(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@dataclass
class CohomologyReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int
    cocycle_basis: list
    coboundary_basis: list
    representatives: list

    def __post_init__(self):
        assert self.dim_H == self.dim_cocycles - self.dim_coboundaries >= 0


def _column_space_rref(mat: ExactMatrix):
    """RREF basis of the column space, as row vectors with pivot columns."""
    if mat.cols and mat.rows:
        transposed = ExactMatrix.from_rows(list(zip(*mat.row_tuples())))
    else:
        transposed = ExactMatrix.zero(mat.cols, mat.rows)
    work, pivots, _ = _rref(transposed)
    return [tuple(r) for r in work], pivots


def cohomology_group(ctx: ComplexContext, n: int) -> CohomologyReport:
    """Kernel of the degree-n differential modulo the image of degree n-1.

    Degrees above the wedge cutoff give the zero report.  Representatives are
    kernel basis vectors reduced modulo the coboundary row space, with the
    canonical convention that reduced vectors vanish on the image's pivot
    coordinates.
    """
    if n < 1:
        raise ValueError("cohomology starts at degree 1")
    dim_n = ctx.space_dim(n)
    if dim_n == 0:
        return CohomologyReport(n, 0, 0, 0, [], [], [])
    dn = ctx.differential_matrix(n)
    cocycles = kernel_basis(dn)
    if n == 1:
        boundary_rows, boundary_pivots = [], []
    else:
        dn1 = ctx.differential_matrix(n - 1)
        boundary_rows, boundary_pivots = _column_space_rref(dn1)

    def reduce_vec(v):
        v = list(v)
        for row, piv in zip(boundary_rows, boundary_pivots):
            c = v[piv]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    reduced = [reduce_vec(z) for z in cocycles]
    # keep an independent subset of the reduced cocycles
    if reduced:
        work, _, _ = _rref(ExactMatrix.from_rows(reduced))
        rep_vecs = [tuple(r) for r in work]
    else:
        rep_vecs = []
    report = CohomologyReport(
        degree=n,
        dim_cocycles=len(cocycles),
        dim_coboundaries=len(boundary_rows),
        dim_H=len(rep_vecs),
        cocycle_basis=[ctx.unflatten(z, n) for z in cocycles],
        coboundary_basis=[ctx.unflatten(b, n) for b in boundary_rows],
        representatives=[ctx.unflatten(r, n) for r in rep_vecs],
    )
    return report
