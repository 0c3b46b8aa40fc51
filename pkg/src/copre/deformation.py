"""Deformations: infinitesimal, Nijenhuis-generated, and truncated formal.

An infinitesimal deformation perturbs both products by a 2-cochain pair that
must be a cocycle of the total complex and itself a compatible pair.  A
Nijenhuis operator deforms both products into a new compatible structure and
generates a trivial deformation.  Formal deformations are truncated power
series of products checked order by order; the rigidity probe constructively
trivializes them one order at a time by solving linear gauge equations,
reporting the first obstruction as a nonzero degree-2 cohomology class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import (BilinearProduct, CheckReport, CompatiblePreLie,
                       validate_compatible)
from .cochain import Cochain, mn_bracket
from .cohomology import CochainTuple, ComplexContext, _column_space_rref
from .linalg import (identity_rows, mat_mul, mat_vec, solve, vadd, viszero,
                     vsub, vzero)


@dataclass(frozen=True)
class InfinitesimalDeformation:
    base: CompatiblePreLie
    omega1: Cochain
    omega2: Cochain


@dataclass(frozen=True)
class NijenhuisOp:
    base: CompatiblePreLie
    n_mat: Cochain          # arity 1

    def rows(self):
        d = self.base.dim
        return tuple(tuple(self.n_mat.coeff((), j)[r] for j in range(d)) for r in range(d))


@dataclass(frozen=True)
class FormalDeformation:
    """Truncated series: terms1[i], terms2[i] perturb the products at t^(i+1)."""

    base: CompatiblePreLie
    order: int
    terms1: tuple
    terms2: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.terms1) != self.order or len(self.terms2) != self.order:
            raise ValueError("need exactly `order` terms per product")
        for t in tuple(self.terms1) + tuple(self.terms2):
            if t.dim != self.base.dim:
                raise ValueError("term dimension mismatch")
        object.__setattr__(self, "terms1", tuple(self.terms1))
        object.__setattr__(self, "terms2", tuple(self.terms2))

    def series1(self):
        return (self.base.p1,) + self.terms1

    def series2(self):
        return (self.base.p2,) + self.terms2

    @classmethod
    def zero(cls, base, order):
        z = BilinearProduct.zero(base.dim)
        return cls(base, order, (z,) * order, (z,) * order)


def matrix_to_endo_cochain(rows, dim):
    return Cochain(1, dim, dim, {((), j): tuple(r[j] for r in rows) for j in range(dim)})


def endo_cochain_to_matrix(c: Cochain):
    d = c.source_dim
    return tuple(tuple(c.coeff((), j)[r] for j in range(d)) for r in range(d))


def product_from_cochain(c: Cochain) -> BilinearProduct:
    return BilinearProduct.from_cochain(c)


@dataclass
class InfinitesimalReport:
    is_cocycle: bool
    is_self_compatible: bool
    cocycle_violations: CheckReport
    compat_violations: CheckReport

    @property
    def generates(self):
        return self.is_cocycle and self.is_self_compatible


def infinitesimal_check(base: CompatiblePreLie, w1: Cochain, w2: Cochain) -> InfinitesimalReport:
    """Cocycle condition of the total complex plus self-compatibility."""
    ctx = ComplexContext(base)
    image = ctx.differential(CochainTuple(2, (w1, w2)))
    cocycle_rep = CheckReport()
    for idx, part in enumerate(image.parts):
        for key in part.coeffs:
            cocycle_rep.add(f"cocycle:part{idx + 1}", key[0] + (key[1],))
    cand = CompatiblePreLie(base.dim, product_from_cochain(w1), product_from_cochain(w2))
    compat_rep = validate_compatible(cand)
    return InfinitesimalReport(cocycle_rep.ok, compat_rep.ok, cocycle_rep, compat_rep)


def deformed_products(base: CompatiblePreLie, w1: Cochain, w2: Cochain, t) -> CompatiblePreLie:
    """The structure at parameter value t."""
    t = Fraction(t)
    return CompatiblePreLie(
        base.dim,
        base.p1.add(product_from_cochain(w1).scale(t)),
        base.p2.add(product_from_cochain(w2).scale(t)),
    )


def equivalence_check(base: CompatiblePreLie, def1, def2, n_rows) -> CheckReport:
    """The six identities making Id + tN a homomorphism between the deformed
    structures for every parameter value, checked on basis pairs.

    def1 = (w1, w2) generates the target deformation, def2 = (w1', w2') the
    source; n_rows is the matrix of N.
    """
    w1, w2 = def1
    w1p, w2p = def2
    d = base.dim
    rep = CheckReport()

    def napply(v):
        return mat_vec(n_rows, v)

    for (tag_prefix, p, w, wp) in (("1", base.p1, w1, w1p), ("2", base.p2, w2, w2p)):
        for i in range(d):
            for j in range(d):
                ni = napply(tuple(Fraction(1) if t == i else Fraction(0) for t in range(d)))
                nj = napply(tuple(Fraction(1) if t == j else Fraction(0) for t in range(d)))
                wij = w.eval_basis((i, j))
                wpij = wp.eval_basis((i, j))
                # linear order: w' - w = N x . y + x . N y - N(x . y)
                lin = vadd(p.apply(ni, j), p.apply(i, nj))
                lin = vsub(lin, napply(p.basis(i, j)))
                if vsub(wpij, wij) != lin:
                    rep.add(f"equiv{tag_prefix}:linear", (i, j))
                # quadratic order: N(w'(x,y)) = w(x,Ny) + w(Nx,y) + Nx . Ny
                quad = vadd(w.eval([i, nj]), w.eval([ni, j]))
                quad = vadd(quad, p.apply(ni, nj))
                if napply(wpij) != quad:
                    rep.add(f"equiv{tag_prefix}:quadratic", (i, j))
                # cubic order: w(Nx, Ny) = 0
                if not viszero(w.eval([ni, nj])):
                    rep.add(f"equiv{tag_prefix}:cubic", (i, j))
    return rep


def nijenhuis_check(base: CompatiblePreLie, n_rows) -> CheckReport:
    """N(x) o N(y) = N(x o_N y) for both products, on all basis pairs."""
    rep = CheckReport()
    d = base.dim

    def napply(v):
        return mat_vec(n_rows, v)

    basis = [tuple(Fraction(1) if t == i else Fraction(0) for t in range(d)) for i in range(d)]
    for tag, p in (("product1", base.p1), ("product2", base.p2)):
        for i in range(d):
            for j in range(d):
                ni, nj = napply(basis[i]), napply(basis[j])
                deformed = vadd(p.apply(ni, j), p.apply(i, nj))
                deformed = vsub(deformed, napply(p.basis(i, j)))
                if p.apply(ni, nj) != napply(deformed):
                    rep.add(f"nijenhuis:{tag}", (i, j))
    return rep


def deformed_product(p: BilinearProduct, n_rows) -> BilinearProduct:
    """x o_N y = N(x) o y + x o N(y) - N(x o y)."""
    d = p.dim
    basis = [tuple(Fraction(1) if t == i else Fraction(0) for t in range(d)) for i in range(d)]
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            v = vadd(p.apply(mat_vec(n_rows, basis[i]), j), p.apply(i, mat_vec(n_rows, basis[j])))
            v = vsub(v, mat_vec(n_rows, p.basis(i, j)))
            row.append(v)
        table.append(tuple(row))
    return BilinearProduct(d, tuple(table))


def deformed_structure(base: CompatiblePreLie, n_rows) -> CompatiblePreLie:
    """The pair of products twisted by a Nijenhuis operator."""
    bad = nijenhuis_check(base, n_rows)
    if not bad.ok:
        raise ValueError(f"not a Nijenhuis operator: {bad.witness()}")
    return CompatiblePreLie(base.dim,
                            deformed_product(base.p1, n_rows),
                            deformed_product(base.p2, n_rows))


def trivial_from_nijenhuis(base: CompatiblePreLie, n_rows) -> InfinitesimalDeformation:
    """The coboundary pair of N: both deformed products, as a deformation."""
    bad = nijenhuis_check(base, n_rows)
    if not bad.ok:
        raise ValueError(f"not a Nijenhuis operator: {bad.witness()}")
    w1 = deformed_product(base.p1, n_rows).as_cochain()
    w2 = deformed_product(base.p2, n_rows).as_cochain()
    return InfinitesimalDeformation(base, w1, w2)


def id_plus_tn_homomorphism_defects(base: CompatiblePreLie, w1: Cochain, w2: Cochain,
                                    n_rows):
    """Per-power defects of (Id + tN)(x o_t y) = (Id + tN)x o (Id + tN)y.

    Returns a dict power -> CheckReport; the map is a homomorphism for every
    t exactly when all three reports are clean (the identity is cubic in t).
    """
    d = base.dim
    basis = [tuple(Fraction(1) if t == i else Fraction(0) for t in range(d)) for i in range(d)]
    out = {0: CheckReport(), 1: CheckReport(), 2: CheckReport()}
    for tag, p, w in (("product1", base.p1, w1), ("product2", base.p2, w2)):
        for i in range(d):
            for j in range(d):
                ni, nj = mat_vec(n_rows, basis[i]), mat_vec(n_rows, basis[j])
                wij = w.eval_basis((i, j))
                # t^0: x o y = x o y, always clean; kept for the report shape
                # t^1: w(x,y) + N(x o y) = N x o y + x o N y
                t1 = vsub(vadd(wij, mat_vec(n_rows, p.basis(i, j))),
                          vadd(p.apply(ni, j), p.apply(i, nj)))
                if not viszero(t1):
                    out[1].add(f"{tag}:t^1", (i, j))
                # t^2: N(w(x,y)) = N x o N y
                t2 = vsub(mat_vec(n_rows, wij), p.apply(ni, nj))
                if not viszero(t2):
                    out[2].add(f"{tag}:t^2", (i, j))
    return out


# -- formal deformations ---------------------------------------------------------

def _assoc_defect(pa: BilinearProduct, pb: BilinearProduct, i, j, k):
    """pa(pb(x,y),z) - pa(x,pb(y,z)) - pa(pb(y,x),z) + pa(y,pb(x,z))."""
    val = pa.apply(pb.basis(i, j), k)
    val = vsub(val, pa.apply(i, pb.basis(j, k)))
    val = vsub(val, pa.apply(pb.basis(j, i), k))
    val = vadd(val, pa.apply(j, pb.basis(i, k)))
    return val


@dataclass
class FormalOrderReport:
    order: int
    holds1: bool
    holds2: bool
    holds_mixed: bool
    remainder_matches_coboundary: bool | None = None

    @property
    def ok(self):
        return self.holds1 and self.holds2 and self.holds_mixed


@dataclass
class FormalReport:
    orders: list

    @property
    def ok(self):
        return all(o.ok for o in self.orders)

    def first_failure(self):
        return next((o for o in self.orders if not o.ok), None)


def formal_check(fd: FormalDeformation) -> FormalReport:
    """Order-by-order deformation equations on all basis triples.

    For each order the three families are: the deformation equation of each
    product, and the mixed equation coupling them.  Where all lower orders
    hold, the quadratic middle sums are also compared against the negated
    bracket coboundaries of the order-n terms (an internal consistency
    identity between the expanded equations and the bracket calculus).
    """
    base = fd.base
    d = base.dim
    s1, s2 = fd.series1(), fd.series2()
    reports = []
    clean_so_far = True
    for n in range(1, fd.order + 1):
        pairs = [(i, n - i) for i in range(n + 1)]
        bad1 = bad2 = badm = False
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    v1 = vzero(d)
                    v2 = vzero(d)
                    vm = vzero(d)
                    for (a, b) in pairs:
                        v1 = vadd(v1, _assoc_defect(s1[a], s1[b], i, j, k))
                        v2 = vadd(v2, _assoc_defect(s2[a], s2[b], i, j, k))
                        vm = vadd(vm, _assoc_defect(s1[a], s2[b], i, j, k))
                        vm = vadd(vm, _assoc_defect(s2[b], s1[a], i, j, k))
                    bad1 = bad1 or not viszero(v1)
                    bad2 = bad2 or not viszero(v2)
                    badm = badm or not viszero(vm)
        rep = FormalOrderReport(n, not bad1, not bad2, not badm)
        if clean_so_far:
            rep.remainder_matches_coboundary = _remainder_check(fd, n)
        reports.append(rep)
        clean_so_far = clean_so_far and rep.ok
    return FormalReport(reports)


def _remainder_check(fd: FormalDeformation, n: int) -> bool:
    """Middle sums over strictly positive orders equal the negated bracket
    coboundaries of the order-n terms."""
    base = fd.base
    d = base.dim
    s1, s2 = fd.series1(), fd.series2()
    c1 = base.p1.as_cochain()
    c2 = base.p2.as_cochain()
    t1 = s1[n].as_cochain()
    t2 = s2[n].as_cochain()
    b1 = mn_bracket(c1, t1).scale(-1)
    b2 = mn_bracket(c2, t2).scale(-1)
    bm = (mn_bracket(c1, t2) + mn_bracket(c2, t1)).scale(-1)
    mids = [(a, n - a) for a in range(1, n)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                m1 = vzero(d)
                m2 = vzero(d)
                mm = vzero(d)
                for (a, b) in mids:
                    m1 = vadd(m1, _assoc_defect(s1[a], s1[b], i, j, k))
                    m2 = vadd(m2, _assoc_defect(s2[a], s2[b], i, j, k))
                    mm = vadd(mm, _assoc_defect(s1[a], s2[b], i, j, k))
                    mm = vadd(mm, _assoc_defect(s2[b], s1[a], i, j, k))
                if m1 != b1.eval_basis((i, j, k)):
                    return False
                if m2 != b2.eval_basis((i, j, k)):
                    return False
                if mm != bm.eval_basis((i, j, k)):
                    return False
    return True


# -- the rigidity probe -----------------------------------------------------------

@dataclass
class Obstruction:
    order: int
    cocycle: CochainTuple
    reduced_class: tuple          # flat coordinates of the class modulo coboundaries


@dataclass
class RigidityReport:
    trivialized_to_order: int
    obstruction: Obstruction | None
    gauges: list                   # (order, matrix rows) in application order

    @property
    def trivial(self):
        return self.obstruction is None


def gauge_transform(fd: FormalDeformation, phi_rows, n: int) -> FormalDeformation:
    """Conjugate the deformation by Id + phi t^n, truncated at the order."""
    base = fd.base
    d = base.dim
    K = fd.order
    ident = identity_rows(d)

    def conjugate(series):
        # A[m] = sum over series terms with phi inserted into the arguments
        A = []
        for m in range(K + 1):
            acc = BilinearProduct.zero(d)
            if m <= K:
                acc = acc.add(series[m]) if m < len(series) else acc
            if m >= n and m - n < len(series):
                p = series[m - n]
                acc = acc.add(_compose_args(p, phi_rows, ident))
                acc = acc.add(_compose_args(p, ident, phi_rows))
            if m >= 2 * n and m - 2 * n < len(series):
                acc = acc.add(_compose_args(series[m - 2 * n], phi_rows, phi_rows))
            A.append(acc)
        # multiply by the truncated inverse sum_r (-phi t^n)^r
        out = []
        for m in range(K + 1):
            acc = BilinearProduct.zero(d)
            r = 0
            power = ident
            while r * n <= m:
                piece = A[m - r * n]
                mapped = _map_values(piece, power)
                acc = acc.add(mapped if r % 2 == 0 else mapped.scale(-1))
                r += 1
                power = mat_mul(power, phi_rows)
            out.append(acc)
        return out

    new1 = conjugate(fd.series1())
    new2 = conjugate(fd.series2())
    if new1[0] != base.p1 or new2[0] != base.p2:
        raise AssertionError("gauge transform must fix the base structure")
    return FormalDeformation(base, K, tuple(new1[1:]), tuple(new2[1:]))


def _compose_args(p: BilinearProduct, left_rows, right_rows):
    """(x, y) -> p(Lx, Ry) as a product table."""
    d = p.dim
    basis = [tuple(Fraction(1) if t == i else Fraction(0) for t in range(d)) for i in range(d)]
    return BilinearProduct(d, tuple(
        tuple(p.apply(mat_vec(left_rows, basis[i]), mat_vec(right_rows, basis[j]))
              for j in range(d))
        for i in range(d)))


def _map_values(p: BilinearProduct, rows):
    d = p.dim
    return BilinearProduct(d, tuple(
        tuple(mat_vec(rows, p.basis(i, j)) for j in range(d)) for i in range(d)))


def rigidity_probe(fd: FormalDeformation) -> RigidityReport:
    """Order-by-order trivialization by canonical linear gauge solves.

    Finds the lowest order with nonzero terms, solves the degree-1 gauge
    equation for it, conjugates, and repeats; an unsolvable system stops the
    probe and is reported with its nonzero degree-2 class.
    """
    chk = formal_check(fd)
    if not chk.ok:
        bad = chk.first_failure()
        raise ValueError(f"not a formal deformation: order {bad.order} equations fail")
    base = fd.base
    ctx = ComplexContext(base)
    d1 = ctx.differential_matrix(1)
    gauges = []
    current = fd
    order = 1
    while order <= fd.order:
        t1, t2 = current.terms1[order - 1], current.terms2[order - 1]
        if t1.is_zero() and t2.is_zero():
            order += 1
            continue
        target = CochainTuple(2, (t1.as_cochain(), t2.as_cochain())).scale(-1)
        rhs = ctx.flatten(target)
        sol = solve(d1, rhs)
        if sol is None:
            cocycle = CochainTuple(2, (t1.as_cochain(), t2.as_cochain()))
            flat = ctx.flatten(cocycle)
            reduced = _reduce_mod_image(flat, d1)
            return RigidityReport(order - 1, Obstruction(order, cocycle, reduced), gauges)
        phi = _unflatten_endo(sol, base.dim)
        current = gauge_transform(current, phi, order)
        for lower in range(order):
            if not (current.terms1[lower].is_zero() and current.terms2[lower].is_zero()):
                raise AssertionError("gauge step must clear all orders up to its own")
        gauges.append((order, phi))
        order += 1
    return RigidityReport(fd.order, None, gauges)


def _unflatten_endo(vec, d):
    """Flat coordinates of a degree-1 element back to matrix rows."""
    rows = [[Fraction(0)] * d for _ in range(d)]
    idx = 0
    for j in range(d):
        for c in range(d):
            rows[c][j] = vec[idx]
            idx += 1
    return tuple(tuple(r) for r in rows)


def _reduce_mod_image(flat, dmat):
    rows, pivots = _column_space_rref(dmat)
    v = list(flat)
    for row, piv in zip(rows, pivots):
        c = v[piv]
        if c != 0:
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)
