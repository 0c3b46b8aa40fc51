"""Abelian extensions and their classification by degree-2 cohomology.

An abelian extension is materialized on the standard ordered basis: base
vectors first, fiber vectors last, with the fiber multiplying to zero.  A
section transports the big structure back to cocycle + representation data;
changing the section shifts the cocycle by a coboundary, so isomorphism
testing reduces to one linear solve instead of a matrix search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import (BilinearProduct, CheckReport, CompatiblePreLie,
                       CompatibleRep, RepMaps, validate_compatible,
                       validate_rep)
from .cochain import Cochain
from .cohomology import (CochainTuple, CohomologyReport, ComplexContext,
                         cohomology_group, partial_total)
from .linalg import ONE, ZERO, mat_vec, solve, viszero, vzero


@dataclass(frozen=True)
class TwoCocyclePair:
    theta: Cochain
    theta_t: Cochain

    def __post_init__(self):
        for c in (self.theta, self.theta_t):
            if c.arity != 2:
                raise ValueError("cocycle components must have arity 2")
        if (self.theta.source_dim != self.theta_t.source_dim
                or self.theta.target_dim != self.theta_t.target_dim):
            raise ValueError("cocycle components must share spaces")

    def as_tuple(self):
        return CochainTuple(2, (self.theta, self.theta_t))

    @classmethod
    def zero(cls, dim, fiber_dim):
        z = Cochain.zero(2, dim, fiber_dim)
        return cls(z, z)


@dataclass(frozen=True)
class AbelianExtension:
    base: CompatiblePreLie
    fiber_dim: int
    total: CompatiblePreLie

    @property
    def total_dim(self):
        return self.base.dim + self.fiber_dim

    def inject(self, u):
        """Fiber vector into the total space."""
        return vzero(self.base.dim) + tuple(u)

    def project(self, w):
        """Total vector onto the base."""
        return tuple(w[:self.base.dim])

    def fiber_part(self, w):
        return tuple(w[self.base.dim:])


@dataclass(frozen=True)
class SectionData:
    """A right inverse of the projection, as a (d+m) x d column matrix."""

    rows: tuple

    @classmethod
    def canonical(cls, dim, fiber_dim):
        rows = tuple(tuple(ONE if r == c else ZERO for c in range(dim))
                     for r in range(dim + fiber_dim))
        return cls(rows)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def apply(self, x):
        return mat_vec(self.rows, x)


def is_section(ext: AbelianExtension, s: SectionData) -> bool:
    d = ext.base.dim
    if len(s.rows) != ext.total_dim or any(len(r) != d for r in s.rows):
        return False
    for j in range(d):
        col = s.column(j)
        if ext.project(col) != tuple(ONE if t == j else ZERO for t in range(d)):
            return False
    return True


def check_extension_shape(ext: AbelianExtension) -> CheckReport:
    """Block conditions: fiber multiplies to zero, the projection is a
    homomorphism (base block reproduces the base products), and products
    never escape their blocks."""
    rep = CheckReport()
    d, m = ext.base.dim, ext.fiber_dim
    for tag, pt, pb in (("product1", ext.total.p1, ext.base.p1),
                        ("product2", ext.total.p2, ext.base.p2)):
        for i in range(d):
            for j in range(d):
                if ext.project(pt.basis(i, j)) != tuple(pb.basis(i, j)):
                    rep.add(f"projection:{tag}", (i, j))
        for a in range(m):
            for b in range(m):
                if not viszero(pt.basis(d + a, d + b)):
                    rep.add(f"abelian_fiber:{tag}", (a, b))
        for i in range(d):
            for a in range(m):
                if not viszero(ext.project(pt.basis(i, d + a))):
                    rep.add(f"fiber_ideal:{tag}", (i, a))
                if not viszero(ext.project(pt.basis(d + a, i))):
                    rep.add(f"fiber_ideal:{tag}", (a, i))
    return rep


def build_extension(base: CompatiblePreLie, rep: CompatibleRep,
                    cocycle: TwoCocyclePair) -> AbelianExtension:
    """Total structure from cocycle + representation data."""
    bad = validate_rep(base, rep)
    if not bad.ok:
        raise ValueError(f"representation fails its axioms: {bad.witness()}")
    closed = partial_total(base, rep, cocycle.as_tuple())
    if not closed.is_zero():
        raise ValueError("cocycle pair is not closed")
    d, m = base.dim, rep.rep_dim
    n = d + m

    def build(p, theta, rho, mu):
        table = [[vzero(n) for _ in range(n)] for _ in range(n)]
        for i in range(d):
            for j in range(d):
                table[i][j] = tuple(p.basis(i, j)) + tuple(theta.eval_basis((i, j)))
        for i in range(d):
            for b in range(m):
                table[i][d + b] = vzero(d) + tuple(rho.mat(i)[t][b] for t in range(m))
        for b in range(m):
            for j in range(d):
                table[d + b][j] = vzero(d) + tuple(mu.mat(j)[t][b] for t in range(m))
        return BilinearProduct(n, table)

    total = CompatiblePreLie(
        n,
        build(base.p1, cocycle.theta, rep.rho, rep.mu),
        build(base.p2, cocycle.theta_t, rep.rho_t, rep.mu_t),
    )
    ext = AbelianExtension(base, m, total)
    ok = validate_compatible(total)
    if not ok.ok:
        raise AssertionError(f"built extension fails compatibility: {ok.witness()}")
    return ext


def extract_from_section(ext: AbelianExtension, s: SectionData):
    """Representation and cocycle pair induced by a section."""
    if not is_section(ext, s):
        raise ValueError("map is not a section of the projection")
    d, m = ext.base.dim, ext.fiber_dim

    def extract(p, pb):
        rho_mats = []
        mu_mats = []
        for i in range(d):
            si = s.column(i)
            rho_cols = []
            mu_cols = []
            for b in range(m):
                u = ext.inject(tuple(ONE if t == b else ZERO for t in range(m)))
                rho_cols.append(ext.fiber_part(p.apply(si, u)))
                mu_cols.append(ext.fiber_part(p.apply(u, si)))
            rho_mats.append(tuple(tuple(col[r] for col in rho_cols) for r in range(m)))
            mu_mats.append(tuple(tuple(col[r] for col in mu_cols) for r in range(m)))
        theta_coeffs = {}
        for i in range(d):
            for j in range(d):
                prod = p.apply(s.column(i), s.column(j))
                val = tuple(a - b for a, b in zip(prod, s.apply(pb.basis(i, j))))
                if not viszero(ext.project(val)):
                    raise AssertionError("section defect must land in the fiber")
                fib = ext.fiber_part(val)
                if not viszero(fib):
                    theta_coeffs[((i,), j)] = fib
        theta = Cochain(2, d, m, theta_coeffs)
        return RepMaps(d, m, rho_mats), RepMaps(d, m, mu_mats), theta

    rho, mu, theta = extract(ext.total.p1, ext.base.p1)
    rho_t, mu_t, theta_t = extract(ext.total.p2, ext.base.p2)
    return CompatibleRep(rho, mu, rho_t, mu_t), TwoCocyclePair(theta, theta_t)


def cohomologous_check(base: CompatiblePreLie, rep: CompatibleRep,
                       c1: TwoCocyclePair, c2: TwoCocyclePair):
    """A map with c1 - c2 as its coboundary, or None.

    Both displayed equations are one joint linear system over the degree-1
    total space; the canonical free-variable-zero solution is returned as a
    (fiber_dim x dim) matrix.
    """
    ctx = ComplexContext(base, rep)
    d1 = ctx.differential_matrix(1)
    diff = c1.as_tuple() - c2.as_tuple()
    rhs = ctx.flatten(diff)
    sol = solve(d1, rhs)
    if sol is None:
        return None
    d, m = base.dim, rep.rep_dim
    rows = [[ZERO] * d for _ in range(m)]
    idx = 0
    for j in range(d):
        for c in range(m):
            rows[c][j] = sol[idx]
            idx += 1
    return tuple(tuple(r) for r in rows)


def build_isomorphism(base: CompatiblePreLie, rep: CompatibleRep,
                      c1: TwoCocyclePair, c2: TwoCocyclePair, phi_rows):
    """The shear x + u -> x + u + phi(x) between the two built extensions.

    phi must witness cohomologous_check(c1, c2); the result is verified to be
    a homomorphism for both products, fiber-identical, and projection
    compatible.
    """
    d, m = base.dim, rep.rep_dim
    ctx = ComplexContext(base, rep)
    boundary = ctx.differential(CochainTuple(1, (_phi_cochain(phi_rows, d, m),)))
    diff = c1.as_tuple() - c2.as_tuple()
    if not (boundary - diff).is_zero():
        raise ValueError("phi does not witness the cohomology relation")
    e1 = build_extension(base, rep, c1)
    e2 = build_extension(base, rep, c2)
    n = d + m
    zeta = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    for j in range(d):
        for r in range(m):
            zeta[d + r][j] = phi_rows[r][j]
    zeta = tuple(tuple(r) for r in zeta)
    report = CheckReport()
    for tag, pa, pb in (("product1", e1.total.p1, e2.total.p1),
                        ("product2", e1.total.p2, e2.total.p2)):
        for i in range(n):
            for j in range(n):
                lhs = mat_vec(zeta, pa.basis(i, j))
                zi = tuple(row[i] for row in zeta)
                zj = tuple(row[j] for row in zeta)
                rhs = pb.apply(zi, zj)
                if lhs != tuple(rhs):
                    report.add(f"isomorphism:{tag}", (i, j))
    for a in range(m):
        col = tuple(row[d + a] for row in zeta)
        if col != vzero(d) + tuple(ONE if t == a else ZERO for t in range(m)):
            report.add("fiber_identity", (a,))
    for j in range(n):
        if tuple(zeta[r][j] for r in range(d)) != tuple(ONE if (j < d and r == j) else ZERO
                                                        for r in range(d)):
            report.add("projection_compat", (j,))
    return zeta, report


def _phi_cochain(phi_rows, d, m):
    return Cochain(1, d, m, {((), j): tuple(phi_rows[r][j] for r in range(m))
                             for j in range(d)})


def classify(base: CompatiblePreLie, rep: CompatibleRep, n: int = 2) -> CohomologyReport:
    """Cohomology of the coefficient complex; degree 2 classifies extensions."""
    bad = validate_rep(base, rep)
    if not bad.ok:
        raise ValueError(f"representation fails its axioms: {bad.witness()}")
    return cohomology_group(ComplexContext(base, rep), n)
