"""Structure-constant algebras and validators for their defining identities.

Products are stored as dense tables: table[i][j] is the coordinate vector of
e_i o e_j.  All identity checks run over basis tuples only; multilinearity
makes that exhaustive.  Validators return witness lists rather than bare
booleans so property-test failures stay diagnosable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cochain import Cochain, mn_bracket
from .linalg import (ONE, ZERO, mat_add, mat_mul, mat_scale, mat_vec,
                     vadd, vscale, vsub, vzero)


@dataclass(frozen=True)
class Violation:
    law: str
    at: tuple


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, at):
        self.violations.append(Violation(law, tuple(at)))

    def merge(self, other):
        self.violations.extend(other.violations)
        return self

    def witness(self):
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


class BilinearProduct:
    """A bilinear product encoded by structure constants."""

    __slots__ = ("dim", "table")

    def __init__(self, dim, table):
        table = tuple(tuple(tuple(Fraction(c) for c in cell) for cell in row)
                      for row in table)
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ValueError("structure-constant table must be dim x dim")
        for row in table:
            for cell in row:
                if len(cell) != dim:
                    raise ValueError("structure-constant vectors must have length dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "table", table)

    def __setattr__(self, *a):
        raise AttributeError("BilinearProduct is immutable")

    @classmethod
    def zero(cls, dim):
        z = vzero(dim)
        return cls(dim, tuple(tuple(z for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_entries(cls, dim, entries):
        """entries: mapping (i, j, k) -> coefficient of e_k in e_i o e_j."""
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), c in entries.items():
            table[i][j][k] = Fraction(c)
        return cls(dim, table)

    def basis(self, i, j):
        return self.table[i][j]

    def apply(self, x, y):
        """Product of two coordinate vectors (or basis indices)."""
        if isinstance(x, int) and isinstance(y, int):
            return self.table[x][y]
        out = vzero(self.dim)
        xs = ((x, ONE),) if isinstance(x, int) else tuple(enumerate(x))
        ys = ((y, ONE),) if isinstance(y, int) else tuple(enumerate(y))
        for i, a in xs:
            if a == 0:
                continue
            for j, b in ys:
                if b == 0:
                    continue
                out = vadd(out, vscale(a * b, self.table[i][j]))
        return out

    def is_zero(self):
        return all(all(c == 0 for c in cell) for row in self.table for cell in row)

    def __eq__(self, other):
        return (isinstance(other, BilinearProduct) and self.dim == other.dim
                and self.table == other.table)

    def __hash__(self):
        return hash((self.dim, self.table))

    def __repr__(self):
        nz = sum(1 for row in self.table for cell in row if any(cell))
        return f"BilinearProduct(dim={self.dim}, {nz} nonzero products)"

    def add(self, other):
        return BilinearProduct(self.dim, tuple(
            tuple(vadd(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.table, other.table)))

    def scale(self, c):
        c = Fraction(c)
        return BilinearProduct(self.dim, tuple(
            tuple(vscale(c, cell) for cell in row) for row in self.table))

    def commutator(self):
        """The antisymmetrized product x o y - y o x."""
        return BilinearProduct(self.dim, tuple(
            tuple(vsub(self.table[i][j], self.table[j][i]) for j in range(self.dim))
            for i in range(self.dim)))

    def as_cochain(self) -> Cochain:
        coeffs = {((i,), j): self.table[i][j]
                  for i in range(self.dim) for j in range(self.dim)}
        return Cochain(2, self.dim, self.dim, coeffs)

    @classmethod
    def from_cochain(cls, c: Cochain):
        if c.arity != 2 or c.source_dim != c.target_dim:
            raise ValueError("need an endomorphism-valued arity-2 cochain")
        d = c.source_dim
        return cls(d, tuple(tuple(c.coeff((i,), j) for j in range(d)) for i in range(d)))


@dataclass(frozen=True)
class CompatiblePreLie:
    """A pair of products on one space; validity is checked, not assumed."""

    dim: int
    p1: BilinearProduct
    p2: BilinearProduct

    def __post_init__(self):
        if self.p1.dim != self.dim or self.p2.dim != self.dim:
            raise ValueError("product dimensions must match")

    @classmethod
    def zero(cls, dim):
        z = BilinearProduct.zero(dim)
        return cls(dim, z, z)


@dataclass(frozen=True)
class CompatibleLie:
    dim: int
    b1: BilinearProduct
    b2: BilinearProduct


class RepMaps:
    """A linear map into endomorphisms: one rep_dim x rep_dim matrix per basis vector."""

    __slots__ = ("algebra_dim", "rep_dim", "mats")

    def __init__(self, algebra_dim, rep_dim, mats):
        mats = tuple(tuple(tuple(Fraction(c) for c in row) for row in m) for m in mats)
        if len(mats) != algebra_dim:
            raise ValueError("need one matrix per algebra basis vector")
        for m in mats:
            if len(m) != rep_dim or any(len(row) != rep_dim for row in m):
                raise ValueError("representation matrices must be rep_dim x rep_dim")
        object.__setattr__(self, "algebra_dim", algebra_dim)
        object.__setattr__(self, "rep_dim", rep_dim)
        object.__setattr__(self, "mats", mats)

    def __setattr__(self, *a):
        raise AttributeError("RepMaps is immutable")

    @classmethod
    def zero(cls, algebra_dim, rep_dim):
        z = tuple(tuple(vzero(rep_dim) for _ in range(rep_dim)) for _ in range(algebra_dim))
        return cls(algebra_dim, rep_dim, z)

    def mat(self, i):
        return self.mats[i]

    def of_vector(self, x):
        """Matrix of the image of a coordinate vector."""
        out = tuple(vzero(self.rep_dim) for _ in range(self.rep_dim))
        for i, c in enumerate(x):
            if c != 0:
                out = mat_add(out, mat_scale(c, self.mats[i]))
        return out

    def apply(self, i, u):
        return mat_vec(self.mats[i], u)

    def sub(self, other):
        return RepMaps(self.algebra_dim, self.rep_dim, tuple(
            mat_add(a, mat_scale(-1, b)) for a, b in zip(self.mats, other.mats)))

    def __eq__(self, other):
        return (isinstance(other, RepMaps) and self.algebra_dim == other.algebra_dim
                and self.rep_dim == other.rep_dim and self.mats == other.mats)

    def __hash__(self):
        return hash((self.algebra_dim, self.rep_dim, self.mats))


@dataclass(frozen=True)
class CompatibleRep:
    rho: RepMaps
    mu: RepMaps
    rho_t: RepMaps
    mu_t: RepMaps

    def __post_init__(self):
        dims = {(m.algebra_dim, m.rep_dim) for m in (self.rho, self.mu, self.rho_t, self.mu_t)}
        if len(dims) != 1:
            raise ValueError("all four map families must share dimensions")

    @property
    def algebra_dim(self):
        return self.rho.algebra_dim

    @property
    def rep_dim(self):
        return self.rho.rep_dim


# -- validators ---------------------------------------------------------------

def validate_pre_lie(p: BilinearProduct) -> CheckReport:
    """Associator symmetry in the first two arguments, on all basis triples."""
    rep = CheckReport()
    d = p.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = vsub(p.apply(p.basis(i, j), k), p.apply(i, p.basis(j, k)))
                rhs = vsub(p.apply(p.basis(j, i), k), p.apply(j, p.basis(i, k)))
                if lhs != rhs:
                    rep.add("pre_lie", (i, j, k))
    return rep


def mixed_compat_defect(p1, p2, i, j, k):
    """The eight-term mixed identity evaluated at a basis triple."""
    x, y, z = i, j, k
    val = p1.apply(p2.basis(x, y), z)
    val = vadd(val, p2.apply(p1.basis(x, y), z))
    val = vsub(val, p1.apply(x, p2.basis(y, z)))
    val = vsub(val, p2.apply(x, p1.basis(y, z)))
    val = vsub(val, p1.apply(p2.basis(y, x), z))
    val = vsub(val, p2.apply(p1.basis(y, x), z))
    val = vadd(val, p1.apply(y, p2.basis(x, z)))
    val = vadd(val, p2.apply(y, p1.basis(x, z)))
    return val


def validate_compatible(a: CompatiblePreLie) -> CheckReport:
    """Both products pre-Lie plus the eight-term mixed identity."""
    rep = CheckReport()
    for name, p in (("product1", a.p1), ("product2", a.p2)):
        sub = validate_pre_lie(p)
        for v in sub.violations:
            rep.add(f"pre_lie:{name}", v.at)
    d = a.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if any(c != 0 for c in mixed_compat_defect(a.p1, a.p2, i, j, k)):
                    rep.add("compatibility", (i, j, k))
    return rep


def mc_equations(a: CompatiblePreLie):
    """The three graded-bracket conditions equivalent to compatibility.

    Returns ([pi1,pi1], [pi2,pi2], [pi1,pi2]) as arity-3 cochains; the pair
    of products is compatible pre-Lie iff all three vanish.
    """
    c1, c2 = a.p1.as_cochain(), a.p2.as_cochain()
    return mn_bracket(c1, c1), mn_bracket(c2, c2), mn_bracket(c1, c2)


def validate_lie(b: BilinearProduct) -> CheckReport:
    rep = CheckReport()
    d = b.dim
    for i in range(d):
        for j in range(d):
            if b.basis(i, j) != vscale(-1, b.basis(j, i)):
                rep.add("antisymmetry", (i, j))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                jac = vadd(vadd(b.apply(b.basis(i, j), k), b.apply(b.basis(j, k), i)),
                           b.apply(b.basis(k, i), j))
                if any(c != 0 for c in jac):
                    rep.add("jacobi", (i, j, k))
    return rep


def validate_compatible_lie(cl: CompatibleLie) -> CheckReport:
    rep = CheckReport()
    for name, b in (("bracket1", cl.b1), ("bracket2", cl.b2)):
        for v in validate_lie(b).violations:
            rep.add(f"{v.law}:{name}", v.at)
    d = cl.dim
    b1, b2 = cl.b1, cl.b2
    for i in range(d):
        for j in range(d):
            for k in range(d):
                val = b1.apply(b2.basis(i, j), k)
                val = vadd(val, b1.apply(b2.basis(j, k), i))
                val = vadd(val, b1.apply(b2.basis(k, i), j))
                val = vadd(val, b2.apply(b1.basis(i, j), k))
                val = vadd(val, b2.apply(b1.basis(j, k), i))
                val = vadd(val, b2.apply(b1.basis(k, i), j))
                if any(c != 0 for c in val):
                    rep.add("mixed_jacobi", (i, j, k))
    return rep


def pencil(a: CompatiblePreLie, k1, k2) -> BilinearProduct:
    """The linear combination k1 (x . y) + k2 (x * y)."""
    return a.p1.scale(k1).add(a.p2.scale(k2))


def sub_adjacent(a: CompatiblePreLie) -> CompatibleLie:
    """Commutator brackets of both products."""
    return CompatibleLie(a.dim, a.p1.commutator(), a.p2.commutator())


# -- representations ----------------------------------------------------------

def _mats_equal(m1, m2):
    return m1 == m2


def _commutator(m1, m2):
    return mat_add(mat_mul(m1, m2), mat_scale(-1, mat_mul(m2, m1)))


def _check_lie_rep(bracket: BilinearProduct, rho: RepMaps, rep: CheckReport, tag):
    d = bracket.dim
    for i in range(d):
        for j in range(d):
            lhs = rho.of_vector(bracket.basis(i, j))
            rhs = _commutator(rho.mat(i), rho.mat(j))
            if not _mats_equal(lhs, rhs):
                rep.add(tag, (i, j))


def _check_pre_lie_rep(p: BilinearProduct, rho: RepMaps, mu: RepMaps,
                       rep: CheckReport, tag):
    _check_lie_rep(p.commutator(), rho, rep, f"{tag}:lie_action")
    d = p.dim
    for i in range(d):
        for j in range(d):
            lhs = mat_add(mat_mul(mu.mat(j), mu.mat(i)),
                          mat_scale(-1, mu.of_vector(p.basis(i, j))))
            rhs = mat_add(mat_mul(mu.mat(j), rho.mat(i)),
                          mat_scale(-1, mat_mul(rho.mat(i), mu.mat(j))))
            if not _mats_equal(lhs, rhs):
                rep.add(f"{tag}:right_action", (i, j))


def validate_rep(a: CompatiblePreLie, r: CompatibleRep) -> CheckReport:
    """Representation axioms for both products plus the two mixed identities."""
    rep = CheckReport()
    if r.algebra_dim != a.dim:
        raise ValueError("representation is over a different algebra dimension")
    rho, mu, rho_t, mu_t = r.rho, r.mu, r.rho_t, r.mu_t
    _check_pre_lie_rep(a.p1, rho, mu, rep, "rep1")
    _check_pre_lie_rep(a.p2, rho_t, mu_t, rep, "rep2")
    d = a.dim

    def mixed_left(i, j):
        out = rho.of_vector(a.p2.basis(i, j))
        out = mat_add(out, rho_t.of_vector(a.p1.basis(i, j)))
        out = mat_add(out, mat_scale(-1, mat_mul(rho.mat(i), rho_t.mat(j))))
        out = mat_add(out, mat_scale(-1, mat_mul(rho_t.mat(i), rho.mat(j))))
        return out

    for i in range(d):
        for j in range(d):
            if not _mats_equal(mixed_left(i, j), mixed_left(j, i)):
                rep.add("mixed_left_symmetry", (i, j))
            lhs = mat_mul(mu.mat(j), rho_t.mat(i))
            lhs = mat_add(lhs, mat_scale(-1, mat_mul(rho.mat(i), mu_t.mat(j))))
            lhs = mat_add(lhs, mat_scale(-1, mat_mul(mu.mat(j), mu_t.mat(i))))
            lhs = mat_add(lhs, mu.of_vector(a.p2.basis(i, j)))
            rhs = mat_scale(-1, mat_mul(mu_t.mat(j), rho.mat(i)))
            rhs = mat_add(rhs, mat_mul(rho_t.mat(i), mu.mat(j)))
            rhs = mat_add(rhs, mat_mul(mu_t.mat(j), mu.mat(i)))
            rhs = mat_add(rhs, mat_scale(-1, mu_t.of_vector(a.p1.basis(i, j))))
            if not _mats_equal(lhs, rhs):
                rep.add("mixed_right", (i, j))
    return rep


def regular_rep(a: CompatiblePreLie) -> CompatibleRep:
    """Left and right multiplication operators for both products."""
    d = a.dim

    def left(p):
        return RepMaps(d, d, tuple(
            tuple(tuple(p.basis(i, j)[k] for j in range(d)) for k in range(d))
            for i in range(d)))

    def right(p):
        return RepMaps(d, d, tuple(
            tuple(tuple(p.basis(j, i)[k] for j in range(d)) for k in range(d))
            for i in range(d)))

    return CompatibleRep(left(a.p1), right(a.p1), left(a.p2), right(a.p2))


def semidirect(a: CompatiblePreLie, r: CompatibleRep) -> CompatiblePreLie:
    """Product on g + V twisting the fiber by the representation; V acts trivially."""
    bad = validate_rep(a, r)
    if not bad.ok:
        raise ValueError(f"representation fails its axioms: {bad.witness()}")
    d, m = a.dim, r.rep_dim
    n = d + m

    def build(p, rho, mu):
        table = [[vzero(n) for _ in range(n)] for _ in range(n)]
        for i in range(d):
            for j in range(d):
                table[i][j] = tuple(p.basis(i, j)) + vzero(m)
        for i in range(d):
            for b in range(m):
                col = tuple(rho.mat(i)[k][b] for k in range(m))
                table[i][d + b] = vzero(d) + col
        for b in range(m):
            for j in range(d):
                col = tuple(mu.mat(j)[k][b] for k in range(m))
                table[d + b][j] = vzero(d) + col
        return BilinearProduct(n, table)

    return CompatiblePreLie(n, build(a.p1, r.rho, r.mu), build(a.p2, r.rho_t, r.mu_t))


def induced_lie_rep(r: CompatibleRep):
    """(rho - mu, rho_t - mu_t): the action on the commutator brackets."""
    return r.rho.sub(r.mu), r.rho_t.sub(r.mu_t)


def validate_compatible_lie_rep(cl: CompatibleLie, r1: RepMaps, r2: RepMaps) -> CheckReport:
    """Lie actions for each bracket plus the mixed compatibility identity."""
    rep = CheckReport()
    _check_lie_rep(cl.b1, r1, rep, "lie_rep:bracket1")
    _check_lie_rep(cl.b2, r2, rep, "lie_rep:bracket2")
    d = cl.dim
    for i in range(d):
        for j in range(d):
            lhs = mat_add(r1.of_vector(cl.b2.basis(i, j)), r2.of_vector(cl.b1.basis(i, j)))
            rhs = mat_add(_commutator(r1.mat(i), r2.mat(j)),
                          mat_scale(-1, _commutator(r1.mat(j), r2.mat(i))))
            if not _mats_equal(lhs, rhs):
                rep.add("mixed_rep", (i, j))
    return rep


def is_homomorphism(phi_rows, src: CompatiblePreLie, dst: CompatiblePreLie) -> CheckReport:
    """phi(e_i o e_j) = phi(e_i) o' phi(e_j) for both products, all basis pairs."""
    rep = CheckReport()
    d = src.dim
    images = [tuple(row[i] for row in phi_rows) for i in range(d)]
    for name, ps, pd in (("product1", src.p1, dst.p1), ("product2", src.p2, dst.p2)):
        for i in range(d):
            for j in range(d):
                lhs = mat_vec(phi_rows, ps.basis(i, j))
                rhs = pd.apply(images[i], images[j])
                if lhs != tuple(rhs):
                    rep.add(f"homomorphism:{name}", (i, j))
    return rep
