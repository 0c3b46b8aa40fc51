"""JSON schemas for every file the command line reads or writes.

All indices are 1-based on the wire and 0-based in memory; all scalars are
exact rational strings ("p/q" or "p"), so any emitted report can be
re-ingested without loss.  Schema violations raise SchemaError with a field
path, which the command line maps to exit code 2.
"""

from __future__ import annotations

from fractions import Fraction

from .algebras import (BilinearProduct, CompatiblePreLie, CompatibleRep,
                       RepMaps)
from .cochain import Cochain
from .cohomology import CochainTuple, CohomologyReport
from .deformation import FormalDeformation
from .extension import AbelianExtension, SectionData, TwoCocyclePair
from .linalg import format_rational, parse_rational


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing field")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{path}.{key}", f"expected {kind.__name__}")
    return val


def _rational(val, path):
    try:
        return parse_rational(val)
    except (ValueError, ZeroDivisionError, TypeError):
        raise SchemaError(path, f"not a rational literal: {val!r}")


def _index(val, dim, path):
    if not isinstance(val, int) or not (1 <= val <= dim):
        raise SchemaError(path, f"index must be an integer in 1..{dim}")
    return val - 1


# -- algebras -------------------------------------------------------------------

def parse_product(entries, dim, path):
    if not isinstance(entries, list):
        raise SchemaError(path, "expected a list of structure constants")
    table = {}
    for pos, e in enumerate(entries):
        p = f"{path}[{pos}]"
        i = _index(_need(e, "i", p), dim, f"{p}.i")
        j = _index(_need(e, "j", p), dim, f"{p}.j")
        k = _index(_need(e, "k", p), dim, f"{p}.k")
        c = _rational(_need(e, "c", p), f"{p}.c")
        table[(i, j, k)] = table.get((i, j, k), Fraction(0)) + c
    return BilinearProduct.from_entries(dim, table)


def dump_product(p: BilinearProduct):
    out = []
    for i in range(p.dim):
        for j in range(p.dim):
            for k, c in enumerate(p.basis(i, j)):
                if c != 0:
                    out.append({"i": i + 1, "j": j + 1, "k": k + 1,
                                "c": format_rational(c)})
    return out


def parse_algebra(obj, path="algebra") -> CompatiblePreLie:
    dim = _need(obj, "dim", path, int)
    if dim < 1:
        raise SchemaError(f"{path}.dim", "dimension must be >= 1")
    p1 = parse_product(_need(obj, "product1", path), dim, f"{path}.product1")
    p2 = parse_product(_need(obj, "product2", path), dim, f"{path}.product2")
    return CompatiblePreLie(dim, p1, p2)


def dump_algebra(a: CompatiblePreLie):
    return {"dim": a.dim, "product1": dump_product(a.p1), "product2": dump_product(a.p2)}


def _parse_matrix(obj, rows, cols, path):
    if not isinstance(obj, list) or len(obj) != rows:
        raise SchemaError(path, f"expected {rows} rows")
    out = []
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{path}[{r}]", f"expected {cols} entries")
        out.append(tuple(_rational(v, f"{path}[{r}][{c}]") for c, v in enumerate(row)))
    return tuple(out)


def _dump_matrix(rows):
    return [[format_rational(c) for c in row] for row in rows]


def parse_rep(obj, algebra_dim, path="representation") -> CompatibleRep:
    m = _need(obj, "dim_v", path, int)
    if m < 1:
        raise SchemaError(f"{path}.dim_v", "fiber dimension must be >= 1")

    def maps(key):
        lst = _need(obj, key, path)
        if not isinstance(lst, list) or len(lst) != algebra_dim:
            raise SchemaError(f"{path}.{key}", f"expected {algebra_dim} matrices")
        return RepMaps(algebra_dim, m,
                       tuple(_parse_matrix(mat, m, m, f"{path}.{key}[{i}]")
                             for i, mat in enumerate(lst)))

    return CompatibleRep(maps("rho"), maps("mu"), maps("rho_tilde"), maps("mu_tilde"))


def dump_rep(r: CompatibleRep):
    return {
        "dim_v": r.rep_dim,
        "rho": [_dump_matrix(m) for m in r.rho.mats],
        "mu": [_dump_matrix(m) for m in r.mu.mats],
        "rho_tilde": [_dump_matrix(m) for m in r.rho_t.mats],
        "mu_tilde": [_dump_matrix(m) for m in r.mu_t.mats],
    }


# -- cochains -------------------------------------------------------------------

def parse_cochain(obj, source_dim, target_dim, path="cochain", arity=None) -> Cochain:
    n = _need(obj, "arity", path, int)
    if arity is not None and n != arity:
        raise SchemaError(f"{path}.arity", f"expected arity {arity}")
    if n < 1:
        raise SchemaError(f"{path}.arity", "arity must be >= 1")
    entries = _need(obj, "entries", path, list)
    coeffs = {}
    for pos, e in enumerate(entries):
        p = f"{path}.entries[{pos}]"
        S_raw = _need(e, "S", p, list)
        if len(S_raw) != n - 1:
            raise SchemaError(f"{p}.S", f"expected {n - 1} indices")
        S = tuple(_index(s, source_dim, f"{p}.S[{t}]") for t, s in enumerate(S_raw))
        if list(S) != sorted(set(S)):
            raise SchemaError(f"{p}.S", "indices must be strictly increasing")
        j = _index(_need(e, "j", p), source_dim, f"{p}.j")
        value = _need(e, "value", p, list)
        if len(value) != target_dim:
            raise SchemaError(f"{p}.value", f"expected {target_dim} components")
        vec = tuple(_rational(v, f"{p}.value[{t}]") for t, v in enumerate(value))
        if (S, j) in coeffs:
            raise SchemaError(p, f"duplicate key (S={S_raw}, j={e.get('j')})")
        coeffs[(S, j)] = vec
    return Cochain(n, source_dim, target_dim, coeffs)


def dump_cochain(c: Cochain):
    entries = []
    for (S, j) in sorted(c.coeffs, key=lambda k: (tuple(reversed(k[0])), k[1])):
        entries.append({
            "S": [s + 1 for s in S],
            "j": j + 1,
            "value": [format_rational(v) for v in c.coeffs[(S, j)]],
        })
    return {"arity": c.arity, "entries": entries}


def dump_cochain_tuple(t: CochainTuple):
    return {"degree": t.degree, "parts": [dump_cochain(p) for p in t.parts]}


# -- deformations -----------------------------------------------------------------

def parse_infinitesimal(obj, dim, path="deformation"):
    w1 = parse_cochain(_need(obj, "omega1", path), dim, dim, f"{path}.omega1", arity=2)
    w2 = parse_cochain(_need(obj, "omega2", path), dim, dim, f"{path}.omega2", arity=2)
    return w1, w2


def parse_formal(obj, base: CompatiblePreLie, path="deformation") -> FormalDeformation:
    order = _need(obj, "order", path, int)
    if order < 1:
        raise SchemaError(f"{path}.order", "order must be >= 1")
    d = base.dim

    def terms(key):
        lst = _need(obj, key, path, list)
        if len(lst) != order:
            raise SchemaError(f"{path}.{key}", f"expected {order} cochains")
        out = []
        for i, c in enumerate(lst):
            ch = parse_cochain(c, d, d, f"{path}.{key}[{i}]", arity=2)
            out.append(BilinearProduct.from_cochain(ch))
        return tuple(out)

    return FormalDeformation(base, order, terms("terms1"), terms("terms2"))


def dump_formal(fd: FormalDeformation):
    return {
        "order": fd.order,
        "terms1": [dump_cochain(t.as_cochain()) for t in fd.terms1],
        "terms2": [dump_cochain(t.as_cochain()) for t in fd.terms2],
    }


def is_formal_schema(obj):
    return isinstance(obj, dict) and "order" in obj


# -- extensions -------------------------------------------------------------------

def parse_cocycle_pair(obj, dim, fiber_dim, path="cocycle") -> TwoCocyclePair:
    theta = parse_cochain(_need(obj, "theta", path), dim, fiber_dim,
                          f"{path}.theta", arity=2)
    theta_t = parse_cochain(_need(obj, "theta_tilde", path), dim, fiber_dim,
                            f"{path}.theta_tilde", arity=2)
    return TwoCocyclePair(theta, theta_t)


def dump_cocycle_pair(c: TwoCocyclePair):
    return {"theta": dump_cochain(c.theta), "theta_tilde": dump_cochain(c.theta_t)}


def parse_extension(obj, path="extension") -> AbelianExtension:
    base_dim = _need(obj, "base_dim", path, int)
    fiber_dim = _need(obj, "fiber_dim", path, int)
    total = parse_algebra(obj, path)
    if total.dim != base_dim + fiber_dim:
        raise SchemaError(f"{path}.dim", "dim must equal base_dim + fiber_dim")
    base = CompatiblePreLie(
        base_dim,
        _restrict(total.p1, base_dim, path),
        _restrict(total.p2, base_dim, path),
    )
    return AbelianExtension(base, fiber_dim, total)


def _restrict(p: BilinearProduct, d, path):
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            v = p.basis(i, j)
            row.append(tuple(v[:d]))
        table.append(tuple(row))
    return BilinearProduct(d, tuple(table))


def dump_extension(ext: AbelianExtension):
    out = dump_algebra(ext.total)
    out["base_dim"] = ext.base.dim
    out["fiber_dim"] = ext.fiber_dim
    return out


def parse_section(obj, total_dim, base_dim, path="section") -> SectionData:
    rows = _parse_matrix(obj, total_dim, base_dim, path)
    return SectionData(rows)


def dump_section(s: SectionData):
    return _dump_matrix(s.rows)


# -- reports ----------------------------------------------------------------------

def dump_cohomology_report(rep: CohomologyReport, with_bases=True):
    out = {
        "degree": rep.degree,
        "dim_cocycles": rep.dim_cocycles,
        "dim_coboundaries": rep.dim_coboundaries,
        "dim_H": rep.dim_H,
    }
    if with_bases:
        out["representatives"] = [dump_cochain_tuple(t) for t in rep.representatives]
    return out
