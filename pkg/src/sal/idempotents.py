"""Idempotents and square-zero elements of T_beta lying in block spans.

Coordinates here are spanning coordinates: ``x = (x_1, ..., x_n)`` stands
for ``sum_k x_k e_k``. Adding the same constant to every entry gives the
same element, since the ``e_k`` sum to zero.

``x o x = eps x`` holds exactly when every point ``i`` has the same residual

    x_i^2 - eps x_i + sum over blocks B through i of Q_{i,B}(x)

with ``Q_{i,B}(x) = 2 alpha x_i (x_j + x_k) + 2 beta x_j x_k`` for
``B = {i, j, k}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .algebra import (Algebra, AlgebraParams, build_simplicial, build_t_beta, is_simple,
                      killing_form, mult_operator, multiply)
from .designs import SteinerTripleSystem, construct_ag, is_hall, parallel_classes
from .errors import DimMismatch, ExcludedBeta, PointNotInBlock
from .exact import ONE, ZERO, Matrix, Subspace, to_scalar

# (a, b) seeds for rational points on the lambda circle
LAMBDA_SEEDS = ((1, 1), (1, 2), (2, 1), (1, 3), (2, 3))


def _params(s: SteinerTripleSystem, beta) -> AlgebraParams:
    return AlgebraParams.for_t_beta(s.n, to_scalar(beta))


def _coords(s: SteinerTripleSystem, x: Sequence) -> list:
    if len(x) != s.n:
        raise DimMismatch(f"expected {s.n} spanning coordinates, got {len(x)}")
    return [to_scalar(t) for t in x]


def q_poly(s: SteinerTripleSystem, beta, i: int, block: Sequence[int], x: Sequence) -> Fraction:
    B = tuple(sorted(block))
    if B not in s.blocks:
        raise PointNotInBlock(f"{B} is not a block of the system")
    if i not in B:
        raise PointNotInBlock(f"point {i} is not in block {B}")
    x = _coords(s, x)
    p = _params(s, beta)
    j, k = [q for q in B if q != i]
    xi, xj, xk = x[i - 1], x[j - 1], x[k - 1]
    return (p.beta_plus + p.beta_minus) * xi * (xj + xk) + (p.beta_plus - p.beta_minus) * xj * xk


def residuals(s: SteinerTripleSystem, beta, eps, x: Sequence) -> list:
    x = _coords(s, x)
    eps = to_scalar(eps)
    out = []
    for i in s.points:
        r = x[i - 1] ** 2 - eps * x[i - 1]
        r += sum((q_poly(s, beta, i, B, x) for B in s.blocks_through(i)), ZERO)
        out.append(r)
    return out


def nc_constant(n: int, beta, eps, x: Sequence) -> Fraction:
    """The common residual predicted from the mean and spread of x."""
    beta, eps = to_scalar(beta), to_scalar(eps)
    x = [to_scalar(t) for t in x]
    mean = sum(x, ZERO) / n
    spread = sum(((t - mean) ** 2 for t in x), ZERO)
    return (1 - beta) / (n - 2) * spread - eps * mean + n * ((n - 1) * beta - 1) / (n - 2) * mean ** 2


@dataclass(frozen=True)
class EpsVerdict:
    solves: bool
    c: Fraction | None
    point: int | None = None  # first point whose residual differs
    residual: Fraction | None = None
    nc_ok: bool | None = None
    multiply_ok: bool = False

    def __bool__(self):
        return self.solves


def check_eps_equation(s: SteinerTripleSystem, beta, eps, x: Sequence,
                       a: Algebra | None = None) -> EpsVerdict:
    eps = to_scalar(eps)
    if eps not in (ZERO, ONE):
        raise ValueError(f"eps must be 0 or 1, got {eps}")
    x = _coords(s, x)
    res = residuals(s, beta, eps, x)
    a = a or build_t_beta(s, beta)
    v = a.from_spanning(x)
    direct = multiply(a, v, v) == exact.vscale(eps, v)
    c = res[0]
    for i, r in enumerate(res, start=1):
        if r != c:
            return EpsVerdict(False, None, i, r, None, direct)
    return EpsVerdict(True, c, None, None, c == nc_constant(s.n, beta, eps, x), direct)


# -- block catalog ---------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    label: str  # e0_B | z_B | e_B_i | e_B_j | e_B_ij | lambda_family
    coords: tuple  # spanning coordinates, length n
    kind: str  # idempotent | square_zero | one_parameter_family
    eps: Fraction
    verified: bool  # checked by direct multiplication


@dataclass(frozen=True)
class BlockIdempotentCatalog:
    block: tuple
    beta: Fraction
    entries: tuple

    def to_json(self) -> dict:
        return {
            "block": list(self.block),
            "beta": exact.format_rational(self.beta),
            "entries": [{"label": e.label, "kind": e.kind,
                         "coords": [exact.format_rational(c) for c in e.coords]}
                        for e in self.entries],
        }


def e0_scale(n: int, beta) -> Fraction | None:
    den = 2 * n * to_scalar(beta) + n - 6
    return None if den == 0 else Fraction(n - 2) / den


def square_zero_beta(n: int) -> Fraction:
    return Fraction(6 - n, 2 * n)


def lambda_family_beta(n: int) -> Fraction:
    return Fraction(-n, 2 * (n - 3))


def lambda_point(a: int, b: int) -> tuple:
    """Rational point on x + y + z = 1, x^2 + y^2 + z^2 = 1 through (1, 0, 0)."""
    d = (-(a + b), a, b)
    t = Fraction(2 * (a + b), sum(c * c for c in d))
    return tuple(u + t * c for u, c in zip((ONE, ZERO, ZERO), d))


def _block_vector(n: int, B: Sequence[int], values: Sequence) -> tuple:
    x = [ZERO] * n
    for p, v in zip(B, values):
        x[p - 1] = to_scalar(v)
    return tuple(x)


def block_catalog(s: SteinerTripleSystem, beta, block: Sequence[int],
                  a: Algebra | None = None) -> BlockIdempotentCatalog:
    n = s.n
    if n <= 3:
        raise ValueError("the block catalog needs n > 3")
    beta = to_scalar(beta)
    B = tuple(sorted(block))
    if B not in s.blocks:
        raise PointNotInBlock(f"{B} is not a block of the system")
    a = a or build_t_beta(s, beta)
    p = a.params
    raw = []
    scale = e0_scale(n, beta)
    if scale is not None:
        raw.append(("e0_B", (scale,) * 3, "idempotent", ONE))
    else:
        raw.append(("z_B", (ONE,) * 3, "square_zero", ZERO))
    den = 1 - p.beta_plus + p.beta_minus - 4 * p.beta_plus * p.beta_minus
    if den != 0:
        u, w = (1 - 2 * p.beta_plus) / den, 2 * beta / den
        # the special point gets weight w, the other two weight u
        for label, pos in (("e_B_i", 0), ("e_B_j", 1), ("e_B_ij", 2)):
            vals = [u, u, u]
            vals[pos] = w
            raw.append((label, tuple(vals), "idempotent", ONE))
    if beta == lambda_family_beta(n):
        for ab in LAMBDA_SEEDS:
            raw.append(("lambda_family", lambda_point(*ab), "one_parameter_family", ONE))
    entries = []
    for label, vals, kind, eps in raw:
        x = _block_vector(n, B, vals)
        v = a.from_spanning(x)
        sq = multiply(a, v, v)
        ok = sq == exact.vscale(eps, v) and any(v)
        entries.append(CatalogEntry(label, x, kind, eps, ok))
    return BlockIdempotentCatalog(B, beta, tuple(entries))


def e3_comparison(s: SteinerTripleSystem, block: Sequence[int], beta=1) -> dict:
    """Compare the subalgebra generated by the four block idempotents with E^3.

    Two tests: every bijection of the four idempotents onto the spanning
    generators of E^3 is tried as a structure-tensor isomorphism, and the
    simplicity verdicts of the two algebras are compared.
    """
    a = build_t_beta(s, beta)
    cat = block_catalog(s, beta, block, a)
    quad = [a.from_spanning(e.coords) for e in cat.entries
            if e.label in ("e0_B", "e_B_i", "e_B_j", "e_B_ij")]
    if len(quad) != 4:
        return {"subalgebra_dim": None, "tensor_match": False, "same_simplicity": False,
                "subalgebra_simple": None}
    space = Subspace(a.dim, quad)
    grow = list(space.basis())
    k = 0
    while k < len(grow):
        for u in list(grow[: k + 1]):
            w = multiply(a, u, grow[k])
            if space.add(w):
                grow.append(tuple(w))
        k += 1
    basis = space.basis()
    dim = len(basis)
    e3 = build_simplicial(4)
    f = [e3.generator(t) for t in range(1, 5)]
    match = False
    if dim == 3:
        for perm in itertools.permutations(range(4)):
            imgs = [quad[perm[t]] for t in range(4)]
            # linear map sends f_t -> imgs[t]; f_4 = -(f_1 + f_2 + f_3)
            if exact.vadd(exact.vadd(imgs[0], imgs[1]), exact.vadd(imgs[2], imgs[3])) != tuple([ZERO] * a.dim):
                continue
            good = True
            for x, y in itertools.combinations_with_replacement(range(4), 2):
                fx = multiply(e3, f[x], f[y])
                # image of fx: coordinates in f_1..f_3
                img = exact.lincomb([(fx[t], imgs[t]) for t in range(3)], a.dim)
                if img != multiply(a, imgs[x], imgs[y]):
                    good = False
                    break
            if good:
                match = True
                break
    # F e0_B is an ideal of the span whenever e0_B o q stays on the line
    e0 = quad[0]
    e0_ideal = dim > 1 and all(exact.in_span(multiply(a, e0, q), [e0]) for q in basis)
    sub_simple = "not_simple" if e0_ideal else is_simple(_restrict(a, basis)).status
    e3_simple = is_simple(e3).status
    return {"subalgebra_dim": dim, "tensor_match": match, "e0_line_is_ideal": e0_ideal,
            "subalgebra_simple": sub_simple, "e3_simple": e3_simple,
            "same_simplicity": sub_simple == e3_simple}


def _restrict(a: Algebra, basis: Sequence) -> Algebra:
    """Structure constants of a subalgebra in the given basis."""
    m = len(basis)
    cols = Matrix.from_columns(list(basis))
    # coordinates are read off a set of m independent rows
    piv_rows = []
    sub = Subspace(m)
    for r in range(a.dim):
        row = tuple(cols.row(r))
        if sub.add(row):
            piv_rows.append(r)
        if len(piv_rows) == m:
            break
    square = Matrix([[cols[r, c] for c in range(m)] for r in piv_rows])
    inv = exact.inverse(square)
    structure = []
    for u in basis:
        row = []
        for v in basis:
            w = multiply(a, u, v)
            coords = inv.apply(tuple(w[r] for r in piv_rows))
            row.append(tuple(coords))
        structure.append(tuple(row))
    return Algebra(m, tuple(f"s{k}" for k in range(1, m + 1)), tuple(structure), "unreduced")


# -- AG(2,3) ---------------------------------------------------------------

@dataclass(frozen=True)
class AG23Report:
    beta: Fraction
    classes: tuple
    class_sums_zero: bool
    within_class: bool  # e0_B o e0_B' = -e0_B - e0_B'
    cross_class: bool  # e0_A o e0_B = (1-beta)/(6 beta + 1)(e0_C + e0_D)
    direct_sum: dict | None  # only at beta = 1

    @property
    def ok(self) -> bool:
        base = self.class_sums_zero and self.within_class and self.cross_class
        if self.direct_sum is not None:
            base = base and all(self.direct_sum.values())
        return base


def ag23_decomposition(beta) -> AG23Report:
    beta = to_scalar(beta)
    if beta == Fraction(-1, 6):
        raise ExcludedBeta(beta, "e0_B is undefined")
    s = construct_ag(2)
    a = build_t_beta(s, beta)
    scale = e0_scale(9, beta)
    e0 = {B: a.from_spanning(_block_vector(9, B, (scale,) * 3)) for B in s.blocks}
    classes = tuple(tuple(c) for c in parallel_classes(s))
    zero = tuple([ZERO] * a.dim)
    sums = all(exact.lincomb([(ONE, e0[B]) for B in c], a.dim) == zero for c in classes)
    within = all(multiply(a, e0[B], e0[C]) == exact.vscale(-1, exact.vadd(e0[B], e0[C]))
                 for c in classes for B, C in itertools.combinations(c, 2))
    k = (1 - beta) / (6 * beta + 1)
    cross = True
    for i in s.points:
        through = s.blocks_through(i)
        for A, B in itertools.combinations(through, 2):
            C, D = [X for X in through if X not in (A, B)]
            if multiply(a, e0[A], e0[B]) != exact.vscale(k, exact.vadd(e0[C], e0[D])):
                cross = False
    direct = None
    if beta == 1:
        f = killing_form(a)
        spans = [[e0[B] for B in c] for c in classes]
        e2 = build_simplicial(3)
        e2_ok = True
        for c in classes:
            u, v = e0[c[0]], e0[c[1]]
            # u, v -> f_1, f_2 of E^2
            e2_ok &= (multiply(a, u, u) == u and multiply(a, v, v) == v
                      and multiply(e2, e2.basis(0), e2.basis(1)) == (-ONE, -ONE)
                      and multiply(a, u, v) == exact.vscale(-1, exact.vadd(u, v)))
        annihilate = all(multiply(a, x, y) == zero
                         for P, Q in itertools.combinations(spans, 2) for x in P for y in Q)
        orthogonal = all(f(x, y) == 0
                         for P, Q in itertools.combinations(spans, 2) for x in P for y in Q)
        direct = {
            "each_dim_2": all(exact.span_rank(P) == 2 for P in spans),
            "each_e2": e2_ok,
            "mutually_annihilating": annihilate,
            "killing_orthogonal": orthogonal,
            "sum_dim_8": exact.span_rank([x for P in spans for x in P]) == 8,
        }
    return AG23Report(beta, classes, sums, within, cross, direct)


# -- spectrum of L(gamma_B) ------------------------------------------------

def _gamma(a: Algebra, B: Sequence[int]) -> tuple:
    return a.from_spanning(_block_vector(a.n, B, (ONE,) * 3))


def gamma_relations(a: Algebra, block: Sequence[int]) -> dict:
    """The six relations for L(gamma_B), checked for every i in B and k off B."""
    s = a.source
    p = a.params
    n = p.n
    al, be, bp, bm = p.alpha, p.beta, p.beta_plus, p.beta_minus
    B = tuple(sorted(block))
    g = _gamma(a, B)
    e = a.generator
    J = s.join

    def blk(points):
        return tuple(sorted(points))

    def shift(k):  # k o B
        return blk(J(k, q) for q in B)

    ok = {name: True for name in ("r1", "r2", "r3", "r4", "r5", "r6")}
    V, S, L = exact.vadd, exact.vsub, exact.vscale
    for i in B:
        j, ij = [q for q in B if q != i]
        ok["r1"] &= multiply(a, g, e(i)) == V(L(1 + bm, e(i)), L(bp, g))
        d = S(e(i), e(j))
        ok["r2"] &= multiply(a, g, d) == L(1 + bm, d)
        for k in s.points:
            if k in B:
                continue
            gk = _gamma(a, shift(k))
            gik = _gamma(a, shift(J(i, k)))
            ok["r3"] &= multiply(a, g, e(k)) == V(V(L(al, g), L(3 * al, e(k))), L(be, gk))
            dk = S(e(J(i, k)), e(J(j, k)))
            ok["r4"] &= multiply(a, g, dk) == L(Fraction(3) * (be - 1) / (n - 2), dk)
            ok["r5"] &= multiply(a, g, gk) == V(L(3 * al, V(g, gk)), L(3 * be, gik))
            dg = S(gk, gik)
            ok["r6"] &= multiply(a, g, dg) == L(3 * bm, dg)
    return ok


@dataclass(frozen=True)
class SpectrumReport:
    beta: Fraction
    block: tuple
    relations: dict
    values: tuple  # the four table eigenvalues, or () when n != 9
    expected: dict  # eigenvalue -> multiplicity, merged on coincidences
    computed: dict  # eigenvalue -> kernel dimension
    coincidence: bool
    eigenvectors_ok: bool | None

    @property
    def ok(self) -> bool:
        base = all(self.relations.values())
        if self.values:
            base = base and self.expected == self.computed and bool(self.eigenvectors_ok)
        return base


def table_eigenvalues(beta) -> tuple:
    beta = to_scalar(beta)
    return (ONE, 2 * (1 - beta) / (6 * beta + 1), (beta - 1) / (6 * beta + 1), -ONE)


def gamma_block_spectrum(s: SteinerTripleSystem, beta, block: Sequence[int]) -> SpectrumReport:
    if not is_hall(s):
        raise ValueError("the block spectrum relations need a Hall triple system")
    n = s.n
    beta = to_scalar(beta)
    scale = e0_scale(n, beta)
    if scale is None:
        raise ExcludedBeta(beta, "e0_B is undefined")
    a = build_t_beta(s, beta)
    B = tuple(sorted(block))
    rel = gamma_relations(a, B)
    if n != 9:
        return SpectrumReport(beta, B, rel, (), {}, {}, False, None)
    e0 = a.from_spanning(_block_vector(n, B, (scale,) * 3))
    L = mult_operator(a, e0)
    values = table_eigenvalues(beta)
    expected = {}
    for lam, m in zip(values, (1, 2, 4, 1)):
        expected[lam] = expected.get(lam, 0) + m
    coincidence = len(expected) < 4
    computed = {lam: len(exact.eigenspace(L, lam)) for lam in expected}
    # listed eigenvectors, written for an arbitrary block
    i, j, ij = B
    e = a.generator
    J = s.join
    vecs = {values[1]: [exact.vsub(e(i), e(j)), exact.vsub(e(j), e(ij))],
            values[2]: [exact.vsub(e(J(k, i)), e(J(k, j))) for k in s.points if k not in B],
            values[0]: [e0]}
    k = next(q for q in s.points if q not in B)
    far = tuple(sorted(J(J(i, k), q) for q in B))
    near = tuple(sorted(J(k, q) for q in B))
    vecs[values[3]] = [exact.vsub(a.from_spanning(_block_vector(n, far, (scale,) * 3)),
                                  a.from_spanning(_block_vector(n, near, (scale,) * 3)))]
    ev_ok = all(L.apply(v) == exact.vscale(lam, v) and any(v)
                for lam, vs in vecs.items() for v in vs)
    return SpectrumReport(beta, B, rel, values, expected, computed, coincidence, ev_ok)


# -- square-zero scan ------------------------------------------------------

@dataclass(frozen=True)
class SquareZeroScan:
    beta: Fraction
    found: tuple  # (block, spanning coords)
    lambda_family_eps0: str | None


def square_zero_scan(s: SteinerTripleSystem, beta) -> SquareZeroScan:
    """Square-zero elements among the block-span catalogs only."""
    beta = to_scalar(beta)
    a = build_t_beta(s, beta)
    found = []
    for B in s.blocks:
        for e in block_catalog(s, beta, B, a).entries:
            if e.kind == "square_zero" and e.verified:
                found.append((B, e.coords))
    note = None
    if beta == lambda_family_beta(s.n):
        # sum zero and sum of squares zero force every rational lambda to vanish
        note = "eps=0 family has only the zero solution over the rationals"
    return SquareZeroScan(beta, tuple(found), note)
