"""Axes of T_beta: eigenspaces, fusion laws, Miyamoto involutions and groups.

For the axis ``e_i`` the eigenvectors of ``L(e_i)`` come in two families,
indexed by the blocks ``{i, j, i o j}`` through ``i``:

    e_j - e_{i o j}                     eigenvalue beta_minus
    2 e_i + (n - 1)(e_j + e_{i o j})    eigenvalue beta_plus (they sum to 0)

Fusion is checked in these eigenbases, falling back to exact kernels when
the eigenvalues collide.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact
from .algebra import (Algebra, build_t_beta, ideal_closure, is_ideal, killing_form,
                      mult_operator, multiply, _candidate_seeds)
from .designs import SteinerTripleSystem, compose, is_hall, sigma_involution
from .errors import ClosureCapExceeded, ExcludedBeta
from .exact import ONE, ZERO, Matrix, Subspace, to_scalar

DEFAULT_CLOSURE_CAP = 10 ** 6


def excluded_betas(n: int) -> dict:
    """The values of beta where 1, beta_plus, beta_minus collide."""
    out = {ZERO: "beta_is_0", ONE: "beta_is_1"}
    if n > 3:
        out[Fraction(-(n - 1), n - 3)] = "beta_is_neg_ratio"
    return out


def transitional_betas(n: int) -> list:
    """Values of beta where beta_plus or beta_minus meets 0, 1/2 or 1, or each other."""
    vals = [ZERO, Fraction(1, n - 1), Fraction(n, 2 * (n - 1)), ONE]
    if n > 3:
        vals += [Fraction(-(n - 1), n - 3), Fraction(-n, 2 * (n - 3)), Fraction(-1, n - 3)]
    return sorted(set(vals))


# -- eigenspaces -----------------------------------------------------------

@dataclass(frozen=True)
class AxisDecomposition:
    point: int
    axis: tuple
    beta: Fraction
    beta_plus: Fraction
    beta_minus: Fraction
    eigen_1: tuple  # span of the axis
    eigen_plus: tuple  # formula basis for beta_plus
    eigen_minus: tuple  # formula basis for beta_minus
    exceptional_case: str  # generic | beta_is_0 | beta_is_1 | beta_is_neg_ratio
    eigenspaces: dict  # eigenvalue -> kernel basis of L(axis) - lambda
    formulas_ok: bool

    @property
    def dims(self) -> tuple:
        return (len(self.eigen_1), len(self.eigen_plus), len(self.eigen_minus))

    @property
    def multiplicities(self) -> dict:
        return {lam: len(b) for lam, b in self.eigenspaces.items()}

    @property
    def semisimple(self) -> bool:
        return sum(self.multiplicities.values()) == len(self.axis)


def _block_vectors(a: Algebra, i: int):
    s = a.source
    n = s.n
    minus, plus = [], []
    for B in s.blocks_through(i):
        j, k = sorted(p for p in B if p != i)
        ej, ek = a.generator(j), a.generator(k)
        minus.append(exact.vsub(ej, ek))
        plus.append(exact.vadd(exact.vscale(2, a.generator(i)),
                               exact.vscale(n - 1, exact.vadd(ej, ek))))
    # the plus vectors sum to zero; drop one to get a basis
    return minus, plus[:-1]


def decompose_axis(a: Algebra, i: int) -> AxisDecomposition:
    if a.kind != "steiner_t" or not isinstance(a.source, SteinerTripleSystem):
        raise TypeError("decompose_axis needs T_beta built from a Steiner triple system")
    p = a.params
    n = p.n
    beta, bp, bm = p.beta, p.beta_plus, p.beta_minus
    x = a.generator(i)
    L = mult_operator(a, x)
    values = sorted({ONE, bp, bm})
    spaces = {lam: tuple(exact.eigenspace(L, lam)) for lam in values}
    spaces = {lam: b for lam, b in spaces.items() if b}
    minus, plus = _block_vectors(a, i)
    case = excluded_betas(n).get(beta, "generic")
    ok = (all(L.apply(v) == exact.vscale(bm, v) for v in minus)
          and all(L.apply(v) == exact.vscale(bp, v) for v in plus)
          and exact.span_rank(minus) == len(minus) == (n - 1) // 2
          and exact.span_rank(plus) == len(plus) == (n - 3) // 2)
    if ok and case == "generic":
        ok = (exact.same_span(minus, spaces.get(bm, ()))
              and exact.same_span(plus, spaces.get(bp, ()))
              and exact.same_span([x], spaces.get(ONE, ())))
    return AxisDecomposition(i, x, beta, bp, bm, (x,), tuple(plus), tuple(minus),
                             case, spaces, ok)


def lemma_multiplicities(n: int, beta) -> dict:
    """Eigenvalue multiplicities of L(e_i) predicted for each regime."""
    beta = to_scalar(beta)
    d = n - 1
    alpha = (beta - 1) / (n - 2)
    bp, bm = alpha + beta, alpha - beta
    r_minus, r_plus = (n - 1) // 2, (n - 3) // 2
    out = {}
    for lam, m in ((ONE, 1), (bp, r_plus), (bm, r_minus)):
        if m:
            out[lam] = out.get(lam, 0) + m
    assert sum(out.values()) == d
    return out


def axial_identity_check(a: Algebra) -> bool:
    """(e_j - e_k)^2 = (1 - 2 alpha)(e_j + e_k) - 2 beta e_i on every block {i, j, k}."""
    p = a.params
    for B in a.source.blocks:
        for i in B:
            j, k = [q for q in B if q != i]
            ej, ek, ei = a.generator(j), a.generator(k), a.generator(i)
            d = exact.vsub(ej, ek)
            rhs = exact.vsub(exact.vscale(1 - 2 * p.alpha, exact.vadd(ej, ek)),
                             exact.vscale(2 * p.beta, ei))
            if multiply(a, d, d) != rhs:
                return False
    return True


# -- fusion laws -----------------------------------------------------------

@dataclass(frozen=True)
class FusionLaw:
    name: str  # z2 | jordan
    eigenvalues: tuple
    table: dict  # (lam, mu) -> frozenset
    grading: dict | None = None

    def __post_init__(self):
        for (x, y), v in self.table.items():
            if self.table.get((y, x)) != v:
                raise ValueError(f"fusion table not symmetric at ({x}, {y})")

    def __call__(self, lam, mu) -> frozenset:
        return self.table[(lam, mu)]

    def grading_is_morphism(self) -> bool:
        if self.grading is None:
            return False
        g = self.grading
        return all(g[c] == g[x] * g[y] for (x, y), v in self.table.items() for c in v)


def _law(name, values, rows, grading=None) -> FusionLaw:
    table = {}
    for x, row in zip(values, rows):
        for y, entry in zip(values, row):
            table[(x, y)] = frozenset(entry)
    return FusionLaw(name, tuple(values), table, grading)


def fusion_table_for(n: int, beta, law: str = "auto") -> FusionLaw:
    """Table 1 (z2-graded) or, at beta = 1/(n-1), the Jordan law."""
    beta = to_scalar(beta)
    if law not in ("auto", "z2", "jordan"):
        raise ValueError(f"unknown fusion law {law!r}")
    jordan_beta = Fraction(1, n - 1)
    if law == "jordan" or (law == "auto" and beta == jordan_beta):
        if beta != jordan_beta:
            raise ExcludedBeta(beta, f"the Jordan law needs beta = 1/{n - 1}")
        z, m = ZERO, Fraction(-2, n - 1)
        return _law("jordan", (ONE, z, m),
                    [[{ONE}, set(), {m}],
                     [set(), {z}, {m}],
                     [{m}, {m}, {ONE, z}]])
    if beta in excluded_betas(n):
        raise ExcludedBeta(beta, "1, beta_plus and beta_minus are not pairwise distinct")
    alpha = (beta - 1) / (n - 2)
    bp, bm = alpha + beta, alpha - beta
    return _law("z2", (ONE, bp, bm),
                [[{ONE}, {bp}, {bm}],
                 [{bp}, {ONE, bp}, {bm}],
                 [{bm}, {bm}, {ONE, bp}]],
                {ONE: 1, bp: 1, bm: -1})


@dataclass(frozen=True)
class FusionVerdict:
    axis: int
    beta: Fraction
    law: str
    ok: bool
    witness: dict | None = None  # lambda, mu, product (basis coordinates), reason

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"axis": self.axis, "beta": exact.format_rational(self.beta),
               "law": self.law, "ok": self.ok}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "lambda": None if w["lambda"] is None else exact.format_rational(w["lambda"]),
                "mu": None if w["mu"] is None else exact.format_rational(w["mu"]),
                "product_coords": [exact.format_rational(c) for c in w["product"]],
                "reason": w["reason"],
            }
        return out


def _fusion_parts(a: Algebra, i: int, law: FusionLaw) -> tuple[dict, str | None]:
    dec = decompose_axis(a, i)
    if dec.exceptional_case == "generic" and dec.formulas_ok:
        parts = {ONE: list(dec.eigen_1), dec.beta_plus: list(dec.eigen_plus),
                 dec.beta_minus: list(dec.eigen_minus)}
    else:
        parts = {lam: list(b) for lam, b in dec.eigenspaces.items()}
    if not dec.semisimple:
        return parts, "not_semisimple"
    if any(lam not in law.eigenvalues for lam in parts if parts[lam]):
        return parts, "eigenvalue_outside_law"
    return parts, None


def verify_fusion(a: Algebra, i: int, law: FusionLaw) -> FusionVerdict:
    """Check every eigenvector product against the law, exactly.

    Products are expanded in the eigenbasis through one inverse; a failing
    product is re-checked by a rank test before it is reported.
    """
    beta = a.params.beta
    parts, problem = _fusion_parts(a, i, law)
    if problem:
        return FusionVerdict(i, beta, law.name, False,
                             {"lambda": None, "mu": None, "product": (), "reason": problem})
    order = [lam for lam in law.eigenvalues if parts.get(lam)]
    columns, owner = [], []
    for lam in order:
        for v in parts[lam]:
            columns.append(v)
            owner.append(lam)
    d = a.dim
    pinv = exact.inverse(Matrix.from_columns(columns)).row_list()
    for x_idx, lam in enumerate(order):
        for mu in order[x_idx:]:
            allowed = law(lam, mu)
            bad_rows = [r for r in range(d) if owner[r] not in allowed]
            for ui, u in enumerate(parts[lam]):
                start = ui if lam == mu else 0
                for v in parts[mu][start:]:
                    w = multiply(a, u, v)
                    nz = [(k, t) for k, t in enumerate(w) if t]
                    if any(sum((pinv[r][k] * t for k, t in nz), ZERO) for r in bad_rows):
                        span = [c for c, o in zip(columns, owner) if o in allowed]
                        if exact.in_span(w, span):
                            raise AssertionError("fusion witness failed the rank re-check")
                        return FusionVerdict(i, beta, law.name, False,
                                             {"lambda": lam, "mu": mu, "product": w,
                                              "reason": "product_outside_allowed_parts"})
    return FusionVerdict(i, beta, law.name, True)


def is_subalgebra(a: Algebra, vectors: Sequence) -> bool:
    space = Subspace(a.dim, vectors)
    basis = space.basis()
    return all(space.contains(multiply(a, u, v))
               for k, u in enumerate(basis) for v in basis[k:])


# -- Miyamoto involutions --------------------------------------------------

def permutation_matrix(a: Algebra, sigma: Sequence[int]) -> Matrix:
    """Linear map e_k -> e_{sigma(k)} in the basis e_1..e_{n-1}; sigma is 1-based."""
    return Matrix.from_columns([a.generator(sigma[k - 1]) for k in range(1, a.dim + 1)])


@dataclass(frozen=True)
class MiyamotoInvolution:
    point: int
    permutation: tuple
    matrix: Matrix
    is_automorphism: bool
    is_reflection: bool
    witness: tuple | None = None  # basis pair (p, q) breaking multiplicativity


def is_algebra_automorphism(a: Algebra, m: Matrix) -> tuple[bool, tuple | None]:
    images = [m.column(k) for k in range(a.dim)]
    for p in range(a.dim):
        for q in range(p, a.dim):
            if m.apply(a.structure[p][q]) != multiply(a, images[p], images[q]):
                return False, (p, q)
    return True, None


def miyamoto_involution(a: Algebra, i: int) -> MiyamotoInvolution:
    s = a.source
    sigma = sigma_involution(s, i)
    m = permutation_matrix(a, sigma)
    auto, witness = is_algebra_automorphism(a, m)
    dec = decompose_axis(a, i)
    reflection = (all(m.apply(v) == tuple(v) for v in dec.eigen_1 + dec.eigen_plus)
                  and all(m.apply(v) == exact.vscale(-1, v) for v in dec.eigen_minus))
    return MiyamotoInvolution(i, sigma, m, auto, reflection, witness)


# -- Miyamoto group --------------------------------------------------------

def closure_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SAL_CLOSURE_CAP")
    return int(env) if env else DEFAULT_CLOSURE_CAP


def _inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for k, v in enumerate(p):
        inv[v - 1] = k + 1
    return tuple(inv)


def _generate(gens: Sequence[tuple], size: int, cap: int) -> set:
    identity = tuple(range(1, size + 1))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = compose(g, h)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(cap)
                    nxt.append(x)
        frontier = nxt
    return seen


def _normal_closure(seeds: Sequence[tuple], gens: Sequence[tuple], size: int, cap: int) -> set:
    pool = list(dict.fromkeys(seeds))
    while True:
        h = _generate(pool, size, cap)
        extra = []
        for g in gens:
            gi = _inverse(g)
            for x in pool:
                y = compose(compose(g, x), gi)
                if y not in h:
                    extra.append(y)
        if not extra:
            return h
        pool.extend(dict.fromkeys(extra))


@dataclass(frozen=True)
class MiyamotoGroup:
    generators: tuple  # sigma_1..sigma_n as 1-based permutations
    elements: frozenset | None
    derived: frozenset | None
    order: int | None
    commutator_order: int | None
    abelianization_order: int | None
    hall: bool
    label: str


def miyamoto_group(s: SteinerTripleSystem, cap: int | None = None, close: bool = True) -> MiyamotoGroup:
    """Group generated by the point involutions sigma_i(j) = i o j."""
    cap = closure_cap(cap)
    n = s.n
    gens = tuple(sigma_involution(s, i) for i in range(1, n + 1))
    hall = bool(is_hall(s))
    label = "Miyamoto group" if hall else "point-permutation group, not algebra automorphisms"
    if not close:
        return MiyamotoGroup(gens, None, None, None, None, None, hall, label)
    distinct = list(dict.fromkeys(gens))
    elements = _generate(distinct, n, cap)
    comms = [compose(compose(g, h), compose(_inverse(g), _inverse(h)))
             for g in distinct for h in distinct]
    derived = _normal_closure(comms, distinct, n, cap)
    order = len(elements)
    return MiyamotoGroup(gens, frozenset(elements), frozenset(derived), order, len(derived),
                         order // len(derived), hall, label)


def permutation_order(p: tuple) -> int:
    identity = tuple(range(1, len(p) + 1))
    x, k = p, 1
    while x != identity:
        x = compose(x, p)
        k += 1
    return k


def _is_power_of(m: int, base: int) -> bool:
    while m > 1 and m % base == 0:
        m //= base
    return m == 1


@dataclass(frozen=True)
class TranspositionReport:
    involutions: bool
    conjugation: bool  # sigma_i sigma_j sigma_i = sigma_{i o j}
    products_order_3: bool
    commutator_3_group: bool | None
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return (self.involutions and self.conjugation and self.products_order_3
                and self.commutator_3_group is not False)

    def __bool__(self):
        return self.ok


def three_transposition_check(g: MiyamotoGroup, s: SteinerTripleSystem) -> TranspositionReport:
    gens = g.generators
    n = len(gens)
    identity = tuple(range(1, n + 1))
    involutions = all(compose(t, t) == identity and t != identity for t in gens)
    conj, order3, witness = True, True, None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            ti, tj = gens[i - 1], gens[j - 1]
            if compose(compose(ti, tj), ti) != gens[s.join(i, j) - 1] and conj:
                conj = False
                witness = witness or ("conjugation", i, j)
            if permutation_order(compose(ti, tj)) != 3 and order3:
                order3 = False
                witness = witness or ("order", i, j)
    comm = None if g.commutator_order is None else _is_power_of(g.commutator_order, 3)
    return TranspositionReport(involutions, conj, order3, comm, witness)


# -- ideals at beta = -(n-1)/(n-3) -----------------------------------------

@dataclass(frozen=True)
class GradedIdealReport:
    generator_closures_full: bool
    generators_invertible: bool
    ideal: tuple | None  # basis of a proper ideal, if one was found
    checks: dict  # Lemma assertions about a found ideal

    @property
    def simple_by_search(self) -> bool:
        return self.ideal is None


def graded_ideal_analysis(a: Algebra) -> GradedIdealReport:
    s = a.source
    n = a.n
    if not is_hall(s):
        raise ValueError("graded ideal analysis needs a Hall triple system")
    if a.params.beta != Fraction(-(n - 1), n - 3):
        raise ExcludedBeta(a.params.beta, f"analysis is for beta = {-(n - 1)}/{n - 3}")
    d = a.dim
    gens = [a.generator(k) for k in range(1, n + 1)]
    invertible = all(exact.rank(mult_operator(a, x)) == d for x in gens)
    full = all(ideal_closure(a, [x]).is_full for x in gens)
    found = None
    for seed in _candidate_seeds(a):
        if not any(seed):
            continue
        c = ideal_closure(a, [seed])
        if c.is_proper_nontrivial:
            found = c
            break
    checks = {}
    if found is not None:
        basis = list(found.basis)
        f = killing_form(a)
        perp = exact.kernel_basis(Matrix.from_columns([f.gram.apply(v) for v in basis]).T)
        taus = [permutation_matrix(a, sigma_involution(s, k)) for k in range(1, n + 1)]
        g = miyamoto_group(s)
        checks = {
            "dim": found.dim == (n - 1) // 2,
            "perp_is_ideal": is_ideal(a, perp),
            "perp_transverse": exact.span_rank(basis + list(perp)) == d,
            "involutions_swap": all(exact.same_span([t.apply(v) for v in basis], perp)
                                    for t in taus),
            "commutator_stabilizes": all(
                exact.same_span([permutation_matrix(a, h).apply(v) for v in basis], basis)
                for h in g.derived),
        }
        found = found.basis
    return GradedIdealReport(full, invertible, found, checks)

