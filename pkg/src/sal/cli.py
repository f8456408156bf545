"""Command-line front end.

Verbs: construct, validate, analyze, sweep, catalog, group. JSON output
is deterministic: sorted keys, rationals as "p/q", schema "1".

Exit codes: 0 when every requested check passes or is excluded, 1 when
any check fails or stays undecided, 2 on usage, parse or IO errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from fractions import Fraction

from . import algebra as alg
from . import axial, designs, exact, idempotents
from .errors import ClosureCapExceeded, SalError

SCHEMA = "1"
CHECKS = (
    "exactness",
    "killing_gram",
    "invariance",
    "positive_definite",
    "tight_frame",
    "axis_decomposition",
    "fusion",
    "miyamoto_group",
    "simplicity",
    "block_catalog",
    "ag23",
)
FRAME_SAMPLES = 10

# check name -> library calls that reproduce its verdict
TRACEABILITY = {
    "exactness": ["sal.algebra.trace_of_multiplication"],
    "killing_gram": ["sal.algebra.killing_form", "sal.algebra.killing_gram_formula",
                     "sal.algebra.expected_gram"],
    "invariance": ["sal.algebra.check_invariance"],
    "positive_definite": ["sal.algebra.BilinearForm.is_positive_definite"],
    "tight_frame": ["sal.algebra.tight_frame_check"],
    "axis_decomposition": ["sal.axial.decompose_axis", "sal.axial.lemma_multiplicities"],
    "fusion": ["sal.axial.fusion_table_for", "sal.axial.verify_fusion",
               "sal.axial.is_subalgebra"],
    "miyamoto_group": ["sal.axial.miyamoto_group", "sal.axial.three_transposition_check",
                       "sal.axial.miyamoto_involution"],
    "simplicity": ["sal.algebra.is_simple", "sal.idempotents.ag23_decomposition"],
    "block_catalog": ["sal.idempotents.block_catalog", "sal.idempotents.check_eps_equation"],
    "ag23": ["sal.idempotents.ag23_decomposition", "sal.idempotents.gamma_block_spectrum"],
}
assert set(TRACEABILITY) == set(CHECKS)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return exact.format_rational(Fraction(x))


def parse_beta(text: str) -> Fraction:
    try:
        return exact.parse_rational(text)
    except SalError as err:
        raise UsageError(f"bad beta {text!r}: {err}") from None


def load_system(path: str) -> designs.SteinerTripleSystem:
    try:
        return designs.read_sts(path)
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from None


def dump_json(data, target: str | None):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if target in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(target, "w") as fh:
                fh.write(text)
        except OSError as err:
            raise UsageError(f"cannot write {target}: {err}") from None


def describe(s: designs.SteinerTripleSystem) -> dict:
    return {"n": s.n, "b": s.b, "r": s.r, "hall": bool(designs.is_hall(s))}


def verdict(status: str, **details) -> dict:
    return {"status": status, "details": details}


# -- individual checks -----------------------------------------------------

def _check_exactness(ctx):
    a = ctx["algebra"]
    traces = [alg.trace_of_multiplication(a, k) for k in range(a.dim)]
    bad = [k + 1 for k, t in enumerate(traces) if t != 0]
    return verdict("pass" if not bad else "fail", nonzero_traces=bad)


def _check_killing_gram(ctx):
    a = ctx["algebra"]
    g = ctx["form"].gram
    n, omega = a.n, a.params.omega
    entries = g == alg.killing_gram_formula(n, omega)
    literal = g == alg.expected_gram(n, omega)
    return verdict("pass" if entries else "fail",
                   omega=fmt(omega),
                   diagonal=fmt(g[0, 0]),
                   off_diagonal=fmt(g[0, 1]) if a.dim > 1 else None,
                   matches_omega_over_n_minus_2_times_nI_minus_J=entries,
                   matches_omega_times_nI_minus_J=literal)


def _check_invariance(ctx):
    res = alg.check_invariance(ctx["algebra"], ctx["form"])
    return verdict("pass" if res.ok else "fail",
                   witness=list(res.witness) if res.witness else None)


def _check_positive_definite(ctx):
    f = ctx["form"]
    return verdict("pass" if f.is_positive_definite() else "fail",
                   nondegenerate=f.is_nondegenerate())


def _check_tight_frame(ctx):
    a = ctx["algebra"]
    rng = random.Random(f"frame:{a.n}:{a.params.beta}")
    samples = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(a.dim))
               for _ in range(FRAME_SAMPLES)]
    ok = all(alg.tight_frame_check(a, x, ctx["form"]) for x in samples)
    return verdict("pass" if ok else "fail", constant=fmt(alg.frame_constant(a)),
                   samples=FRAME_SAMPLES)


def _check_axes(ctx):
    a = ctx["algebra"]
    s = a.source
    expected = axial.lemma_multiplicities(s.n, a.params.beta)
    bad = []
    case = None
    for i in s.points:
        dec = axial.decompose_axis(a, i)
        case = dec.exceptional_case
        if not dec.formulas_ok or dec.multiplicities != expected:
            bad.append(i)
    mult = {fmt(k): v for k, v in sorted(expected.items())}
    return verdict("pass" if not bad else "fail", case=case, multiplicities=mult,
                   failing_axes=bad)


def _check_fusion(ctx):
    a = ctx["algebra"]
    s = a.source
    try:
        law = axial.fusion_table_for(s.n, a.params.beta)
    except SalError as err:
        return verdict("excluded", reason=str(err))
    failures = []
    for i in s.points:
        v = axial.verify_fusion(a, i, law)
        if not v.ok:
            failures.append(v.to_json())
            break
    sub = None
    if law.name == "jordan":
        sub = all(axial.is_subalgebra(a, axial.decompose_axis(a, i).eigen_plus) for i in s.points)
    ok = not failures and sub is not False
    return verdict("pass" if ok else "fail", law=law.name, hall=ctx["system"]["hall"],
                   plus_subalgebra=sub, first_failure=failures[0] if failures else None)


def _check_group(ctx):
    s = ctx["algebra"].source
    if not ctx["system"]["hall"]:
        return verdict("excluded", reason="not a Hall triple system")
    try:
        g = axial.miyamoto_group(s, cap=ctx["cap"])
    except ClosureCapExceeded as err:
        return verdict("undecided", reason=str(err))
    rep = axial.three_transposition_check(g, s)
    invol = axial.miyamoto_involution(ctx["algebra"], 1)
    ok = rep.ok and invol.is_automorphism and invol.is_reflection
    return verdict("pass" if ok else "fail", order=g.order,
                   commutator_order=g.commutator_order,
                   abelianization_order=g.abelianization_order,
                   three_transpositions=rep.ok, label=g.label)


def _check_simplicity(ctx):
    a = ctx["algebra"]
    n, beta = a.n, a.params.beta
    res = alg.is_simple(a, ctx["form"])
    special = beta == 1 or (n > 3 and beta == Fraction(-(n - 1), n - 3))
    if res.status == "undecided":
        status = "undecided"
    elif special or res.status == "simple":
        status = "pass"
    else:
        status = "fail"
    details = {"verdict": res.status, "method": res.method,
               "witness_dim": res.witness.dim if res.witness else None}
    if n == 9 and beta == 1 and ctx["system"]["hall"]:
        rep = idempotents.ag23_decomposition(beta)
        details["summands"] = [[list(B) for B in c] for c in rep.classes]
        details["decomposition_ok"] = rep.ok
        if not rep.ok:
            status = "fail"
    return verdict(status, **details)


def _check_catalog(ctx):
    a = ctx["algebra"]
    s = a.source
    if s.n <= 3:
        return verdict("excluded", reason="catalog needs n > 3")
    beta = a.params.beta
    bad, count = [], 0
    for B in s.blocks:
        for e in idempotents.block_catalog(s, beta, B, a).entries:
            count += 1
            v = idempotents.check_eps_equation(s, beta, e.eps, e.coords, a)
            if not (e.verified and v.solves and v.nc_ok and v.multiply_ok):
                bad.append([list(B), e.label])
    return verdict("pass" if not bad else "fail", entries=count, failing=bad)


def _check_ag23(ctx):
    a = ctx["algebra"]
    s = a.source
    beta = a.params.beta
    if s.n != 9 or not ctx["system"]["hall"]:
        return verdict("excluded", reason="only for the affine plane of order 3")
    if beta == Fraction(-1, 6):
        return verdict("excluded", reason="beta = -1/6")
    rep = idempotents.ag23_decomposition(beta)
    spec = idempotents.gamma_block_spectrum(s, beta, s.blocks[0])
    return verdict("pass" if rep.ok and spec.ok else "fail",
                   decomposition_ok=rep.ok, table_spectrum_ok=spec.ok,
                   coincidence=spec.coincidence,
                   spectrum={fmt(k): v for k, v in sorted(spec.computed.items())})


RUNNERS = {
    "exactness": _check_exactness,
    "killing_gram": _check_killing_gram,
    "invariance": _check_invariance,
    "positive_definite": _check_positive_definite,
    "tight_frame": _check_tight_frame,
    "axis_decomposition": _check_axes,
    "fusion": _check_fusion,
    "miyamoto_group": _check_group,
    "simplicity": _check_simplicity,
    "block_catalog": _check_catalog,
    "ag23": _check_ag23,
}


def analyze(s: designs.SteinerTripleSystem, beta: Fraction, checks=CHECKS,
            cap: int | None = None, timings: bool = False) -> dict:
    """Run the battery for one beta; unrequested checks are reported as excluded."""
    a = alg.build_t_beta(s, beta)
    ctx = {"algebra": a, "form": alg.killing_form(a), "system": describe(s), "cap": cap}
    verdicts, times = {}, {}
    for name in CHECKS:
        if name not in checks:
            verdicts[name] = verdict("excluded", reason="not requested")
            continue
        t0 = time.perf_counter()
        verdicts[name] = RUNNERS[name](ctx)
        times[name] = round(time.perf_counter() - t0, 3)
    p = a.params
    out = {"beta": fmt(beta), "beta_plus": fmt(p.beta_plus), "beta_minus": fmt(p.beta_minus),
           "omega": fmt(p.omega), "verdicts": verdicts}
    if timings:
        out["timings"] = times
    return out


def exit_status(reports) -> int:
    statuses = {v["status"] for r in reports for v in r["verdicts"].values()}
    return 1 if statuses & {"fail", "undecided"} else 0


# -- sweep -----------------------------------------------------------------

def flags_for(n: int, beta: Fraction) -> list:
    p = alg.AlgebraParams.for_t_beta(n, beta)
    bp, bm = p.beta_plus, p.beta_minus
    out = []
    for name, val in (("beta_plus", bp), ("beta_minus", bm)):
        for target in (Fraction(0), Fraction(1, 2), Fraction(1)):
            if val == target:
                out.append(f"{name}={fmt(target)}")
    if bp == bm:
        out.append("beta_plus=beta_minus")
    return out


def sweep(s: designs.SteinerTripleSystem, betas) -> list:
    rows = []
    for beta in sorted(set(betas) | set(axial.transitional_betas(s.n))):
        a = alg.build_t_beta(s, beta)
        p = a.params
        res = alg.is_simple(a)
        rows.append({"beta": fmt(beta), "beta_plus": fmt(p.beta_plus),
                     "beta_minus": fmt(p.beta_minus), "omega": fmt(p.omega),
                     "flags": flags_for(s.n, beta), "simplicity": res.status})
    return rows


# -- verbs -----------------------------------------------------------------

def cmd_construct(args) -> int:
    order = args.order
    try:
        s = designs.construct_named(args.name, order)
    except SalError as err:
        raise UsageError(str(err)) from None
    text = designs.format_sts(s)
    if args.output:
        try:
            designs.write_sts(s, args.output)
        except OSError as err:
            raise UsageError(f"cannot write {args.output}: {err}") from None
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    try:
        raw = designs.parse_blockset(open(args.file).read())
    except OSError as err:
        raise UsageError(f"cannot read {args.file}: {err}") from None
    result = {"schema": SCHEMA, "file": args.file, "n": raw.n, "blocks": len(raw.blocks)}
    code = 0
    try:
        prof = designs.validate_psts(raw)
        result["regular"] = prof.regular
        result["r"] = prof.r
        s = designs.as_sts(raw)
        result.update(describe(s))
        result["valid_sts"] = True
    except SalError as err:
        result["valid_sts"] = False
        result["error"] = str(err)
        code = 1
    if args.json:
        dump_json(result, args.json)
    else:
        for k in sorted(result):
            print(f"{k}: {result[k]}")
    return code


def cmd_analyze(args) -> int:
    s = load_system(args.file)
    betas = [parse_beta(b) for b in args.beta] or [Fraction(1, 2)]
    checks = CHECKS
    if args.checks:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}")
    reports = [analyze(s, b, checks, args.closure_cap, args.timings) for b in betas]
    data = {"schema": SCHEMA, "system": describe(s), "reports": reports,
            "traceability": TRACEABILITY}
    if args.export_algebra:
        dump_json(alg.algebra_to_json(alg.build_t_beta(s, betas[0])), args.export_algebra)
    if args.json:
        dump_json(data, args.json)
    else:
        sysd = data["system"]
        print(f"system n={sysd['n']} b={sysd['b']} r={sysd['r']} hall={sysd['hall']}")
        for r in reports:
            print(f"beta={r['beta']} beta_plus={r['beta_plus']} beta_minus={r['beta_minus']} omega={r['omega']}")
            for name in CHECKS:
                v = r["verdicts"][name]
                extra = v["details"].get("verdict", "")
                print(f"  {name:<20} {v['status']:<9} {extra}".rstrip())
    return exit_status(reports)


def cmd_sweep(args) -> int:
    s = load_system(args.file)
    rows = sweep(s, [parse_beta(b) for b in args.beta])
    if args.json:
        dump_json({"schema": SCHEMA, "system": describe(s), "rows": rows}, args.json)
    else:
        print(f"{'beta':>8} {'beta_plus':>10} {'beta_minus':>10} {'omega':>8}  simplicity  flags")
        for r in rows:
            print(f"{r['beta']:>8} {r['beta_plus']:>10} {r['beta_minus']:>10} {r['omega']:>8}  "
                  f"{r['simplicity']:<10}  {' '.join(r['flags'])}")
    return 0


def cmd_catalog(args) -> int:
    s = load_system(args.file)
    beta = parse_beta(args.beta)
    if args.block:
        try:
            blocks = [tuple(sorted(int(p) for p in args.block.split(",")))]
        except ValueError:
            raise UsageError(f"bad block {args.block!r}") from None
    else:
        blocks = list(s.blocks)
    a = alg.build_t_beta(s, beta)
    try:
        cats = [idempotents.block_catalog(s, beta, B, a) for B in blocks]
    except SalError as err:
        raise UsageError(str(err)) from None
    ok = all(e.verified for c in cats for e in c.entries)
    if args.json:
        dump_json({"schema": SCHEMA, "catalogs": [c.to_json() for c in cats]}, args.json)
    else:
        for c in cats:
            for e in c.entries:
                coords = " ".join(fmt(x) for x in e.coords)
                print(f"{''.join(map(str, c.block)):<8} {e.label:<14} {e.kind:<22} {coords}")
    return 0 if ok else 1


def cmd_group(args) -> int:
    s = load_system(args.file)
    try:
        g = axial.miyamoto_group(s, cap=args.closure_cap)
    except ClosureCapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    rep = axial.three_transposition_check(g, s)
    data = {"schema": SCHEMA, "system": describe(s), "label": g.label, "order": g.order,
            "commutator_order": g.commutator_order,
            "abelianization_order": g.abelianization_order,
            "three_transpositions": {"involutions": rep.involutions,
                                     "conjugation": rep.conjugation,
                                     "products_order_3": rep.products_order_3,
                                     "commutator_3_group": rep.commutator_3_group}}
    if args.json:
        dump_json(data, args.json)
    else:
        for k in ("label", "order", "commutator_order", "abelianization_order"):
            print(f"{k}: {data[k]}")
        for k, v in data["three_transpositions"].items():
            print(f"{k}: {v}")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sal", description="Exact checks for Steiner triple system algebras")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", help="write a standard triple system")
    c.add_argument("name", choices=["ag", "fano", "bose", "skolem"])
    c.add_argument("order", nargs="?", type=int, help="dimension for ag, order for bose/skolem")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("validate", help="check a triple system file")
    v.add_argument("file")
    v.add_argument("--json")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="run the verification battery")
    a.add_argument("file")
    a.add_argument("--beta", action="append", default=[], help="p/q, repeatable")
    a.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECKS))
    a.add_argument("--json")
    a.add_argument("--closure-cap", type=int)
    a.add_argument("--timings", action="store_true")
    a.add_argument("--export-algebra", metavar="PATH")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("sweep", help="eigenvalue transitions and simplicity across beta")
    w.add_argument("file")
    w.add_argument("--beta", action="append", default=[])
    w.add_argument("--json")
    w.set_defaults(func=cmd_sweep)

    k = sub.add_parser("catalog", help="block-span idempotents")
    k.add_argument("file")
    k.add_argument("--beta", required=True)
    k.add_argument("--block", help="comma-separated points, e.g. 1,2,3")
    k.add_argument("--json")
    k.set_defaults(func=cmd_catalog)

    g = sub.add_parser("group", help="Miyamoto group closure")
    g.add_argument("file")
    g.add_argument("--closure-cap", type=int)
    g.add_argument("--json")
    g.set_defaults(func=cmd_group)
    return p


def _attach_negative_values(argv: list) -> list:
    # argparse reads "-4/3" as an option flag; bind it to the preceding --beta
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok == "--beta" and k + 1 < len(argv) and re.fullmatch(r"-\d[\d/.]*", argv[k + 1]):
            out.append(f"--beta={argv[k + 1]}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except (UsageError, SalError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
