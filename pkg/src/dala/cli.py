"""Command line front end: configuration, batch checks, JSON/table reports.

Every command assembles a deterministic report: identical configuration
and seed reproduce the JSON output byte for byte.  Exit code 0 means all
checks passed, 1 means some check failed (the report carries a witness),
2 means the configuration did not validate.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .algebra import DoubleAffine, LatticeVector, jacobi_exhaustive, jacobi_sample_check
from .extremal import extremal_space, irreducibility_probe
from .garland import (
    AnnihilatorPolynomial,
    annihilator_check,
    check_evaluation_relation,
    check_two_factor_relation,
    garland_check,
    nilpotency_index,
)
from .modules import (
    IMAGINARY,
    LEVEL_ZERO,
    PARABOLIC,
    Decomposition,
    InducedModule,
    Truncation,
    Weight,
    chain_dims,
)
from .partition import (
    affine_coordinates,
    from_affine_coordinates,
    in_imaginary_set,
    parabolic_value,
    roots_in_box,
    symmetric_part,
    symmetric_span_member,
)
from .syntax import format_symbol, parse_weight, vector_to_json
from .weyl import WeylSpec, build_weyl_module, highest_h_line_dim, verify_cyclic_relations


class ConfigError(Exception):
    pass


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "version", "seed", "config", "results", "ok"],
    "properties": {
        "command": {"type": "string"},
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "config": {"type": "object"},
        "results": {"type": "array", "items": {"type": "object"}},
        "ok": {"type": "boolean"},
    },
}


def _parse_box(text: str):
    out = {}
    for part in text.split(","):
        name, _, span = part.partition("=")
        lo, _, hi = span.partition("..")
        out[name.strip()] = (int(lo), int(hi))
    if set(out) != {"m", "n"}:
        raise ConfigError("box must look like m=-5..5,n=-5..5")
    return out["m"], out["n"]


def _parse_subset(text: str) -> frozenset:
    text = text.strip()
    if text in ("", "empty", "none"):
        return frozenset()
    return frozenset(int(tok) for tok in text.split(","))


def _parse_window(text: str):
    lo, _, hi = text.partition("..")
    return (int(lo), int(hi))


def _load_weight(args, rank: int):
    doc = args.weight
    if doc is None:
        return Weight(h=(Fraction(0),) * rank)
    if os.path.exists(doc):
        with open(doc) as fh:
            doc = fh.read()
    try:
        return parse_weight(doc, rank)
    except (ValueError, json.JSONDecodeError) as exc:
        raise ConfigError("bad weight document: %s" % exc)


def _truncation(args, default_len=6, default_t1=(-1, 1), default_t2=(-4, 4)):
    return Truncation(
        max_len=args.maxlen if args.maxlen is not None else default_len,
        t1_window=_parse_window(args.t1window) if args.t1window else default_t1,
        t2_window=_parse_window(args.t2window) if args.t2window else default_t2,
    )


def _variant(args) -> Decomposition:
    kind = getattr(args, "variant", "imaginary") or "imaginary"
    if kind == "parabolic":
        return Decomposition(PARABOLIC, _parse_subset(args.parabolic or ""))
    if kind == "levelzero":
        return Decomposition(LEVEL_ZERO)
    if kind == "imaginary":
        return Decomposition(IMAGINARY)
    raise ConfigError("unknown variant %r" % kind)


def _offset_doc(rs, off: LatticeVector):
    coeffs, k = affine_coordinates(rs, off)
    return {"alpha": list(coeffs), "delta2": k}


def _random_eval_weight(rank: int, rng: random.Random) -> Weight:
    eval_points = {}
    h = []
    for p in range(1, rank + 1):
        count = rng.choice((1, 2))
        points = []
        used = set()
        for _ in range(count):
            while True:
                a = Fraction(rng.randint(1, 6), rng.randint(1, 4)) * rng.choice(
                    (1, -1)
                )
                if a not in used and a != 0:
                    used.add(a)
                    break
            points.append((a, rng.randint(1, 3)))
        eval_points[p] = tuple(points)
        h.append(sum(w for _, w in points))
    return Weight(h=tuple(h), eval_points=eval_points)


# -- commands ----------------------------------------------------------------


def _cmd_roots(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    box = _parse_box(args.box or "m=-4..4,n=-4..4")
    subsets = []
    for text in args.parabolic_sets or ["", "1", "all"]:
        if text.strip() == "all":
            subsets.append(frozenset(range(alg.rank + 1)))
        else:
            subsets.append(_parse_subset(text))
    roots = list(roots_in_box(alg, *box))
    in_i = {v for v in roots if in_imaginary_set(alg, v)}
    union_ok = all(in_imaginary_set(alg, v) ^ in_imaginary_set(alg, v.negate()) for v in roots)
    closed = True
    root_set = set(roots)
    for v in in_i:
        for w in in_i:
            u = v.plus(w)
            if u in root_set and not in_imaginary_set(alg, u):
                closed = False
                break
        if not closed:
            break
    results = [
        {
            "check": "partition",
            "roots_in_box": len(roots),
            "imaginary_positive": len(in_i),
            "union_and_disjoint": union_ok,
            "closed_under_addition": closed,
        }
    ]
    ok = union_ok and closed
    for subset in subsets:
        sub_ok = all(
            parabolic_value(alg.rs, subset, v) >= 0 for v in in_i
        )
        strict = any(
            parabolic_value(alg.rs, subset, v) >= 0
            and not in_imaginary_set(alg, v)
            for v in roots
        )
        sym = symmetric_part(alg, subset, *box)
        sym_ok = all(symmetric_span_member(alg.rs, subset, v) for v in sym) and all(
            parabolic_value(alg.rs, subset, v) == 0
            for v in roots
            if symmetric_span_member(alg.rs, subset, v)
        )
        results.append(
            {
                "check": "parabolic",
                "subset": sorted(subset),
                "contains_imaginary_set": sub_ok,
                "strictly_bigger": strict,
                "symmetric_part_size": len(sym),
                "symmetric_part_matches_span": sym_ok,
            }
        )
        ok = ok and sub_ok and strict and sym_ok
    return results, ok


def _cmd_jacobi(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    report = jacobi_sample_check(alg, args.trials, args.seed, degree=args.degree)
    results = [
        {
            "check": "jacobi-sample",
            "trials": report.trials,
            "degree": args.degree,
            "ok": report.ok,
            "witness": [format_symbol(s) for s in report.witness]
            if report.witness
            else None,
        }
    ]
    ok = report.ok
    if args.exhaustive_degree is not None:
        rep2 = jacobi_exhaustive(alg, args.exhaustive_degree)
        results.append(
            {
                "check": "jacobi-exhaustive",
                "triples": rep2.trials,
                "degree": args.exhaustive_degree,
                "ok": rep2.ok,
                "witness": [format_symbol(s) for s in rep2.witness]
                if rep2.witness
                else None,
            }
        )
        ok = ok and rep2.ok
    return results, ok


def _cmd_dims(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    weight = _load_weight(args, alg.rank)
    trunc = _truncation(
        args,
        default_len=args.kmax,
        default_t2=(-args.kmax, args.kmax),
    )
    module = InducedModule(alg, Decomposition(IMAGINARY), weight, trunc)
    dims = module.delta2_dims(args.kmax)
    results = [{"check": "delta2-dims", "kmax": args.kmax, "dims": dims}]
    return results, True


def _cmd_extremal(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    weight = _load_weight(args, alg.rank)
    trunc = _truncation(
        args, default_len=args.kmax, default_t2=(-args.kmax, args.kmax)
    )
    module = InducedModule(alg, Decomposition(IMAGINARY), weight, trunc)
    results = []
    for k in range(args.kmax + 1):
        report = extremal_space(module, k)
        results.append(
            {
                "k": k,
                "weight_dim": report.weight_dim,
                "extremal_dim": report.extremal_dim,
                "basis": [vector_to_json(v) for v in report.basis],
            }
        )
    return results, True


def _cmd_irreducible(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    weight = _load_weight(args, alg.rank)
    trunc = _truncation(
        args, default_len=args.kmax, default_t2=(-args.kmax, args.kmax)
    )
    module = InducedModule(alg, Decomposition(IMAGINARY), weight, trunc)
    verdict = irreducibility_probe(module, args.kmax)
    results = [
        {
            "verdict": verdict.label,
            "k": verdict.k,
            "witness": vector_to_json(verdict.witness)
            if verdict.witness is not None
            else None,
        }
    ]
    return results, True


def _beta_from_text(alg, text: str) -> LatticeVector:
    from .syntax import parse_root

    text = text.strip().replace(" ", "")
    r1 = 0
    if "+d1" in text:
        text, _, _ = text.partition("+d1")
        r1 = 1
    coords = parse_root(text, alg.rank)
    return LatticeVector(coords, r1, 0)


def _cmd_garland(args, rng):
    alg = DoubleAffine.from_label(args.algebra, corrupt=args.break_cocycle)
    if args.weight is None:
        weight = _random_eval_weight(alg.rank, rng)
    else:
        weight = _load_weight(args, alg.rank)
    t_values = (
        [int(tok) for tok in args.t.split("..")] if ".." in args.t else None
    )
    ts = (
        list(range(t_values[0], t_values[1] + 1))
        if t_values
        else [int(args.t)]
    )
    tmax = max(ts)
    trunc = _truncation(
        args,
        default_len=tmax + 2,
        default_t2=(-2 * (tmax + 1), 2 * (tmax + 1)),
    )
    module = InducedModule(alg, Decomposition(LEVEL_ZERO), weight, trunc)
    beta = _beta_from_text(alg, args.beta)
    signs = {"+": [1], "-": [-1], "both": [1, -1]}[args.sign]
    results = []
    ok = True
    for t in ts:
        for sign in signs:
            res = garland_check(module, beta, t, sign)
            entry = {
                "beta": args.beta,
                "t": t,
                "sign": sign,
                "ok": res.ok,
            }
            if not res.ok:
                entry["residual_lower"] = vector_to_json(res.residual_lower)
                entry["residual_full"] = vector_to_json(res.residual_full)
            results.append(entry)
            ok = ok and res.ok
    return results, ok


def _cmd_nilpotency(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    weight = _load_weight(args, alg.rank)
    trunc = _truncation(
        args,
        default_len=args.nmax + 1,
        default_t2=(-args.nmax - 1, args.nmax + 1),
    )
    module = InducedModule(alg, Decomposition(LEVEL_ZERO), weight, trunc)
    found = nilpotency_index(module, args.node, args.n, args.nmax)
    results = [
        {
            "node": args.node,
            "n": args.n,
            "nmax": args.nmax,
            "index": found,
            "found": found is not None,
        }
    ]
    return results, found is not None


def _cmd_evalrel(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    if args.weight is None:
        weight = _random_eval_weight(alg.rank, rng)
    else:
        weight = _load_weight(args, alg.rank)
    trunc = _truncation(args, default_len=4, default_t2=(-6, 6))
    module = InducedModule(alg, Decomposition(LEVEL_ZERO), weight, trunc)
    eps = AnnihilatorPolynomial.from_weight(weight).coefficients
    if args.perturb:
        eps = tuple(
            c + (1 if i == len(eps) // 2 else 0) for i, c in enumerate(eps)
        )
    window = (-args.window, args.window)
    results = []
    ok = True
    from .partition import affine_height

    handles = []
    for root in sorted(alg.rs.roots):
        for r1 in (0, -1):
            beta = LatticeVector(root, r1, 0)
            h = affine_height(alg.rs, beta)
            if h < 0 and -h <= args.height_cutoff:
                handles.append(("x", root, r1))
    for k in range(1, args.height_cutoff // (1 + alg.rs.theta_height) + 1):
        for l in range(1, alg.rank + 1):
            coroot = tuple(1 if i + 1 == l else 0 for i in range(alg.rank))
            handles.append(("h", coroot, -k))
    for handle in handles:
        for m in range(-args.mrange, args.mrange + 1):
            rep = check_evaluation_relation(
                module, handle, m, eps=eps, window=window
            )
            results.append(
                {
                    "handle": _handle_doc(handle),
                    "m": m,
                    "ok": rep.ok,
                    "failures": len(rep.failures),
                }
            )
            ok = ok and rep.ok
    return results, ok


def _handle_doc(handle):
    kind = handle[0]
    if kind == "x":
        return {"kind": "x", "finite": list(handle[1]), "t1": handle[2]}
    return {"kind": "h", "coroot": list(handle[1]), "t1": handle[2]}


def _cmd_annihilator(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    if args.weight is None:
        weight = _random_eval_weight(alg.rank, rng)
    else:
        weight = _load_weight(args, alg.rank)
    trunc = _truncation(args, default_len=3, default_t2=(-6, 6))
    module = InducedModule(alg, Decomposition(LEVEL_ZERO), weight, trunc)
    poly = AnnihilatorPolynomial.from_weight(weight)
    rep = annihilator_check(module, poly, window=(-args.window, args.window))
    results = [
        {
            "degree": poly.degree,
            "coefficients": [str(c) for c in poly.coefficients],
            "ok": rep.ok,
            "failures": len(rep.failures),
        }
    ]
    return results, rep.ok


def _cmd_weyl(args, rng):
    points = tuple(Fraction(tok) for tok in args.points.split(","))
    weights = tuple(int(tok) for tok in args.weights.split(","))
    spec = WeylSpec(points, weights)
    mod = build_weyl_module(spec)
    relations_ok, failures = verify_cyclic_relations(mod)
    hline = highest_h_line_dim(mod)
    results = [
        {
            "dimension": mod.dimension,
            "basisSize": len(mod.basis_keys),
            "relationsOk": relations_ok,
            "hLineDim": hline,
        }
    ]
    return results, relations_ok and hline == 1


def _cmd_chain(args, rng):
    alg = DoubleAffine.from_label(args.algebra)
    weight = _load_weight(args, alg.rank)
    trunc = _truncation(args, default_len=4, default_t2=(-3, 3))
    small = _parse_subset(args.parabolic_sub or "")
    big = _parse_subset(args.parabolic or "1")
    offsets = []
    if args.offsets:
        for tok in args.offsets.split(";"):
            doc = json.loads(tok)
            offsets.append(
                from_affine_coordinates(
                    alg.rs, doc["alpha"], doc.get("delta2", 0)
                )
            )
    else:
        zero = alg.zero_vector()
        for na in range(3):
            for k in range(-1, 3):
                coeffs = (0,) + (na,) * alg.rank
                offsets.append(from_affine_coordinates(alg.rs, coeffs, k))
    table = chain_dims(alg, weight, small, big, offsets, trunc)
    results = [
        {
            "modules": table["modules"],
            "rows": [
                {
                    "offset": _offset_doc(alg.rs, row["offset"]),
                    "dims": row["dims"],
                }
                for row in table["rows"]
            ],
            "monotone": table["monotone"],
        }
    ]
    return results, table["monotone"]


COMMANDS = {
    "roots": _cmd_roots,
    "jacobi": _cmd_jacobi,
    "dims": _cmd_dims,
    "extremal": _cmd_extremal,
    "irreducible": _cmd_irreducible,
    "garland": _cmd_garland,
    "nilpotency": _cmd_nilpotency,
    "evalrel": _cmd_evalrel,
    "annihilator": _cmd_annihilator,
    "weyl": _cmd_weyl,
    "chain": _cmd_chain,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dala",
        description="Exact computations in double affine Lie algebra modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algebra", default="A1")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--lambda", dest="weight", default=None,
                       help="weight document: inline JSON or a file path")
        p.add_argument("--maxlen", type=int, default=None)
        p.add_argument("--t1window", default=None, help="e.g. -1..1")
        p.add_argument("--t2window", default=None, help="e.g. -4..4")

    p = sub.add_parser("roots", help="partition and parabolic cone checks")
    common(p)
    p.add_argument("--box", default=None, help="m=-4..4,n=-4..4")
    p.add_argument(
        "--parabolic",
        dest="parabolic_sets",
        action="append",
        default=None,
        help="comma separated node list; repeatable; 'all' for the full set",
    )

    p = sub.add_parser("jacobi", help="Jacobi identity sampling")
    common(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--degree", type=int, default=5)
    p.add_argument("--exhaustive-degree", type=int, default=None)

    p = sub.add_parser("dims", help="delta2 weight space dimension table")
    common(p)
    p.add_argument("--kmax", type=int, default=5)

    p = sub.add_parser("extremal", help="extremal subspaces per delta2 level")
    common(p)
    p.add_argument("--kmax", type=int, default=3)

    p = sub.add_parser("irreducible", help="bounded irreducibility probe")
    common(p)
    p.add_argument("--kmax", type=int, default=3)

    p = sub.add_parser("garland", help="current power identities")
    common(p)
    p.add_argument("--t", default="1..2")
    p.add_argument("--beta", default="a1")
    p.add_argument("--sign", choices=("+", "-", "both"), default="both")
    p.add_argument(
        "--break-cocycle",
        action="store_const",
        const="coroot-sign",
        default=None,
        help="negative control: corrupt the bracket and expect failure",
    )

    p = sub.add_parser("nilpotency", help="lowering power annihilation index")
    common(p)
    p.add_argument("--node", type=int, default=1)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--nmax", type=int, default=4)

    p = sub.add_parser("evalrel", help="evaluation relation checks")
    common(p)
    p.add_argument("--height-cutoff", type=int, default=2)
    p.add_argument("--mrange", type=int, default=2)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--perturb", action="store_true")

    p = sub.add_parser("annihilator", help="annihilator ideal checks")
    common(p)
    p.add_argument("--window", type=int, default=2)

    p = sub.add_parser("weyl", help="loop sl2 cyclic module dimensions")
    common(p)
    p.add_argument("--points", default="1")
    p.add_argument("--weights", default="1")

    p = sub.add_parser("chain", help="surjection chain dimension table")
    common(p)
    p.add_argument("--parabolic", default="1")
    p.add_argument("--parabolic-sub", default="")
    p.add_argument(
        "--offsets",
        default=None,
        help='semicolon separated JSON offsets {"alpha": [...], "delta2": k}',
    )

    return parser


def _print_table(report):
    lines = ["%s (seed %d): %s" % (report["command"], report["seed"],
                                   "ok" if report["ok"] else "FAILED")]
    for row in report["results"]:
        parts = []
        for key, val in row.items():
            if isinstance(val, (list, dict)):
                val = json.dumps(val, sort_keys=True)
            parts.append("%s=%s" % (key, val))
        lines.append("  " + "  ".join(parts))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("DALA_SEED", "0"))
    rng = random.Random(seed)
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "seed", "format") and v is not None
    }
    try:
        results, ok = COMMANDS[args.command](args, rng)
    except (ConfigError, ValueError) as exc:
        sys.stderr.write("configuration error: %s\n" % exc)
        return 2
    report = {
        "command": args.command,
        "version": __version__,
        "seed": seed,
        "config": config,
        "results": results,
        "ok": ok,
    }
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_print_table(report))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
