"""Command-line driver: inspection commands, module builders, and the
verification suites, with deterministic JSON/TSV reports."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import conesheaf as cs
from . import lmod as lm
from . import microsupp as ms
from . import repcat as rc
from . import satake as st
from . import verify as vf
from .rootcore import UnsupportedGroup, build_root_datum, parse_group

SCHEMA = 1


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def weight_json(w):
    return [frac_str(x) for x in w]


def graded_module_json(gm: rc.GradedModule):
    return [
        {"degree": d, "hw": weight_json(v.hw), "mult": mult}
        for (d, v), mult in gm.sorted_entries()
    ]


def lmodule_json(m: lm.LModule):
    strata = sorted(m.strata, key=lambda s: (len(s), sorted(s)))
    edges = []
    for p, q in m.pairs():
        mor = m.attach(p, q)
        blocks = []
        for (d, v), mat in sorted(mor.blocks.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key())):
            blocks.append(
                {
                    "degree": d,
                    "hw": weight_json(v.hw),
                    "matrix": [[frac_str(x) for x in row] for row in mat],
                }
            )
        if blocks:
            edges.append({"p": sorted(p), "q": sorted(q), "blocks": blocks})
    return {
        "strata": [sorted(s) for s in strata],
        "stalks": {str(sorted(s)): graded_module_json(m.e[s]) for s in strata},
        "edges": edges,
    }


def intgraded_json(h: dict):
    out = {}
    for d in sorted(h):
        free, tors = h[d]
        terms = []
        if free:
            terms.append("Z" if free == 1 else f"Z^{free}")
        terms += [f"Z/{t}" for t in tors]
        out[str(d)] = " + ".join(terms) if terms else "0"
    return out


def report_entry(e: ms.SupportEntry):
    return {
        "levi": sorted(e.v.par),
        "hw": weight_json(e.v.hw),
        "q_v": sorted(e.interval.q_v),
        "q_v_prime": sorted(e.interval.q_v_prime),
        "weak": e.weak,
        "full": e.full,
        "essential": e.essential,
        "c": e.c,
        "d": e.d,
        "c_ess": e.c_ess,
        "d_ess": e.d_ess,
    }


def micro_support_tsv(rep: ms.MicroSupportReport) -> str:
    lines = ["levi\thw\tq_v\tq_v_prime\tkind\tc\td"]
    for e in rep.entries:
        kind = "essential" if e.essential else ("full" if e.full else "weak")
        lines.append(
            "\t".join(
                [
                    ",".join(map(str, sorted(e.v.par))) or "-",
                    ",".join(weight_json(e.v.hw)),
                    ",".join(map(str, sorted(e.interval.q_v))) or "-",
                    ",".join(map(str, sorted(e.interval.q_v_prime))) or "-",
                    kind,
                    str(e.c),
                    str(e.d),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict, tsv: str | None = None):
    payload = {"schema": SCHEMA, **payload}
    if args.format == "tsv" and tsv is not None:
        text = tsv
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_par(s: str, rank: int):
    s = (s or "").strip()
    if s in ("-", ""):
        return frozenset()
    idx = frozenset(int(x) for x in s.split(","))
    if any(i < 0 or i >= rank for i in idx):
        raise ValueError(f"simple-root index out of range in {s!r}")
    return idx


def _datum(args):
    t, r = parse_group(args.group)
    sigma = None
    if getattr(args, "sigma_node", None):
        sigma = tuple(int(x) for x in args.sigma_node.split(","))
    return build_root_datum(t, r, sigma)


def _lambda(args, datum):
    if not getattr(args, "lam", None):
        return tuple(Fraction(0) for _ in range(datum.rank))
    parts = [Fraction(x) for x in args.lam.split(",")]
    if len(parts) != datum.rank:
        raise ValueError("--lambda length does not match the rank")
    return tuple(parts)


def _module(args, datum):
    kind = args.kind
    lam = _lambda(args, datum)
    if kind in ("ic_m", "ic_n"):
        return lm.build_ic(datum, lam, kind[-1])
    if kind in ("wc_mu", "wc_nu"):
        return lm.build_wc(datum, lam, kind[3:])
    raise ValueError(f"unknown module kind {kind!r}")


def cmd_rootinfo(args) -> int:
    datum = _datum(args)
    payload = {
        "group": f"{datum.type_label}{datum.rank}",
        "positive_roots": [list(g) for g in datum.pos_roots],
        "n_positive_roots": len(datum.pos_roots),
        "weyl_order": len(datum.weyl_group()),
        "cartan": datum.cartan,
        "symmetrizer": datum.symmetrizer,
        "rho": weight_json(datum.rho()),
        "dim_symmetric_space": datum.dim_symmetric_space(datum.full_par()),
    }
    _emit(args, payload)
    return 0


def cmd_kostant(args) -> int:
    datum = _datum(args)
    p = _parse_par(args.p, datum.rank)
    q = _parse_par(args.q, datum.rank) if args.q is not None else datum.full_par()
    lam = _lambda(args, datum)
    v = rc.make_irr(datum, q, lam)
    out = rc.kostant_functor(datum, p, q, rc.GradedModule({(0, v): 1}))
    _emit(args, {"kostant": graded_module_json(out)})
    return 0


def cmd_build_module(args) -> int:
    datum = _datum(args)
    m = _module(args, datum)
    bad = lm.validate(m)
    payload = {"kind": args.kind, "lambda": weight_json(_lambda(args, datum)), "valid": bad is None}
    if args.kind == "wc_mu":
        # any epsilon at most this value realizes the same truncation as the
        # exact infinitesimal used internally
        payload["epsilon"] = frac_str(rc.concrete_epsilon(datum))
    payload["module"] = lmodule_json(m)
    _emit(args, payload)
    return 0 if bad is None else 1


def cmd_local_cohomology(args) -> int:
    datum = _datum(args)
    m = _module(args, datum)
    p = _parse_par(args.p, datum.rank)
    q = _parse_par(args.q, datum.rank)
    h = rc.cohomology(lm.local_cohomology_with_supports(m, p, q))
    _emit(args, {"p": sorted(p), "q": sorted(q), "cohomology": graded_module_json(h)})
    return 0


def cmd_micro_support(args) -> int:
    datum = _datum(args)
    m = _module(args, datum)
    rep = ms.micro_support(m, args.ss_kind)
    entries = [report_entry(e) for e in rep.entries if getattr(e, args.ss_kind)]
    payload = {
        "kind": args.ss_kind,
        "entries": entries,
        "global": {
            "supported": rep.global_supported,
            "c": rep.global_c,
            "d": rep.global_d,
        },
    }
    _emit(args, payload, tsv=micro_support_tsv(rep))
    return 0


def cmd_global_bounds(args) -> int:
    datum = _datum(args)
    m = _module(args, datum)
    c, d, supported = ms.global_bounds(m)
    payload = {"supported": supported, "c": c, "d": d}
    if not supported:
        payload["note"] = "real-form dimension data unsupported for this group"
    _emit(args, payload)
    return 0


def cmd_ih_cone(args) -> int:
    datum = _datum(args)
    p = _parse_par(args.stratum, datum.rank)
    if p == datum.full_par():
        raise ValueError("the cone needs a proper base stratum")
    w = None
    if args.w:
        word = tuple(int(x) - 1 for x in args.w.split(","))
        w = datum.identity_elem()
        for i in word:
            w = datum.multiply(w, datum.weyl_by_mat(datum.simple_reflection_mat(i)))
    else:
        target = args.w_profile or 0
        for cand in datum.weyl_group():
            if datum.factor(cand, p)[1].length == target:
                w = cand
                break
        if w is None:
            raise ValueError(f"no Weyl element with P-length {target}")
    cone = cs.cone_for(datum, p, args.perversity, w)
    lengths = {}
    for q in datum.all_parabolics():
        if p <= q and q != datum.full_par():
            lengths[str(sorted(q))] = cs.perversity_pw(datum, args.perversity, w, q)
    supports = {}
    for q in datum.all_parabolics():
        if p <= q:
            rel = tuple(sorted(set(q) - set(p)))
            supports[str(sorted(q))] = intgraded_json(
                cs.ih_with_supports(cone, rel, args.method)
            )
    payload = {
        "base": sorted(p),
        "w": [i + 1 for i in w.word],
        "perversity": args.perversity,
        "pw": lengths,
        "ih_cone": intgraded_json(cs.ih_cone(cone, args.method)),
        "ih_supports": supports,
    }
    _emit(args, payload)
    return 0


def cmd_satake_poset(args) -> int:
    datum = _datum(args)
    if datum.sigma_nodes is None:
        raise ValueError("satake-poset requires --sigma-node")
    rows = []
    for r in st.saturated_parabolics(datum):
        geo = st.stratum_geometry(datum, r)
        rows.append(
            {
                "r": sorted(r),
                "kappa": list(geo.kappa),
                "ell": st.ell_block(datum, r),
                "fiber_strata": [sorted(p) for p in st.fiber_strata(datum, r)],
                "codim": geo.codim,
                "dim_a_r": geo.dim_a_r,
                "equal_rank_h": geo.equal_rank_h,
            }
        )
    _emit(args, {"saturated": rows})
    return 0


SUITE_ALIASES = {
    "kostant-oracle": ["kostant-oracle", "euler"],
    "functor-laws": ["functor-laws", "composition"],
    "local-ic": ["validity", "local-ic"],
    "local-wc": ["local-wc"],
    "wc-ss": ["wc-ss"],
    "ic-ss": ["ic-ss"],
    "purity": ["purity"],
    "interval-equalities": ["interval-equalities"],
    "basic-lemma": ["basic-lemma"],
    "fiber-bounds": ["fiber-bounds"],
    "euler": ["euler"],
    "composition": ["composition"],
    "validity": ["validity"],
    "all": list(vf.SUITES.keys()),
}


def cmd_verify(args) -> int:
    names = SUITE_ALIASES.get(args.suite)
    if names is None:
        raise ValueError(f"unknown suite {args.suite!r}; choose from {sorted(SUITE_ALIASES)}")
    groups = None
    if args.group:
        groups = [parse_group(args.group)]
    results = []
    failed = False
    for name in names:
        fn = vf.SUITES[name]
        kwargs = {}
        import inspect

        sig = inspect.signature(fn)
        if "groups" in sig.parameters and groups is not None:
            kwargs["groups"] = groups
        if "seed" in sig.parameters:
            kwargs["seed"] = args.seed
        if "lam_bound" in sig.parameters and args.lam_bound is not None:
            kwargs["lam_bound"] = args.lam_bound
        if "ce_cap" in sig.parameters and args.ce_cap is not None:
            kwargs["ce_cap"] = args.ce_cap
        if "tensor_depth" in sig.parameters and args.tensor_depth is not None:
            kwargs["tensor_depth"] = args.tensor_depth
        r = fn(**kwargs)
        results.append(r)
        failed = failed or not r.ok
        line = f"[{'PASS' if r.ok else 'FAIL'}] {r.name}: {r.cases} cases, {len(r.failures)} failures ({r.seconds:.1f}s)"
        print(line, file=sys.stderr)
    payload = {
        "seed": args.seed,
        "suites": [
            {
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "findings": r.findings,
            }
            for r in results
        ],
        "ok": not failed,
    }
    _emit(args, payload)
    return 1 if failed else 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lmodkit",
        description="Exact combinatorial sheaf complexes on parabolic posets",
    )
    ap.add_argument("--config", help="JSON config file; flags override its entries")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module_flags=False):
        p.add_argument("--group", default="A1", help="catalog group, e.g. A2, C3, G2")
        p.add_argument("--lambda", dest="lam", default=None, help="comma list of fundamental coords")
        p.add_argument("--sigma-node", default=None, help="comma list of sigma-adjacent nodes")
        p.add_argument("--ce-cap", type=int, default=8)
        p.add_argument("--tensor-depth", type=int, default=12)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json", "tsv"], default="json")
        if module_flags:
            p.add_argument(
                "--kind",
                choices=["ic_m", "ic_n", "wc_mu", "wc_nu"],
                default=None,
                help="module constructor (or use --perversity/--profile)",
            )
            p.add_argument("--perversity", choices=["m", "n"], default=None)
            p.add_argument("--profile", choices=["mu", "nu"], default=None)

    p = sub.add_parser("rootinfo")
    common(p)
    p.set_defaults(fn=cmd_rootinfo)

    p = sub.add_parser("kostant")
    common(p)
    p.add_argument("--p", default="", help="Levi subset of the target parabolic")
    p.add_argument("--q", default=None, help="Levi subset of the source parabolic")
    p.set_defaults(fn=cmd_kostant)

    p = sub.add_parser("build-module")
    common(p, module_flags=True)
    p.set_defaults(fn=cmd_build_module)

    p = sub.add_parser("local-cohomology")
    common(p, module_flags=True)
    p.add_argument("p", help="comma list for Delta^P ('-' for minimal)")
    p.add_argument("q", help="comma list for Delta^Q")
    p.set_defaults(fn=cmd_local_cohomology)

    p = sub.add_parser("micro-support")
    common(p, module_flags=True)
    p.add_argument("--ss-kind", dest="ss_kind", choices=["weak", "full", "essential"], default="full")
    p.set_defaults(fn=cmd_micro_support)

    p = sub.add_parser("global-bounds")
    common(p, module_flags=True)
    p.set_defaults(fn=cmd_global_bounds)

    p = sub.add_parser("ih-cone")
    common(p)
    p.add_argument("--perversity", choices=["m", "n"], default="m")
    p.add_argument("--stratum", default="-", help="Delta^P of the cone base")
    p.add_argument("--w", default=None, help="reduced word, 1-based, e.g. 1,2")
    p.add_argument("--w-profile", dest="w_profile", type=int, default=None,
                   help="pick the first Weyl element whose P-part has this length")
    p.add_argument("--method", choices=["engine", "oracle"], default="engine")
    p.set_defaults(fn=cmd_ih_cone)

    p = sub.add_parser("satake-poset")
    common(p)
    p.set_defaults(fn=cmd_satake_poset)

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("suite", help="suite name or 'all'")
    p.add_argument("--lam-bound", dest="lam_bound", type=int, default=None)
    p.set_defaults(fn=cmd_verify)
    return ap


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    if not args.config:
        return args
    with open(args.config) as fh:
        conf = json.load(fh)
    for key, val in conf.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) in (None, "", "A1", 0, "json"):
            setattr(args, attr, val)
    return args


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
        args = _apply_config(args)
        if getattr(args, "kind", None) is None and hasattr(args, "kind"):
            if getattr(args, "perversity", None):
                args.kind = "ic_" + args.perversity
            elif getattr(args, "profile", None):
                args.kind = "wc_" + args.profile
            else:
                args.kind = "ic_m"
        threads = os.environ.get("LMODKIT_THREADS")
        if threads is not None and int(threads) < 1:
            raise ValueError("LMODKIT_THREADS must be positive")
    except (ValueError, UnsupportedGroup, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, UnsupportedGroup, lm.NonAdmissible, lm.UnsupportedShape) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
