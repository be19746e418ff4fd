"""Command-line interface.  Exit codes: 0 pass, 2 refuted, 3 inconclusive or skipped, 1 error."""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import __version__
from .category import Caps, CategoryError, FinCat, FinFunctor, QuotaError, get_caps, render_id, set_caps
from .io import FormatError, load_file, serialize, to_document
from .relative import KRelStructure, cat_hat

EXIT = {"pass": 0, "refuted": 2, "inconclusive": 3, "skipped": 3}


class UsageError(Exception):
    pass


def _structure(obj: Any, k: int | None) -> KRelStructure:
    if isinstance(obj, KRelStructure):
        return obj
    if isinstance(obj, FinCat):
        if not k:
            return cat_hat(obj)
        full = frozenset(obj.morphisms)
        return KRelStructure(obj, (full,) * k, full, saturated=True, name=obj.name)
    raise UsageError("expected a category or krel document")


def _expect(kind: str, obj: Any, *allowed: str) -> None:
    if kind not in allowed:
        raise UsageError(f"expected a {' or '.join(allowed)} document, got {kind}")


def _report(prop: str, overall: str, cases: list[dict], args, details: dict | None = None, family: str = "") -> dict:
    env: dict[str, Any] = {"bound": args.bound, "caps": get_caps().describe(), "family": family, "version": __version__}
    if getattr(args, "n", None) is not None:
        env["n"] = args.n
    out = {
        "property": prop,
        "overall": overall,
        "cases": sorted(cases, key=lambda c: c["id"]),
        "env": env,
    }
    if details:
        out["details"] = details
    return out


def _cases(rep) -> list[dict]:
    out = []
    for c in rep.cases:
        d = {"id": c.id, "status": c.status, "verdict": str(c.verdict) if c.verdict is not None else c.status}
        if c.witness:
            d["witness"] = c.witness
        out.append(d)
    return out


def _from_property(rep, args, family: str = "") -> dict:
    details = {"notes": rep.notes} if rep.notes else None
    return _report(rep.property, rep.overall, _cases(rep), args, details, family)


def _emit(report: dict, args) -> int:
    if args.format == "machine":
        text = serialize(to_document(report, "report"))
    else:
        lines = [f"{report['property']}: {report['overall']}"]
        for k, v in (report.get("details") or {}).items():
            if isinstance(v, list):
                if not v:
                    continue
                lines += [f"  {k}:"] + [f"    {x}" for x in v]
            else:
                lines.append(f"  {k}: {v}")
        for c in report["cases"]:
            w = f"  [{c['witness']}]" if c.get("witness") and c["witness"] != c["verdict"] else ""
            lines.append(f"  {c['id']}: {c['verdict']}{w}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT[report["overall"]]


def _need_in(args) -> tuple[str, Any]:
    if not args.input:
        raise UsageError("--in is required")
    return load_file(args.input)


# -- commands --------------------------------------------------------------------------


def _wit(x: Any) -> str:
    return render_id(x) if isinstance(x, (str, tuple)) else str(x)


def cmd_validate(args) -> int:
    from .relative import validate_krel

    kind, obj = _need_in(args)
    cases = [{"id": "schema", "status": "pass", "verdict": f"valid {kind}"}]
    if kind == "krel":
        for r in validate_krel(obj, args.depth).results:
            d = {"id": r.axiom, "status": {"pass": "pass", "fail": "refuted"}.get(r.status, "inconclusive"),
                 "verdict": r.status}
            if r.detail or r.witness is not None:
                d["witness"] = r.detail or _wit(r.witness)
            cases.append(d)
    statuses = {c["status"] for c in cases}
    overall = "refuted" if "refuted" in statuses else ("inconclusive" if "inconclusive" in statuses else "pass")
    return _emit(_report("validate", overall, cases, args), args)


def cmd_nerve(args) -> int:
    from .simplicial import check_simplicial_identities, k_simplicial_nerve, nerve

    kind, obj = _need_in(args)
    _expect(kind, obj, "category", "krel")
    s = _structure(obj, args.k)
    if s.k == 0:
        m = nerve(s.ambient, args.bound)
        cells = [f"{d}: {m.count((d,))} simplices, {len(m.nondegenerate(d))} nondegenerate" for d in range(args.bound + 1)]
        bad = check_simplicial_identities(m)
    else:
        m = k_simplicial_nerve(s, args.bound)
        from .grids import iterate_multidegrees

        cells = [f"{','.join(map(str, md))}: {m.count(md)} cells" for md in iterate_multidegrees(1, m.arity)]
        bad = check_simplicial_identities(m, 1)
    cases = [{"id": "simplicial identities", "status": "refuted" if bad else "pass",
              "verdict": "; ".join(bad[:3]) or "hold"}]
    return _emit(_report("nerve", cases[0]["status"], cases, args, {"cells": cells}), args)


def cmd_homology(args) -> int:
    from .homology import category_homology, relative_homology

    kind, obj = _need_in(args)
    _expect(kind, obj, "category", "krel")
    s = _structure(obj, args.k)
    sig = category_homology(s.ambient, args.bound) if s.k == 0 else relative_homology(s, args.bound, literal=args.literal)
    case = {"id": "homology", "status": "pass", "verdict": str(sig)}
    return _emit(_report("homology", "pass", [case], args, {"signature": sig.to_json()}), args)


def cmd_w_star(args) -> int:
    from .relative import w_star_at

    kind, obj = _need_in(args)
    _expect(kind, obj, "category", "krel")
    s = _structure(obj, args.k or 1)
    p = tuple(int(x) for x in args.p.split(",")) if args.p else (0,) * s.k
    w = w_star_at(s, p)
    case = {"id": f"w_{','.join(map(str, p))}", "status": "pass", "verdict": f"{len(w.objects)} objects, {len(w.morphisms)} morphisms"}
    return _emit(_report("w-star", "pass", [case], args), args)


def cmd_grothendieck(args) -> int:
    from .grothendieck import grothendieck

    kind, obj = _need_in(args)
    _expect(kind, obj, "diagram")
    G, _ = grothendieck(obj)
    case = {"id": "Gr", "status": "pass", "verdict": f"{len(G.objects)} objects, {len(G.morphisms)} morphisms"}
    return _emit(_report("grothendieck", "pass", [case], args), args)


def _zigzag_parts(kind: str, obj: Any) -> tuple[FinFunctor, FinFunctor | None, KRelStructure | None, KRelStructure | None, KRelStructure | None]:
    if kind == "zigzag":
        return obj.f, obj.g, obj.x, obj.y, obj.z
    if kind == "functor":
        return obj, None, None, None, None
    raise UsageError("expected a functor or zigzag document")


def cmd_n_arrow(args) -> int:
    from .arrows import hewq_problems, n_arrow_fiber, n_arrow_path, n_arrow_pullback
    from .homology import pi0, relative_homology

    kind, obj = _need_in(args)
    n = args.n or 1
    if args.which == "path":
        _expect(kind, obj, "category", "krel")
        s = _structure(obj, args.k)
        p = n_arrow_path(s, n)
        amb, details = p.structure, {"hewq_problems": hewq_problems(p)}
    else:
        f, g, x, y, z = _zigzag_parts(kind, obj)
        if args.which == "fiber":
            amb, details = n_arrow_fiber(f, n, x, z).structure, {}
        else:
            if g is None:
                raise UsageError("pullback needs a zigzag document")
            amb, details = n_arrow_pullback(f, g, n, x, y, z).structure, {}
    sig = relative_homology(amb, args.bound)
    details.update({"objects": len(amb.ambient.objects), "morphisms": len(amb.ambient.morphisms),
                    "components": pi0(amb.ambient), "homology": str(sig)})
    bad = details.get("hewq_problems")
    case = {"id": f"{args.which} n={n}", "status": "refuted" if bad else "pass",
            "verdict": f"{details['objects']} objects, {details['morphisms']} morphisms"}
    return _emit(_report(f"n-arrow {args.which}", case["status"], [case], args, details), args)


def cmd_embed(args) -> int:
    from .arrows import zigzag_embed

    kind, obj = _need_in(args)
    _expect(kind, obj, "zigzag")
    r = zigzag_embed(obj.f, obj.g, args.n or 1, obj.x, obj.y, obj.z, bound=args.bound)
    sq = "pass" if r.squares_ok else "refuted"
    hs = {"consistent": "pass", "refuted": "refuted", "inconclusive": "inconclusive"}[r.verdict_h.kind]
    cases = [
        {"id": "left square", "status": "pass" if not r.left_square else "refuted", "verdict": "; ".join(r.left_square) or "strict pullback"},
        {"id": "right square", "status": "pass" if not r.right_square else "refuted", "verdict": "; ".join(r.right_square) or "strict pullback"},
        {"id": "h", "status": hs, "verdict": str(r.verdict_h)},
    ]
    overall = "refuted" if sq == "refuted" or hs == "refuted" else hs
    details = {"k": str(r.verdict_k), "strict pullback": f"{len(r.strict.ambient.objects)} objects"}
    return _emit(_report("embed", overall, cases, args, details), args)


def cmd_check(args) -> int:
    from .properties import (
        RelativeMap,
        check_Bn,
        check_Cn,
        check_fibrillation,
        check_relative_functor,
        default_cospan_family,
        quillen_lemma_harness,
    )
    from .relative import check_three_arrow_calculus, iso_calculus

    kind, obj = _need_in(args)
    n = args.n or 1
    if args.what == "bn":
        f, _, x, _, z = _zigzag_parts(kind, obj)
        target = f if z is None or z.k == 0 else RelativeMap(f, x, z)
        return _emit(_from_property(check_Bn(target, n, args.bound, window=args.window), args), args)
    if args.what == "cn":
        _expect(kind, obj, "category", "krel")
        target = obj if kind == "category" and not args.k else _structure(obj, args.k)
        return _emit(_from_property(check_Cn(target, n, args.bound, window=args.window), args), args)
    if args.what == "calculus":
        _expect(kind, obj, "category", "krel")
        s = _structure(obj, args.k or 1)
        if args.calculus:
            ck, cal = load_file(args.calculus)
            _expect(ck, cal, "calculus")
        else:
            cal = iso_calculus(s)
        rep = check_three_arrow_calculus(s, cal, strict=args.strict)
        cases = [{"id": r.axiom, "status": {"pass": "pass", "fail": "refuted"}.get(r.status, "inconclusive"),
                  "verdict": r.status, **({"witness": _wit(r.witness)} if r.witness is not None else {})}
                 for r in rep.results]
        overall = "pass" if rep.ok else ("refuted" if any(c["status"] == "refuted" for c in cases) else "inconclusive")
        return _emit(_report("calculus" + (" (strict)" if args.strict else ""), overall, cases, args), args)
    if args.what == "relative":
        _expect(kind, obj, "diagram")
        return _emit(_from_property(check_relative_functor(obj, args.bound), args), args)
    if args.what == "fibrillation":
        fam = "simplex probes Δ[m] -> B, m <= 2, with identity and face feet"
        if kind == "diagram":
            q = quillen_lemma_harness(obj, args.bound)
            rep = _from_property(q.fibrillation, args, fam)
            rep["details"] = {"relative-functor": q.relative.overall, "agree": q.agree}
            return _emit(rep, args)
        _expect(kind, obj, "functor")
        return _emit(_from_property(check_fibrillation(obj, default_cospan_family(obj.target), args.bound), args, fam), args)
    raise UsageError(f"unknown check {args.what}")


def cmd_oracle(args) -> int:
    from .oracle import groupoid_pullback_oracle

    kind, obj = _need_in(args)
    _expect(kind, obj, "zigzag")
    pres = groupoid_pullback_oracle(obj.f, obj.g)
    sig = pres.homology(args.bound)
    cases = [{"id": render_id(cid), "status": "pass", "verdict": f"isotropy of order {len(g.elements)}"}
             for cid, g in pres.components]
    return _emit(_report("oracle", "pass", cases, args, {"summary": pres.summary(), "homology": str(sig)}), args)


def cmd_verify(args) -> int:
    from .oracle import verify_theorem_Bn

    kind, obj = _need_in(args)
    _expect(kind, obj, "zigzag")
    n = args.n or 1
    r = verify_theorem_Bn(obj.f, obj.g, n, args.bound, x=obj.x, y=obj.y, z=obj.z, window=args.window)
    cases = _cases(r.hypothesis)
    details: dict[str, Any] = {"mode": r.mode, "notes": r.notes}
    if r.construction is not None:
        details["construction"] = str(r.construction)
        details["components"] = r.construction_pi0
    if r.oracle is not None:
        details["oracle"] = f"{r.oracle.summary()}; {r.oracle_homology}"
        details["homology match"] = r.homology_match
    if r.embed is not None:
        details["embed squares"] = "strict pullbacks" if r.embed.squares_ok else "not strict pullbacks"
        details["h"] = str(r.embed.verdict_h)
        details["k"] = str(r.embed.verdict_k)
    return _emit(_report(f"theorem B_{n}", r.overall, [{**c, "id": "hypothesis/" + c["id"]} for c in cases], args, details), args)


def cmd_corpus(args) -> int:
    from .corpus import generate_corpus, write_corpus

    if args.out:
        paths = write_corpus(args.out, args.seed)
        sys.stdout.write(f"wrote {len(paths)} files to {args.out}\n")
    else:
        for name in generate_corpus(args.seed):
            sys.stdout.write(name + "\n")
    return 0


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=4, help="truncation bound for nerves (default 4)")
    common.add_argument("--n", type=int, default=None, help="number of arrows in zigzags")
    common.add_argument("--k", type=int, default=None, help="read plain categories as maximal k-relative ones")
    common.add_argument("--depth", type=int, default=4, help="relation search depth for validation")
    common.add_argument("--caps", default=None, help="size caps, e.g. objects=10000,morphisms=100000")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--in", dest="input", default=None, help="input document")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--window", type=int, default=0, help="largest multidegree entry checked through w_*")

    p = argparse.ArgumentParser(prog="relcat", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common]).set_defaults(func=cmd_validate)
    sub.add_parser("nerve", parents=[common]).set_defaults(func=cmd_nerve)
    h = sub.add_parser("homology", parents=[common])
    h.add_argument("--literal", action="store_true", help="always use the diagonal of the k-simplicial nerve")
    h.set_defaults(func=cmd_homology)
    w = sub.add_parser("w-star", parents=[common])
    w.add_argument("--p", default=None, help="multidegree, comma separated")
    w.set_defaults(func=cmd_w_star)
    sub.add_parser("grothendieck", parents=[common]).set_defaults(func=cmd_grothendieck)
    na = sub.add_parser("n-arrow", parents=[common])
    na.add_argument("which", choices=("path", "fiber", "pullback"))
    na.set_defaults(func=cmd_n_arrow)
    sub.add_parser("embed", parents=[common]).set_defaults(func=cmd_embed)
    ch = sub.add_parser("check", parents=[common])
    ch.add_argument("what", choices=("bn", "cn", "calculus", "relative", "fibrillation"))
    ch.add_argument("--calculus", default=None, help="calculus document (default: the iso calculus)")
    ch.add_argument("--strict", action="store_true", help="check the strict calculus conditions")
    ch.set_defaults(func=cmd_check)
    sub.add_parser("oracle", parents=[common]).set_defaults(func=cmd_oracle)
    sub.add_parser("verify-theorem", parents=[common]).set_defaults(func=cmd_verify)
    c = sub.add_parser("corpus", parents=[common])
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    old = None
    try:
        if args.caps:
            old = set_caps(Caps.parse(args.caps))
        return args.func(args)
    except QuotaError as e:
        sys.stderr.write(f"relcat {args.command}: inconclusive, {e}\n")
        return EXIT["inconclusive"]
    except (UsageError, FormatError, CategoryError, ValueError, OSError) as e:
        sys.stderr.write(f"relcat {args.command}: {type(e).__name__}: {e}\n")
        return 1
    finally:
        if old is not None:
            set_caps(old)


if __name__ == "__main__":
    sys.exit(main())
