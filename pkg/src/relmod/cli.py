"""Command-line front door: load algebras, run identity checks, search for
term systems, and emit witness chains, as deterministic text or JSON reports.

Exit codes: 0 all requested checks passed/found; 1 completed with a negative
outcome (verdict fails, terms not found, witness precondition violated);
2 parse/usage error; 3 cap exceeded; 4 counterexample found while
--assert-holds was requested.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time

from .algebras import AlgebraError, CapExceeded, DEFAULT_CAP, format_term, load_algebra
from . import corpus
from .identities import (
    INF,
    ParseError,
    catalog,
    catalog_entry,
    check_identity,
    parse_identity,
    print_statement,
    with_sorts,
)
from .maltsev import (
    PreconditionError,
    SearchStatus,
    find_day,
    find_directed_gumm,
    witness_day,
    witness_turt,
    witness_turtt,
)
from .relations import RelKind, enumerate_relations, format_rel_literal, parse_rel_literal

_KINDS = {"refl": RelKind.REFL_ADM, "tol": RelKind.TOLERANCE, "con": RelKind.CONGRUENCE}
_SORTS = {"REFL": RelKind.REFL_ADM, "TOL": RelKind.TOLERANCE, "CON": RelKind.CONGRUENCE}


class UsageError(ValueError):
    pass


def _load_algebra_arg(source):
    if source in corpus.builtin_names():
        return corpus.builtin(source)
    try:
        with open(source, "r", encoding="utf-8") as fh:
            return load_algebra(fh.read())
    except FileNotFoundError:
        raise UsageError(
            f"algebra {source!r} is neither a built-in name {corpus.builtin_names()} nor a file"
        ) from None


def _parse_params(pairs):
    params = {"k": 2, "h": 1, "m": 2, "l": 2}
    for pair in pairs or ():
        if "=" not in pair:
            raise UsageError(f"bad --param {pair!r}, expected NAME=VALUE")
        name, value = pair.split("=", 1)
        if name not in params:
            raise UsageError(f"unknown parameter {name!r}, expected one of k,h,m,l")
        params[name] = INF if value == "inf" else int(value)
    return params


def _parse_sorts(pairs):
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise UsageError(f"bad --sort {pair!r}, expected NAME=REFL|TOL|CON")
        name, value = pair.split("=", 1)
        if value not in _SORTS:
            raise UsageError(f"bad sort {value!r}, expected REFL, TOL or CON")
        out[name] = _SORTS[value]
    return out


def _normalize_label(label):
    return label if label.startswith("(") else f"({label})"


def _format_assignment(assignment):
    return {name: format_rel_literal(r) for name, r in assignment}


def _render_text(report):
    lines = [f"command: {report['command']}"]
    alg = report.get("algebra")
    if alg:
        lines.append(f"algebra: {alg['name']} (n={alg['size']})")
    for item in report["results"]:
        kind = item["_kind"]
        if kind == "check":
            status = "HOLDS" if item["holds"] else "FAILS"
            lines.append(f"[check] {item['label']}: {status} checked={item['checked']}")
            if item.get("counterexample"):
                ce = item["counterexample"]
                for name, lit in ce["assignment"].items():
                    lines.append(f"  {name} = {lit}")
                lines.append(f"  witness: {ce['witness'][0]}-{ce['witness'][1]}")
        elif kind == "enumerate":
            lines.append(f"[enumerate] {item['kind']}: {item['count']} members")
            for lit in item["members"]:
                lines.append(f"  {lit}")
        elif kind == "find-terms":
            if item["status"] == "found":
                lines.append(f"[find-terms] {item['family']}: FOUND k={item['k']}")
                for name, text in item["terms"].items():
                    lines.append(f"  {name} = {text}")
            else:
                extra = " (definitive)" if item.get("definitive") else ""
                lines.append(
                    f"[find-terms] {item['family']}: {item['status'].upper()}"
                    f" max_k={item['max_k']} nodes={item['node_count']}{extra}"
                )
        elif kind == "witness":
            lines.append(
                f"[witness] {item['theorem']}: k={item['k']} steps={len(item['steps'])}"
                + (f" lam_blocks={item['lam_blocks']}" if item["lam_blocks"] is not None else "")
            )
            cur = item["start"]
            for step in item["steps"]:
                lines.append(f"  {cur} --[{step['label']}]--> {step['target']}")
                cur = step["target"]
            lines.append(f"  valid: {str(item['valid']).lower()}")
        elif kind == "catalog":
            lines.append(f"[catalog] {item['label']}: {item['statement']}")
    if "time_ms" in report:
        lines.append(f"time-ms: {report['time_ms']}")
    lines.append(f"exit-code: {report['exit_code']}")
    return "\n".join(lines) + "\n"


def _render(report, fmt):
    if fmt == "structured":
        report = dict(report)
        report["results"] = [
            {k: v for k, v in item.items() if k != "_kind"} for item in report["results"]
        ]
        return json.dumps(report, indent=2) + "\n"
    return _render_text(report)


def _cmd_check(args, alg):
    params = _parse_params(args.param)
    overrides = _parse_sorts(args.sort)
    if args.identity_text:
        stmt = parse_identity(args.identity_text)
        label = "(inline)"
    elif args.identity:
        label = _normalize_label(args.identity)
        stmt = catalog_entry(label, **params)
    else:
        raise UsageError("check requires --identity or --identity-text")
    if overrides:
        stmt = with_sorts(stmt, overrides)
    verdict = check_identity(
        alg,
        stmt,
        mode=args.mode,
        seed=args.seed,
        samples=args.samples,
        jobs=args.jobs,
        cap=args.cap,
    )
    item = {
        "_kind": "check",
        "label": label,
        "statement": print_statement(stmt),
        "holds": verdict.holds,
        "checked": verdict.checked,
        "counterexample": None,
    }
    if verdict.counterexample is not None:
        item["counterexample"] = {
            "assignment": _format_assignment(verdict.counterexample.assignment),
            "witness": list(verdict.counterexample.witness),
        }
    code = 0 if verdict.holds else (4 if args.assert_holds else 1)
    return [item], code


def _cmd_enumerate(args, alg):
    lattice = enumerate_relations(alg, _KINDS[args.kind], cap=args.cap)
    item = {
        "_kind": "enumerate",
        "kind": args.kind,
        "count": len(lattice.members),
        "members": [format_rel_literal(r) for r in lattice.members],
    }
    return [item], 0


def _cmd_find_terms(args, alg):
    if args.family == "dgumm":
        res = find_directed_gumm(alg, max_k=args.max_k, cap=args.cap)

        def term_names(system):
            out = {"p": format_term(system.p)}
            out.update((f"j{i}", format_term(t)) for i, t in enumerate(system.j, start=1))
            return out

    else:
        res = find_day(alg, max_k=args.max_k, cap=args.cap)

        def term_names(system):
            return {f"d{i}": format_term(t) for i, t in enumerate(system.d)}
    item = {
        "_kind": "find-terms",
        "family": args.family,
        "status": res.status.value,
        "max_k": res.max_k,
        "node_count": res.node_count,
        "definitive": res.definitive,
        "k": res.system.k if res.found else None,
        "terms": term_names(res.system) if res.found else None,
    }
    if res.status is SearchStatus.CAP_EXCEEDED:
        return [item], 3
    return [item], 0 if res.found else 1


def _witness_relations(args, n, needed):
    rels = {}
    for pair in args.rel or ():
        if "=" not in pair:
            raise UsageError(f"bad --rel {pair!r}, expected NAME=LITERAL")
        name, lit = pair.split("=", 1)
        rels[name] = parse_rel_literal(lit, n)
    missing = [name for name in needed if name not in rels]
    if missing:
        raise UsageError(f"witness needs --rel for {missing}")
    return rels


def _cmd_witness(args, alg):
    n = alg.size
    if args.theorem in ("turt", "turtt"):
        if args.chain is None or args.a is None or args.b is None:
            raise UsageError("turt/turtt witnesses need --a, --b and --chain")
        chain = [int(x) for x in args.chain.split(",")]
        s_names = []
        i = 1
        given = {p.split("=", 1)[0] for p in (args.rel or ()) if "=" in p}
        while f"S{i}" in given:
            s_names.append(f"S{i}")
            i += 1
        if not s_names:
            raise UsageError("turt/turtt witnesses need --rel S1=... (S2=..., ...)")
        rels = _witness_relations(args, n, ["R", "V", "W"] + s_names)
        res = find_directed_gumm(alg, max_k=args.max_k, cap=args.cap)
        if not res.found:
            raise PreconditionError("no directed Gumm system found for this algebra")
        build = witness_turt if args.theorem == "turt" else witness_turtt
        chain_obj = build(
            alg,
            res.system,
            rels["R"],
            rels["V"],
            rels["W"],
            [rels[name] for name in s_names],
            args.a,
            args.b,
            chain,
        )
        k = res.system.k
    else:
        if args.a is None or args.b is None or args.c is None:
            raise UsageError("day witnesses need --a, --b and --c")
        rels = _witness_relations(args, n, ["Theta", "S"])
        res = find_day(alg, max_k=args.max_k, cap=args.cap)
        if not res.found:
            raise PreconditionError("no Day system found for this algebra")
        chain_obj = witness_day(alg, res.system, rels["Theta"], rels["S"], args.a, args.b, args.c)
        k = res.system.k
    item = {
        "_kind": "witness",
        "theorem": args.theorem,
        "k": k,
        "start": chain_obj.start,
        "end": chain_obj.end,
        "lam_blocks": chain_obj.lam_blocks,
        "steps": [
            {"source": s.source, "target": s.target, "label": s.label} for s in chain_obj.steps
        ],
        "valid": chain_obj.validate(),
    }
    return [item], 0 if item["valid"] else 1


def _cmd_catalog(args):
    params = _parse_params(args.param)
    items = [
        {"_kind": "catalog", "label": label, "statement": print_statement(stmt)}
        for label, stmt in catalog(**params)
    ]
    return items, 0


def build_parser():
    parser = argparse.ArgumentParser(prog="relmod", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", required=True, help="built-in name or JSON file path")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--timings", action="store_true", help="include timing fields")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("check", help="check an identity on an algebra")
    common(p)
    p.add_argument("--identity", help="catalog label, e.g. (1.1)")
    p.add_argument("--identity-text", help="inline statement text")
    p.add_argument("--param", action="append", help="catalog parameter, e.g. k=3 or m=inf")
    p.add_argument("--sort", action="append", help="override a quantifier sort, e.g. Theta=CON")
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--assert-holds", action="store_true")

    p = sub.add_parser("enumerate", help="enumerate a relation lattice")
    common(p)
    p.add_argument("--kind", choices=tuple(_KINDS), required=True)

    p = sub.add_parser("find-terms", help="search for directed Gumm or Day terms")
    common(p)
    p.add_argument("--family", choices=("dgumm", "day"), required=True)
    p.add_argument("--max-k", type=int, default=16)

    p = sub.add_parser("witness", help="emit a witness chain for one instance")
    common(p)
    p.add_argument("--theorem", choices=("turt", "turtt", "day"), required=True)
    p.add_argument("--rel", action="append", help="relation literal, e.g. R=delta+0-1")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--chain", help="comma-separated elements a_0..a_l")
    p.add_argument("--max-k", type=int, default=16)

    p = sub.add_parser("catalog", help="print every catalog identity")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--param", action="append")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    command = "relmod " + " ".join(shlex.quote(a) for a in argv)
    started = time.perf_counter()
    report = {"command": command}
    try:
        if args.cmd == "catalog":
            results, code = _cmd_catalog(args)
        else:
            alg = _load_algebra_arg(args.algebra)
            report["algebra"] = {"name": alg.name, "size": alg.size}
            if args.cmd == "check":
                results, code = _cmd_check(args, alg)
            elif args.cmd == "enumerate":
                results, code = _cmd_enumerate(args, alg)
            elif args.cmd == "find-terms":
                results, code = _cmd_find_terms(args, alg)
            else:
                results, code = _cmd_witness(args, alg)
    except (AlgebraError, ParseError, UsageError, KeyError, ValueError) as e:
        if isinstance(e, PreconditionError):
            print(f"error: {e}", file=sys.stderr)
            return 1
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    report["results"] = results
    if args.timings:
        report["time_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    report["exit_code"] = code
    sys.stdout.write(_render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
