"""Command-line driver.

    serrecat run FILE [--seed N] [--json] [--timing]
    serrecat fmt FILE
    serrecat compute hom|ext|tpair|qhom|lochom|locext ARGS... [--workspace FILE]
    serrecat verify a2|thm-hd|lem-cd|ext2-k|lifting|hdmax [key=value ...]

Objects in ``compute`` are names from ``--workspace`` or inline literals:
``finab:2,4``, ``S1@F_2``, ``S2@F_3``, ``P1@F_4``.  Predicates are literals
such as ``s_torsion:{2}`` or ``span:{S2@F_2}``.

Exit status: 0 when every task passes, 1 when a verdict fails or a task
errors, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, SerrecatError, ValidationError
from .workspace import COMMANDS, format_workspace, parse_workspace, reports_json, run_tasks


def _literal_decl(token: str) -> tuple[str, str]:
    """Turn an inline object literal into a declaration line; returns (name, line)."""
    if token.startswith("finab:"):
        invs = [int(x) for x in token[6:].split(",") if x]
        name = "Z_" + "_".join(map(str, invs)) if invs else "Z_0"
        return name, f'object {name} finab {{"invariants": {json.dumps(invs)}}}'
    if "@" in token:
        kind, F = token.split("@", 1)
        name = f"{kind}_{F.replace('F_', 'F')}"
        if kind in ("S1", "S2"):
            return name, f'object {name} simple {{"field": "{F}", "vertex": {kind[1]}}}'
        if kind == "P1":
            return name, f'object {name} projective {{"field": "{F}"}}'
    raise ValueError(f"cannot read object literal {token!r}")


def _adhoc_workspace(command: str, sub: str, args: list[str], base: str = "") -> str:
    """Workspace text holding one task built from command-line arguments."""
    lines = [base] if base else []
    declared = parse_workspace(base).names() if base else set()
    refs, params = [], []
    for a in args:
        if "=" in a and not a.startswith("span:"):
            key, _, val = a.partition("=")
            if key == "predicate" and val.startswith("span:"):
                val = _span_literal(val, lines, declared)
            params.append(f"{key}={val}")
        elif a in declared:
            refs.append(a)
        elif a.startswith(("s_torsion", "etale_like", "span:")):
            name = f"B{len(refs)}"
            lit = _span_literal(a, lines, declared) if a.startswith("span:") else a
            lines.append(f"predicate {name} {lit}")
            declared.add(name)
            refs.append(name)
        else:
            name, decl = _literal_decl(a)
            if name not in declared:
                lines.append(decl)
                declared.add(name)
            refs.append(name)
    lines.append(" ".join(["task", "t1", command, sub, *refs, *params]))
    return "\n".join(lines) + "\n"


def _span_literal(text: str, lines: list, declared: set) -> str:
    items = [s.strip() for s in text[5:].strip("{}").split(",") if s.strip()]
    names = []
    for it in items:
        if it in declared:
            names.append(it)
            continue
        name, decl = _literal_decl(it)
        if name not in declared:
            lines.append(decl)
            declared.add(name)
        names.append(name)
    return "span:{" + ",".join(names) + "}"


def _human(reports) -> str:
    out = []
    for r in reports:
        out.append(f"[{r.status.upper():5}] {r.task}: {r.command}  seed={r.provenance.get('seed')}")
        res = r.result
        for key in ("invariants", "order", "facts", "holds", "strict", "error", "message"):
            if key in res:
                out.append(f"    {key}: {res[key]}")
        if r.command == "verify ext2-k":
            out.append(f"    dim_k coker(F - id) = {res['coker_F_minus_id']['dim_k']}, "
                       f"dim_k coker(F) = {res['coker_F']['dim_k']}")
        if r.command == "verify lem-cd":
            p = res["probe"]
            out.append(f"    nonzero Ext degrees {p['nonzero_degrees']} (max {p['max_degree']})")
        if r.command in ("verify thm-hd", "verify hdmax"):
            out.append(f"    hd={res['hd']}  hd_sub={res['hd_sub']}  hd_quotient={res['hd_quotient']}")
    return "\n".join(out) + "\n"


def _emit(reports, as_json: bool, timing: bool) -> int:
    sys.stdout.write(reports_json(reports, timing) if as_json else _human(reports))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="serrecat", description="Exact Serre-quotient and Ext computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=None, help="Ext degree bound")
    common.add_argument("--truncation", type=int, default=None, help="k[F] truncation degree")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="include wall time in JSON reports")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", parents=[common], help="run every task of a workspace file")
    r.add_argument("file")
    f = sub.add_parser("fmt", help="print a workspace file in canonical form")
    f.add_argument("file")
    for cmd, subs in COMMANDS.items():
        p = sub.add_parser(cmd, parents=[common], help=f"{cmd} one of: {', '.join(subs)}")
        p.add_argument("what", choices=subs)
        p.add_argument("args", nargs="*", help="objects, predicates and key=value parameters")
        p.add_argument("--workspace", default=None, help="file declaring named objects")
    return ap


def _defaults(ns) -> dict:
    out = {}
    if ns.bound is not None:
        out["bound"] = ns.bound
    if ns.truncation is not None:
        out["N"] = ns.truncation
    return out


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if ns.cmd == "fmt":
            with open(ns.file, encoding="utf-8") as fh:
                sys.stdout.write(format_workspace(parse_workspace(fh.read())))
            return 0
        if ns.cmd == "run":
            with open(ns.file, encoding="utf-8") as fh:
                ws = parse_workspace(fh.read())
        else:
            base = ""
            if ns.workspace:
                with open(ns.workspace, encoding="utf-8") as fh:
                    base = "\n".join(l for l in fh.read().splitlines() if not l.lstrip().startswith("task"))
            ws = parse_workspace(_adhoc_workspace(ns.cmd, ns.what, ns.args, base))
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except (ValidationError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SerrecatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return _emit(run_tasks(ws, ns.seed, _defaults(ns)), ns.json, ns.timing)


if __name__ == "__main__":
    sys.exit(main())
