"""Workspace files: line-oriented declarations with JSON payloads.

Grammar (one declaration per line; ``#`` starts a comment)::

    version 1
    field     NAME  F_q
    group     NAME  {"name": "S3"} | {"table": [[...]], "identity": 0}
    object    NAME  finab    {"invariants": [2, 4]}
    object    NAME  quiver   {"field": "k", "dims": [1, 1], "edge": [[1]]}
    object    NAME  simple   {"field": "k", "vertex": 1}
    object    NAME  projective {"field": "k"}
    object    NAME  gamma    {"group": "G", "invariants": [2], "action": {"1": [[1]]}}
    morphism  NAME  SRC TGT  {"matrix": [[...]]}
    predicate NAME  s_torsion:{2,3} | etale_like:2 | span:{S2}
    task      ID    compute hom X Y
    task      ID    compute ext X Y degree=2
    task      ID    verify ext2-k field=F_4 N=16

Task arguments are positional names followed by ``key=value`` pairs or a
trailing JSON object.  Values are read as JSON when possible.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .errors import ParseError, SerrecatError, ValidationError
from .fields import parse_field
from .groups import FiniteGroup, group_from_name
from .modules import (Module, hom_group, make_finab, make_gamma_module, make_quiver_rep, morphism,
                      projective_rep_p1, simple_rep)
from .resolution import ext_group

VERSION = 1

COMMANDS = {
    "compute": ("hom", "ext", "tpair", "qhom", "lochom", "locext"),
    "verify": ("a2", "thm-hd", "lem-cd", "ext2-k", "lifting", "hdmax"),
}


@dataclass(frozen=True)
class Decl:
    keyword: str
    name: str
    args: tuple
    payload: Any
    line: int


@dataclass
class WorkspaceFile:
    version: int = VERSION
    decls: list = field(default_factory=list)
    fields: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)

    def names(self) -> set:
        return set(self.fields) | set(self.groups) | set(self.objects) | set(self.morphisms) | set(self.predicates)


@dataclass(frozen=True)
class Task:
    id: str
    command: str
    sub: str
    refs: tuple
    params: dict
    line: int = 0


@dataclass
class Report:
    task: str
    command: str
    inputs: dict
    status: str
    result: dict
    provenance: dict
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "ok"

    def to_json(self, timing: bool = False) -> dict:
        out = {"task": self.task, "command": self.command, "inputs": self.inputs, "status": self.status,
               "result": self.result, "provenance": self.provenance}
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(data["task"], data["command"], data["inputs"], data["status"], data["result"],
                   data["provenance"], data.get("wall_time", 0.0))


# -- parsing ----------------------------------------------------------------------

def _split(text: str, line: int) -> tuple[list[tuple[str, int]], Any]:
    """Whitespace tokens (with 1-based columns) and an optional trailing JSON object."""
    payload = None
    brace = text.find("{")
    head = text
    # braces inside predicate literals like s_torsion:{2} are not payloads
    while brace != -1 and brace > 0 and not text[brace - 1].isspace():
        brace = text.find("{", brace + 1)
    if brace != -1:
        head = text[:brace]
        try:
            payload = json.loads(text[brace:])
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON payload: {exc.msg}", line, brace + exc.pos + 1) from None
        if not isinstance(payload, dict):
            raise ParseError("payload must be a JSON object", line, brace + 1)
    tokens, col = [], 0
    for tok in head.split():
        col = head.index(tok, col)
        tokens.append((tok, col + 1))
        col += len(tok)
    return tokens, payload


def _value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_workspace(text: str) -> WorkspaceFile:
    """Parse and validate; names must be declared before use and only once."""
    ws = WorkspaceFile()
    seen_version = False
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip() if not raw.lstrip().startswith("#") else ""
        if not body.strip():
            continue
        tokens, payload = _split(body, ln)
        if not tokens:
            raise ParseError("declaration keyword expected", ln, 1)
        kw, kcol = tokens[0]
        if kw == "version":
            if seen_version or ws.decls:
                raise ParseError("version must be the first declaration", ln, kcol)
            if len(tokens) != 2 or tokens[1][0] != str(VERSION):
                raise ParseError(f"unsupported version (expected {VERSION})", ln, kcol)
            seen_version = True
            continue
        if len(tokens) < 2:
            raise ParseError(f"{kw}: name expected", ln, kcol + len(kw))
        name, ncol = tokens[1]
        args = tuple(t for t, _ in tokens[2:])
        decl = Decl(kw, name, args, payload, ln)
        if kw == "task":
            if any(t.id == name for t in ws.tasks):
                raise ValidationError(f"duplicate task id {name!r} (line {ln})")
            ws.tasks.append(_task(ws, decl, tokens))
        elif kw in ("field", "group", "object", "morphism", "predicate"):
            if name in ws.names():
                raise ValidationError(f"duplicate name {name!r} (line {ln})")
            try:
                _declare(ws, decl)
            except SerrecatError:
                raise
            except (KeyError, ValueError, TypeError) as exc:
                raise ValidationError(f"line {ln}: {exc}") from None
        else:
            raise ParseError(f"unknown keyword {kw!r}", ln, kcol)
        ws.decls.append(decl)
    return ws


def _need(ws: WorkspaceFile, table: dict, name: str, kind: str, line: int):
    if name not in table:
        raise ValidationError(f"line {line}: undeclared {kind} {name!r}")
    return table[name]


def _field_ref(ws: WorkspaceFile, name: str, line: int):
    return ws.fields[name] if name in ws.fields else parse_field(name)


def _declare(ws: WorkspaceFile, d: Decl) -> None:
    p = d.payload or {}
    if d.keyword == "field":
        if len(d.args) != 1:
            raise ValidationError(f"line {d.line}: field needs one size literal such as F_4")
        ws.fields[d.name] = parse_field(d.args[0])
    elif d.keyword == "group":
        if "name" in p:
            G = group_from_name(p["name"])
        elif "table" in p:
            try:
                G = FiniteGroup(tuple(tuple(r) for r in p["table"]), p.get("identity", 0), d.name)
            except SerrecatError as exc:
                raise ValidationError(f"line {d.line}: bad group table: {exc}") from None
        else:
            raise ValidationError(f"line {d.line}: group needs a name or a table")
        ws.groups[d.name] = G
    elif d.keyword == "object":
        if len(d.args) != 1:
            raise ValidationError(f"line {d.line}: object needs a kind")
        ws.objects[d.name] = _build_object(ws, d.args[0], p, d.name, d.line)
    elif d.keyword == "morphism":
        if len(d.args) != 2:
            raise ValidationError(f"line {d.line}: morphism needs source and target")
        X = _need(ws, ws.objects, d.args[0], "object", d.line)
        Y = _need(ws, ws.objects, d.args[1], "object", d.line)
        ws.morphisms[d.name] = morphism(X, Y, p["matrix"])
    elif d.keyword == "predicate":
        if len(d.args) != 1:
            raise ValidationError(f"line {d.line}: predicate needs one literal")
        ws.predicates[d.name] = _predicate(ws, d.args[0], d.line)


def _build_object(ws: WorkspaceFile, kind: str, p: dict, name: str, line: int) -> Module:
    if kind == "finab":
        return make_finab(p.get("invariants", []), name)
    if kind in ("quiver", "simple", "projective"):
        F = _field_ref(ws, p.get("field", "F_2"), line)
        if kind == "simple":
            X = simple_rep(int(p["vertex"]), F)
        elif kind == "projective":
            X = projective_rep_p1(F)
        else:
            d1, d2 = p["dims"]
            X = make_quiver_rep(d1, d2, p.get("edge", []), F, name)
        return Module(X.ring, X.invariants, X.action, name)
    if kind == "gamma":
        G = _need(ws, ws.groups, p["group"], "group", line)
        action = p.get("action", {})
        if isinstance(action, dict):
            action = {int(k): v for k, v in action.items()}
        return make_gamma_module(G, p["invariants"], action, name)
    raise ValidationError(f"line {line}: unknown object kind {kind!r}")


def _predicate(ws: WorkspaceFile, text: str, line: int):
    from .serre import parse_predicate
    head, _, arg = text.partition(":")
    if head == "span":
        for item in arg.strip("{}").split(","):
            if item.strip():
                _need(ws, ws.objects, item.strip(), "object", line)
    return parse_predicate(text, ws.objects)


def _task(ws: WorkspaceFile, d: Decl, tokens) -> Task:
    if len(tokens) < 4:
        raise ParseError("task needs a command and a subcommand", d.line, tokens[-1][1])
    (cmd, ccol), (sub, scol) = tokens[2], tokens[3]
    if cmd not in COMMANDS:
        raise ParseError(f"unknown command {cmd!r}", d.line, ccol)
    if sub not in COMMANDS[cmd]:
        raise ParseError(f"unknown {cmd} subcommand {sub!r}", d.line, scol)
    refs, params = [], {}
    for tok, col in tokens[4:]:
        if "=" in tok:
            k, _, v = tok.partition("=")
            params[k] = _value(v)
        else:
            if params:
                raise ParseError("positional argument after key=value", d.line, col)
            if tok not in ws.names():
                raise ValidationError(f"line {d.line}: undeclared name {tok!r}")
            refs.append(tok)
    params.update(d.payload or {})
    return Task(d.name, cmd, sub, tuple(refs), params, d.line)


# -- canonical form ------------------------------------------------------------------

def format_workspace(ws: WorkspaceFile) -> str:
    """Canonical text: aligned keywords, sorted JSON keys, tasks last."""
    lines = [f"version {ws.version}"]
    for d in ws.decls:
        if d.keyword == "task":
            continue
        parts = [f"{d.keyword:<9}", d.name, *d.args]
        if d.payload is not None:
            parts.append(json.dumps(d.payload, sort_keys=True, separators=(", ", ": ")))
        lines.append(" ".join(parts))
    for t in ws.tasks:
        parts = [f"{'task':<9}", t.id, t.command, t.sub, *t.refs]
        parts += [f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in sorted(t.params.items())]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# -- running -------------------------------------------------------------------------

def run_tasks(ws: WorkspaceFile, seed: int = 0, defaults: dict | None = None) -> list[Report]:
    """One report per task, in declaration order; errors stay inside their report."""
    out = []
    for t in ws.tasks:
        params = dict(defaults or {})
        params.update(t.params)
        s = int(params.pop("seed", seed))
        inputs = {"refs": list(t.refs), "params": params}
        t0 = time.perf_counter()
        try:
            result, ok = _dispatch(ws, t, params, s)
            status = "ok" if ok else "fail"
        except (SerrecatError, ValueError, KeyError, TypeError, NotImplementedError) as exc:
            result, status = {"error": type(exc).__name__, "message": str(exc)}, "error"
        prov = {"seed": s}
        for key in ("bound", "truncation", "N"):
            if key in params:
                prov[key] = params[key]
        out.append(Report(t.id, f"{t.command} {t.sub}", inputs, status, result, prov,
                          time.perf_counter() - t0))
    return out


def _obj(ws: WorkspaceFile, t: Task, k: int) -> Module:
    if k >= len(t.refs) or t.refs[k] not in ws.objects:
        raise ValueError(f"task {t.id}: object argument {k + 1} missing")
    return ws.objects[t.refs[k]]


def _pred(ws: WorkspaceFile, t: Task, k: int, params: dict):
    from .serre import parse_predicate
    if k < len(t.refs) and t.refs[k] in ws.predicates:
        return ws.predicates[t.refs[k]]
    if "predicate" in params:
        return parse_predicate(str(params["predicate"]), ws.objects)
    raise ValueError(f"task {t.id}: Serre predicate missing")


def _primes(params: dict) -> list[int]:
    S = params.get("S", [])
    if isinstance(S, int):
        return [S]
    if isinstance(S, str):
        return [int(x) for x in S.strip("{}").split(",") if x.strip()]
    return [int(x) for x in S]


def _dispatch(ws: WorkspaceFile, t: Task, params: dict, seed: int) -> tuple[dict, bool]:
    from . import serre
    if t.command == "compute":
        if t.sub == "hom":
            H = hom_group(_obj(ws, t, 0), _obj(ws, t, 1))
            return {"invariants": list(H.invariants), "order": H.order}, True
        if t.sub == "ext":
            E = ext_group(int(params.get("degree", 1)), _obj(ws, t, 0), _obj(ws, t, 1))
            return E.to_json(), True
        if t.sub == "tpair":
            X = _obj(ws, t, 0)
            T = serre.torsion_pair(X, _pred(ws, t, 1, params), seed)
            return {"sub": T.sub.to_json(), "quotient": T.quotient.to_json(),
                    "sub_order": T.sub.order, "quotient_order": T.quotient.order, "exact": T.is_exact()}, True
        if t.sub == "qhom":
            Q = serre.q_hom(_obj(ws, t, 0), _obj(ws, t, 1), _pred(ws, t, 2, params))
            return {"invariants": list(Q.invariants), "order": Q.order}, True
        if t.sub == "lochom":
            L = serre.localized_hom(_obj(ws, t, 0), _obj(ws, t, 1), _primes(params))
            return _loc_json(L), True
        if t.sub == "locext":
            L = serre.localized_ext(int(params.get("degree", 1)), _obj(ws, t, 0), _obj(ws, t, 1), _primes(params))
            return _loc_json(L), True
    return _verify(ws, t, params, seed)


def _loc_json(L) -> dict:
    return {"degree": L.degree, "S": sorted(L.primes), "invariants": list(L.invariants), "order": L.order}


def _verify(ws: WorkspaceFile, t: Task, params: dict, seed: int) -> tuple[dict, bool]:
    from . import dieudonne, gammacoh, hdlab, serre
    bound = int(params.get("bound", 3))
    if t.sub == "a2":
        F = params.get("field", "F_2")
        R = hdlab.verify_quiver_example(_field_ref(ws, F, t.line), seed)
        return R.to_json(), R.passed
    if t.sub == "thm-hd":
        category = params.get("category", f"finab:{int(params.get('max_order', 48))}")
        C = hdlab.verify_thm_hd(category, _primes(params) or [2], None, bound, seed)
        return C.to_json(), C.holds
    if t.sub == "hdmax":
        category = params.get("category", "finab:24")
        C = hdlab.verify_hdmax_inequality(category, _pred(ws, t, 0, params), None, bound, seed)
        return C.to_json(), C.holds
    if t.sub == "lem-cd":
        G = group_from_name(str(params.get("group", "C2")))
        ell = int(params.get("ell", 2))
        bound = int(params.get("bound", 4))
        P = gammacoh.hd_gamma_mod_probe(G, ell, bound)
        cd = gammacoh.cd_ell_probe(G, ell, bound)
        coprime = G.order % ell != 0
        if coprime:
            ok = P.max_degree == 1 and cd.value == 0
        else:
            ok = set(range(1, bound + 1)) <= set(P.nonzero_degrees)
        ok = ok and not P.bound_violations
        return {"probe": P.to_json(), "cd": cd.to_json(), "coprime": coprime,
                "hd_minus_cd": (P.max_degree - cd.value) if cd.value is not None else None}, ok
    if t.sub == "ext2-k":
        F = _field_ref(ws, params.get("field", "F_2"), t.line)
        N = int(params.get("N", params.get("truncation", 16)))
        A = dieudonne.coker_F_minus_id(F, N)
        B = dieudonne.coker_F(F, N)
        phi_ok = _phi_vanishes(F, N)
        ok = A.dim_k == 1 and B.dim_k == 1 and A.stabilized and B.stabilized and phi_ok
        return {"coker_F_minus_id": A.to_json(), "coker_F": B.to_json(), "phi_vanishes_on_image": phi_ok}, ok
    if t.sub == "lifting":
        B = _pred(ws, t, 0, params)
        objs = [ws.objects[r] for r in t.refs if r in ws.objects]
        if not objs:
            objs = hdlab.finab_objects(int(params.get("max_order", 24)))
        rows, ok = [], True
        for X in objs:
            epis = serre.epimorphisms_onto_b(X, B, int(params.get("samples", 8)), seed)
            good = 0
            for f in epis:
                try:
                    serre.check_lifting_property(f, B)
                    good += 1
                except serre.NoWitness:
                    ok = False
            rows.append([X.label, len(epis), good])
        return {"predicate": B.name, "objects": rows}, ok
    raise ValueError(f"unknown task {t.command} {t.sub}")


def _phi_vanishes(F, N: int) -> bool:
    from .dieudonne import TwistedPoly, f_minus_id, section_phi
    basis = [TwistedPoly(F, (0,) * i + (F.p ** w,)) for i in range(N) for w in range(F.d)]
    return all(section_phi(f_minus_id(b)) == 0 for b in basis)


def reports_json(reports: list[Report], timing: bool = False) -> str:
    return json.dumps([r.to_json(timing) for r in reports], sort_keys=True, indent=2) + "\n"
