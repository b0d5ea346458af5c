"""Report assembly for the command-line front end.

Every command produces a plain JSON-ready dict; the table format is rendered
from that dict alone, so a table never shows a number the JSON lacks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .identities import (
    GJTS_1_1,
    GJTS_1_2,
    WEAK_COMM_1_41,
    check_identity_1_1,
    check_identity_1_2,
    check_weak_commutativity,
)
from .labels import LABEL_ORDER
from .left_unit import (
    CircleAlgebra,
    NotALeftUnit,
    UnexpectedComponent,
    check_against_system,
    check_bilinear_equations,
    check_circle_properties,
    extract_circle,
    is_left_unit,
    reconstruct_triple,
    synthesize_from_circle,
)
from .models import ModelDescriptor
from .peirce import (
    BASE_RELATIONS,
    DecompositionError,
    NotATripotent,
    check_invariants,
    check_operator_relations,
    classify,
    make_context,
    peirce_decompose,
)
from .scalar import Scalar
from .triple import SCHEMA_VERSION, TripleSystem

__all__ = [
    "RunConfig",
    "CHECK_NAMES",
    "verify_report",
    "decompose_report",
    "left_unit_report",
    "synthesize_report",
    "example_report",
    "dumps",
    "render_table",
]

CHECK_NAMES = {"1.1": GJTS_1_1, "1.2": GJTS_1_2, "weak-comm": WEAK_COMM_1_41}


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str  # "model:<name>(<params>)" or the input path
    tripotent_source: str = "canonical"
    mode: str | None = None
    seed: int = 0
    samples: int = 10_000
    checks: tuple = ()
    output: str = "table"
    out_path: str | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "source": self.source,
            "tripotent": self.tripotent_source,
            "mode": self.mode or "auto",
            "seed": self.seed,
            "samples": self.samples,
            "checks": list(self.checks),
        }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _header(cfg: RunConfig, s: TripleSystem | None) -> dict:
    out = {"schema": SCHEMA_VERSION, "config": cfg.to_json()}
    if s is not None:
        out["system"] = {"label": s.label, "dim": s.dim, "nnz": s.nnz()}
    return out


def _vec(v) -> list:
    return [x.to_json() for x in v]


def _identity(s: TripleSystem, name: str, cfg: RunConfig):
    fn = {GJTS_1_1: check_identity_1_1, GJTS_1_2: check_identity_1_2, WEAK_COMM_1_41: check_weak_commutativity}[name]
    return fn(s, mode=cfg.mode, seed=cfg.seed, count=cfg.samples)


# -- verify -------------------------------------------------------------------


def verify_report(s: TripleSystem, cfg: RunConfig) -> dict:
    """Identity checks. Without an explicit selection the two defining
    identities are required and weak commutativity is reported as a property."""
    requested = [CHECK_NAMES[c] for c in cfg.checks] if cfg.checks else [GJTS_1_1, GJTS_1_2]
    names = list(requested)
    if WEAK_COMM_1_41 not in names:
        names.append(WEAK_COMM_1_41)
    checks = []
    for name in names:
        r = _identity(s, name, cfg).to_json()
        r["required"] = name in requested
        checks.append(r)
    out = _header(cfg, s)
    out["command"] = "verify"
    out["checks"] = checks
    out["passed"] = all(c["passed"] for c in checks if c["required"])
    return out


# -- decompose ----------------------------------------------------------------------


def _tripotent_failure(out: dict, exc: NotATripotent) -> dict:
    out["passed"] = False
    out["error"] = {"kind": "not-a-tripotent", "message": str(exc), "residual": _vec(exc.residual)}
    return out


def decompose_report(s: TripleSystem, e, cfg: RunConfig, descriptor: ModelDescriptor | None = None) -> dict:
    out = _header(cfg, s)
    out["command"] = "decompose"
    out["tripotent"] = _vec(e)
    try:
        ctx = make_context(s, e)
    except NotATripotent as exc:
        return _tripotent_failure(out, exc)
    rel = check_operator_relations(ctx)
    out["relations"] = {name: r.holds for name, r in rel.items()}
    out["relation_residual_nonzeros"] = {name: r.residual_nonzeros for name, r in rel.items()}
    try:
        d = peirce_decompose(ctx)
    except DecompositionError as exc:
        out["passed"] = False
        out["error"] = {"kind": "decomposition-failure", "message": str(exc)}
        return out
    out["components"] = [
        {**lab.to_json(), "name": lab.name, "dim": d.components[lab].dim, "basis": [_vec(v) for v in d.components[lab].basis]}
        for lab in LABEL_ORDER
    ]
    out["tau"] = d.tau_matrix.to_json()
    inv = check_invariants(d)
    out["invariants"] = inv

    weak = _identity(s, WEAK_COMM_1_41, cfg)
    cls = classify(d, weak.passed)
    out["classification"] = {
        "nonzero": [lab.name for lab, _ in cls.nonzero],
        "weak_commutativity": weak.to_json(),
        "violations": [lab.name for lab in cls.violations],
    }
    ok = all(rel[n].holds for n in BASE_RELATIONS) and all(inv.values()) and cls.ok
    if descriptor is not None:
        expected = {lab.name: n for lab, n in descriptor.expected_dims().items()}
        got = {lab.name: d.components[lab].dim for lab in LABEL_ORDER}
        out["expected"] = {"model": descriptor.name, "dims": expected, "matches": expected == got}
        ok = ok and expected == got
    out["passed"] = ok
    return out


# -- left unit ------------------------------------------------------------------------


def _checks(results: dict) -> list:
    return [r.to_json() for r in results.values()]


def left_unit_report(s: TripleSystem, e, cfg: RunConfig) -> dict:
    out = _header(cfg, s)
    out["command"] = "left-unit"
    out["tripotent"] = _vec(e)
    try:
        ctx = make_context(s, e)
    except NotATripotent as exc:
        return _tripotent_failure(out, exc)
    out["is_left_unit"] = is_left_unit(ctx)
    try:
        d = peirce_decompose(ctx)
        c = extract_circle(ctx, d)
    except (DecompositionError, NotALeftUnit, UnexpectedComponent) as exc:
        out["passed"] = False
        out["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        return out
    weak = _identity(s, WEAK_COMM_1_41, cfg)
    props = check_circle_properties(c)
    eqs = check_bilinear_equations(c, weakly_commutative=True)
    base = {k: v for k, v in eqs.items() if k not in ("3.53", "3.54")}
    weak_eqs = {k: eqs[k] for k in ("3.53", "3.54")}
    consistency = check_against_system(c, ctx)
    roundtrip = reconstruct_triple(c) == s

    out["dims"] = c.space.to_json()
    out["graded_basis"] = c.basis.to_json()
    out["circle"] = c.to_json()["circle"]
    out["properties"] = _checks(props)
    out["equations"] = _checks(base)
    out["weak_equations"] = {"required": weak.passed, "weak_commutativity": weak.to_json(), "checks": _checks(weak_eqs)}
    out["consistency"] = _checks(consistency)
    out["roundtrip"] = roundtrip
    out["passed"] = (
        all(r.holds for r in props.values())
        and all(r.holds for r in base.values())
        and all(r.holds for r in consistency.values())
        and roundtrip
        and (not weak.passed or all(r.holds for r in weak_eqs.values()))
    )
    return out


# -- synthesize ----------------------------------------------------------------------


def synthesize_report(c: CircleAlgebra, cfg: RunConfig) -> dict:
    s, rep = synthesize_from_circle(c.space, c, axiom_mode=cfg.mode, seed=cfg.seed)
    out = _header(cfg, s)
    out["command"] = "synthesize"
    out["dims"] = c.space.to_json()
    out.update(rep.to_json())
    out["implication_holds"] = rep.implication_holds
    out["synthesized_system"] = s.to_json()
    out["passed"] = rep.a_passed and rep.b_passed and rep.c_passed
    return out


# -- example --------------------------------------------------------------------------


def example_report(s: TripleSystem, e, desc: ModelDescriptor, cfg: RunConfig) -> dict:
    out = _header(cfg, s)
    out["command"] = "example"
    out["system_json"] = s.to_json()
    out["tripotent"] = _vec(e)
    out["descriptor"] = {
        "name": desc.name,
        "params": desc.params,
        "weakly_commutative": desc.weakly_commutative,
        "dims": {lab.name: n for lab, n in desc.expected_dims().items()},
    }
    out["passed"] = True
    return out


# -- tables ---------------------------------------------------------------------------


def _scalar_text(x) -> str:
    return str(Scalar.from_json(x))


def _vector_text(v) -> str:
    return "(" + ", ".join(_scalar_text(x) for x in v) + ")"


def _mark(ok) -> str:
    return "pass" if ok else "FAIL"


def _rows(header: list, rows: list) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*(str(x) for x in r)) for r in rows]
    return lines


def _witness_text(w) -> str:
    if w is None:
        return ""
    where = w.get("indices", w.get("sample"))
    res = w["residual"]
    nz = [(i, x) for i, x in enumerate(res) if _scalar_text(x) != "0"]
    shown = ", ".join(f"[{i}]={_scalar_text(x)}" for i, x in nz[:3])
    more = ", ..." if len(nz) > 3 else ""
    return f"at {where}: residual {shown}{more}"


def _identity_rows(checks: list) -> list[str]:
    rows = []
    for c in checks:
        mode = c["mode"] if c["mode"] == "exhaustive" else f"sampled(seed={c['seed']}, count={c['count']})"
        req = "required" if c.get("required", True) else "property"
        rows.append([c["identity"], mode, req, c["checked"], _mark(c["passed"]), _witness_text(c["witness"])])
    return _rows(["identity", "mode", "role", "checked", "result", "witness"], rows)


def _simple_checks(title: str, checks: list) -> list[str]:
    rows = [[c["id"], c["checked"], _mark(c["passed"]), _witness_text(c["witness"])] for c in checks]
    return [title] + _rows(["id", "pairs", "result", "witness"], rows)


def render_table(report: dict) -> str:
    lines = []
    sysinfo = report.get("system")
    head = f"{report['command']}"
    if sysinfo:
        head += f": {sysinfo['label']} (dim {sysinfo['dim']}, nnz {sysinfo['nnz']})"
    lines.append(head)
    if "tripotent" in report and report["command"] != "example":
        lines.append(f"tripotent e = {_vector_text(report['tripotent'])}")
    err = report.get("error")
    if err:
        lines.append(f"error ({err['kind']}): {err['message']}")
        if "residual" in err:
            lines.append(f"residual (eee) - e = {_vector_text(err['residual'])}")

    cmd = report["command"]
    if cmd == "verify":
        lines += _identity_rows(report["checks"])
    elif cmd == "decompose" and not err:
        lines.append("")
        lines.append("relations: " + ", ".join(
            f"{k} {_mark(v)}" + (f" ({report['relation_residual_nonzeros'][k]} nonzero)" if not v else "")
            for k, v in report["relations"].items()))
        lines.append("")
        rows = [[c["name"], c["lambda"], c["mu"], c["sign"] or "", c["dim"]] for c in report["components"]]
        lines += _rows(["component", "lambda", "mu", "sign", "dim"], rows)
        lines.append(f"total: {sum(c['dim'] for c in report['components'])}")
        lines.append("")
        lines.append("invariants: " + ", ".join(f"{k} {_mark(v)}" for k, v in report["invariants"].items()))
        cl = report["classification"]
        wk = cl["weak_commutativity"]
        lines.append(f"weak commutativity ({wk['mode']}): {_mark(wk['passed'])} {_witness_text(wk['witness'])}".rstrip())
        lines.append(f"nonzero components: {', '.join(cl['nonzero'])}")
        if cl["violations"]:
            lines.append(f"components that must vanish but do not: {', '.join(cl['violations'])}")
        if "expected" in report:
            lines.append(f"matches {report['expected']['model']} prediction: {_mark(report['expected']['matches'])}")
    elif cmd == "left-unit" and not err:
        d = report["dims"]
        lines.append(f"left unit: yes; dims U11+ {d['u11p']}, U11- {d['u11m']}, U13+ {d['u13p']}, U13- {d['u13m']}")
        lines += _simple_checks("circle product properties", report["properties"])
        lines += _simple_checks("bilinear equations", report["equations"])
        we = report["weak_equations"]
        lines += _simple_checks(f"weak-case equations ({'required' if we['required'] else 'informational'})", we["checks"])
        lines += _simple_checks("agreement with the source system", report["consistency"])
        lines.append(f"reconstruction reproduces the system: {_mark(report['roundtrip'])}")
    elif cmd == "left-unit":
        lines.append(f"left unit: {'yes' if report.get('is_left_unit') else 'no'}")
    elif cmd == "synthesize":
        d = report["dims"]
        lines.append(f"graded dims U11+ {d['u11p']}, U11- {d['u11m']}, U13+ {d['u13p']}, U13- {d['u13m']}")
        lines += _simple_checks(f"(a) admissibility: {_mark(report['a_admissible']['passed'])}", report["a_admissible"]["checks"])
        lines += _simple_checks(f"(b) bilinear equations: {_mark(report['b_equations']['passed'])}", report["b_equations"]["checks"])
        lines.append(f"(c) axioms: {_mark(report['c_axioms']['passed'])}")
        lines += _identity_rows(report["c_axioms"]["checks"])
        lu = report["left_unit"]
        lines.append(f"left unit in the synthesized system: {'found' if lu['found'] else 'not found'}")
        lines.append(f"admissible implies equations: {_mark(report['implication_holds'])}")
    elif cmd == "example":
        desc = report["descriptor"]
        lines.append(f"model {desc['name']} params {desc['params']}")
        lines.append(f"tripotent e = {_vector_text(report['tripotent'])}")
        lines += _rows(["component", "expected dim"], [[k, v] for k, v in desc["dims"].items() if v])
    lines.append("")
    lines.append(f"overall: {_mark(report['passed'])}")
    return "\n".join(lines) + "\n"
