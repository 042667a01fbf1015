"""Report builders behind the CLI, plus csv/markdown/json rendering."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .certify import LEMMAS, NEGATIVE_CONTROL, CertificateError, certify_lemma
from .family import HALF_PI, PI, FamilySpec, phi
from .inequalities import (
    classical_bounds,
    generalized_bound,
    random_exponent_pairs,
    run_checks,
)
from .minimax import critical_constants, deviation_tables, solve_all

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CERTIFICATE = 2
EXIT_USAGE = 3

BOUNDS_TOL = 1e-5
MINIMAX_REL_TOL = 1e-4

# reference deviations, truncated rather than rounded
REFERENCE_DEVIATIONS = {
    "U1": 0.27323, "U2": 0.011612, "U3": 0.065358, "U4": 0.10245, "U5": 0.070461,
    "L1": 0.082395, "L2": 0.045070, "L3": 0.15117, "L4": 0.20422, "L5": 0.0085153,
}

# (coefficient, exponent, deviation) of the six minimax approximations
REFERENCE_MINIMAX = [
    (0.13323, 1.0, 0.055187),
    (0.036014, 2.0, 0.0079283),
    (0.010441, 3.0, 0.039635),
    (0.0031146, 4.0, 0.059981),
    (0.043803, 1.84823, 0.0026604),
    (0.051415, 1.72287, 0.0061296),
]


class Num(float):
    """A float that renders with the report's significant-digit setting."""


@dataclass
class Section:
    title: str
    columns: List[str]
    rows: List[Dict[str, Any]]


@dataclass
class Report:
    sections: List[Section]
    status: int = EXIT_OK
    messages: List[str] = field(default_factory=list)


def fmt_num(v: float, precision: int = 6) -> str:
    """Plain positional decimal with ``precision`` significant digits."""
    if v is None:
        return ""
    v = float(v)
    if not math.isfinite(v):
        return str(v)
    if v == 0:
        return "0"
    return np.format_float_positional(v, precision=precision, unique=False,
                                      fractional=False, trim="-")


def _cell(v, precision: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_num(v, precision)
    return str(v)


def render_csv(report: Report, precision: int = 6) -> str:
    buf = io.StringIO()
    many = len(report.sections) > 1
    for i, sec in enumerate(report.sections):
        if many:
            if i:
                buf.write("\n")
            buf.write(f"# {sec.title}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(sec.columns)
        for row in sec.rows:
            w.writerow([_cell(row.get(c), precision) for c in sec.columns])
    return buf.getvalue()


def render_markdown(report: Report, precision: int = 6) -> str:
    out = []
    for sec in report.sections:
        out.append(f"## {sec.title}\n")
        out.append("| " + " | ".join(sec.columns) + " |")
        out.append("|" + "|".join("---" for _ in sec.columns) + "|")
        for row in sec.rows:
            cells = [_cell(row.get(c), precision).replace("|", "\\|") for c in sec.columns]
            out.append("| " + " | ".join(cells) + " |")
        out.append("")
    return "\n".join(out)


def _json_value(v, precision: int, indent: str) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        # emitted raw so numbers stay plain decimals rather than 1e-05
        return fmt_num(v, precision) if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    inner = indent + "  "
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json_value(x, precision, inner)}"
                 for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + indent + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [inner + _json_value(x, precision, inner) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + indent + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def render_json(report: Report, precision: int = 6) -> str:
    doc = {sec.title: [{c: r.get(c) for c in sec.columns} for r in sec.rows]
           for sec in report.sections}
    doc["status"] = report.status
    return _json_value(doc, precision, "") + "\n"


RENDERERS = {"csv": render_csv, "markdown": render_markdown, "json": render_json}


def render(report: Report, fmt: str, precision: int = 6) -> str:
    return RENDERERS[fmt](report, precision)


# ---------------------------------------------------------------- builders

def build_bounds(grid_n: int, tol: float) -> Report:
    upper, lower = deviation_tables(grid_n, tol)
    columns = ["id", "bound", "closed_form", "closed_value", "reference", "deviation",
               "diff_closed", "diff_reference"]
    sections, status, msgs = [], EXIT_OK, []
    for title, rows in (("upper bounds", upper), ("lower bounds", lower)):
        out = []
        for r in rows:
            ref = REFERENCE_DEVIATIONS[r.bound_id]
            d_ref = abs(r.deviation - ref)
            d_cf = abs(r.deviation - r.closed_form) if r.closed_form is not None else None
            if d_ref > BOUNDS_TOL or (d_cf is not None and d_cf > BOUNDS_TOL):
                status = EXIT_MISMATCH
                msgs.append(f"{r.bound_id}: deviation {r.deviation!r} vs reference {ref!r}")
            out.append({
                "id": r.bound_id, "bound": r.expression, "closed_form": r.closed_form_text,
                "closed_value": r.closed_form, "reference": ref, "deviation": r.deviation,
                "diff_closed": d_cf, "diff_reference": d_ref,
            })
        sections.append(Section(title, columns, out))
    return Report(sections, status, msgs)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def build_minimax(grid_n: int, tol: float) -> Report:
    results = solve_all(tol, grid_n)
    rows, status, msgs = [], EXIT_OK, []
    for i, (res, (c_ref, e_ref, d_ref)) in enumerate(zip(results, REFERENCE_MINIMAX), 1):
        worst = max(_rel(res.coefficient, c_ref), _rel(res.exponent, e_ref), _rel(res.d0, d_ref))
        if worst > MINIMAX_REL_TOL:
            status = EXIT_MISMATCH
            msgs.append(f"row {i}: relative deviation {worst:.3g} from reference")
        rows.append({
            "row": i,
            "family": res.family_kind.value,
            "approximation": f"2/pi + {fmt_num(res.coefficient)} (pi^{fmt_num(res.exponent)}"
                             f" - (2x)^{fmt_num(res.exponent)})",
            "coefficient": res.coefficient,
            "exponent": res.exponent,
            "param0": res.param0,
            "deviation": res.d0,
            "residual": res.residual,
            "ref_coefficient": c_ref,
            "ref_exponent": e_ref,
            "ref_deviation": d_ref,
            "max_rel_diff": worst,
        })
    cc = critical_constants()
    consts = [
        {"name": "qA1 = 2/(pi-2)", "value": cc.qA1},
        {"name": "qA2", "value": cc.qA2},
        {"name": "qB1 = pi^2/4 - 1", "value": cc.qB1},
        {"name": "qB2 = 2/(pi-2)", "value": cc.qB2},
    ]
    for q, (p1, p2) in cc.p_bounds.items():
        consts.append({"name": f"p1 (q={q})", "value": p1})
        consts.append({"name": f"p2 (q={q})", "value": p2})
    sections = [
        Section("minimax approximations", list(rows[0].keys()), rows),
        Section("critical constants", ["name", "value"], consts),
    ]
    return Report(sections, status, msgs)


def build_certify(interval, negative_control: bool = False) -> Report:
    jobs = [(name, None) for name in LEMMAS]
    if negative_control:
        jobs.append((NEGATIVE_CONTROL[0] + " (negative control)", NEGATIVE_CONTROL))
    rows, details, status, msgs = [], [], EXIT_OK, []
    for label, override in jobs:
        name, degrees = override if override else (label, None)
        try:
            bundle = certify_lemma(name, degrees, interval)
        except CertificateError as exc:
            status = EXIT_CERTIFICATE
            msgs.append(f"{label}: failed at stage {exc.stage}: {exc.detail}")
            rows.append({"lemma": label, "valid": False, "stage": exc.stage, "detail": exc.detail})
            continue
        d = bundle.to_dict()
        rows.append({
            "lemma": label, "valid": bundle.valid, "stage": "done",
            "combined": d["combined"], "cofactor": d["sturm"]["cofactor"],
            "chain_length": d["sturm"]["chain_length"], "root_count": d["sturm"]["root_count"],
            "interval": f"({d['interval'][0]}, {d['interval'][1]})",
        })
        for e in d["enclosures"]:
            details.append({"lemma": label, **e})
    cols = ["lemma", "valid", "stage", "detail", "combined", "cofactor", "chain_length",
            "root_count", "interval"]
    sections = [Section("certificates", cols, rows)]
    if details:
        sections.append(Section("enclosures", ["lemma", "term", "target", "degree", "direction",
                                               "valid_hi", "covers_interval"], details))
    return Report(sections, status, msgs)


def build_verify(n: int, draws: int, seed: int) -> Report:
    classical = classical_bounds()
    rng = np.random.default_rng(seed)
    pairs = random_exponent_pairs(rng, draws)
    generalized = [generalized_bound(q1, q2) for q1, q2 in pairs]

    rows, status, msgs = [], EXIT_OK, []

    def record(group, checks):
        nonlocal status
        fails = run_checks(checks, n)
        rows.append({"check": group, "cases": len(checks), "grid_points": n,
                     "passed": len(checks) - len(fails), "ok": not fails})
        if fails:
            status = EXIT_MISMATCH
            c = fails[0]
            msgs.append(f"{group}: {c.name} fails ({c.side}) at x={c.x!r} with params "
                        f"{c.params}: bound={c.lhs!r} sinc={c.rhs!r}")

    for b in classical:
        record(b.name, [b])
    cc = critical_constants()
    record("generalized boundary pairs",
           [generalized_bound(cc.qB1, cc.qA1), generalized_bound(cc.qB2, cc.qA2)])
    record("generalized regime (i)", [g for (q1, q2), g in zip(pairs, generalized) if q1 < 1.5])
    record("generalized regime (ii)", [g for (q1, q2), g in zip(pairs, generalized) if q1 > 1.5])
    return Report([Section("inequality checks",
                           ["check", "cases", "grid_points", "passed", "ok"], rows)],
                  status, msgs)


def figure_members(minimax=None) -> List[tuple]:
    """(figure, role, spec) triples, in output order."""
    cc = critical_constants()
    if minimax is None:
        minimax = solve_all()
    p0 = {int(r.q): r.param0 for r in minimax if r.family_kind.value == "fixed_q"}
    qa0 = next(r.param0 for r in minimax if r.family_kind.value == "a_type")
    qb0 = next(r.param0 for r in minimax if r.family_kind.value == "b_type")

    out = []
    for q in (1.0, 1.3, 1.6):
        out.append(("1", "lower-bound", FamilySpec.a_type(q)))
    out.append(("1", "boundary q1", FamilySpec.a_type(cc.qA1)))
    for q in (1.8, 1.9, 1.95):
        out.append(("1", "crossing", FamilySpec.a_type(q)))
    out.append(("1", "minimax", FamilySpec.a_type(qa0)))
    out.append(("1", "boundary q2", FamilySpec.a_type(cc.qA2)))
    for q in (2.5, 3.0, 4.0):
        out.append(("1", "upper-bound", FamilySpec.a_type(q)))

    for q in (1.0, 1.2, 1.4):
        out.append(("2", "upper-bound", FamilySpec.b_type(q)))
    out.append(("2", "boundary q1", FamilySpec.b_type(cc.qB1)))
    for q in (1.55, 1.6, 1.7):
        out.append(("2", "crossing", FamilySpec.b_type(q)))
    out.append(("2", "minimax", FamilySpec.b_type(qb0)))
    out.append(("2", "boundary q2", FamilySpec.b_type(cc.qB2)))
    for q in (2.0, 3.0, 4.0):
        out.append(("2", "lower-bound", FamilySpec.b_type(q)))

    for q, panel in zip((1, 2, 3, 4), "abcd"):
        p1, p2 = cc.p_bounds[q]
        fig = "3" + panel
        for s in (0.5, 0.75, 0.9):
            out.append((fig, "below p1", FamilySpec.fixed_q(q, s * p1)))
        out.append((fig, "boundary p1", FamilySpec.fixed_q(q, p1)))
        for s in (0.25, 0.5, 0.75):
            out.append((fig, "crossing", FamilySpec.fixed_q(q, p1 + s * (p2 - p1))))
        out.append((fig, "minimax", FamilySpec.fixed_q(q, p0[q])))
        out.append((fig, "boundary p2", FamilySpec.fixed_q(q, p2)))
        for s in (1.1, 1.25, 1.5):
            out.append((fig, "above p2", FamilySpec.fixed_q(q, s * p2)))
    return out


def build_plot_data(grid_n: int, tol: float) -> Report:
    xs = HALF_PI * np.arange(1, grid_n + 1) / (grid_n + 1)
    rows = []
    for fig, role, spec in figure_members(solve_all(tol)):
        param = spec.p if spec.p is not None else spec.q
        vals = phi(spec, xs)
        for x, v in zip(xs, vals):
            rows.append({"figure": fig, "family": spec.kind.value, "role": role,
                         "parameter": float(param), "x": float(x), "value": float(v)})
    cols = ["figure", "family", "role", "parameter", "x", "value"]
    return Report([Section("curves", cols, rows)])
