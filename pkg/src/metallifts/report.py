"""Scenario execution and report rendering.

Verdicts are exact symbolic facts; each residual is additionally
corroborated numerically at seeded random points (an exact zero must
stay below ZERO_TOL everywhere, an exact nonzero must exceed NONZERO_TOL
somewhere).  Structured reports are byte-identical across runs with the
same seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .checks import CheckOutcome, Context, Residual, run_check
from .scenario import Scenario
from .symexpr import RatFunc, ResampleNeeded

DEFAULT_SEED = 20230831
NUM_POINTS = 10
ZERO_TOL = 1e-9
NONZERO_TOL = 1e-12
SCHEMA_VERSION = 1
MAX_RESAMPLES = 100


@dataclass
class NumericSummary:
    points: int
    max_abs: float
    corroborates: bool


@dataclass
class CheckReport:
    raw: str
    outcome: CheckOutcome
    numeric: list[tuple[Residual, NumericSummary]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.outcome.verdict == "error":
            return "error"
        if any(not s.corroborates for _, s in self.numeric):
            return "error"
        return self.outcome.verdict


@dataclass
class Report:
    scenario: str
    seed: int
    checks: list[CheckReport]

    @property
    def ok(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)


def _sample(expr: RatFunc, rng: random.Random) -> NumericSummary:
    names = expr.chart.variables
    max_abs = 0.0
    done = 0
    attempts = 0
    while done < NUM_POINTS and attempts < NUM_POINTS + MAX_RESAMPLES:
        attempts += 1
        point = {n: rng.uniform(-2.0, 2.0) for n in names}
        try:
            val = expr.eval_numeric(point)
        except ResampleNeeded:
            continue
        max_abs = max(max_abs, abs(val))
        done += 1
    return NumericSummary(done, max_abs, True)


def _corroborate(res: Residual, summary: NumericSummary) -> NumericSummary:
    if summary.points < NUM_POINTS:
        summary.corroborates = False
    elif res.expr.is_zero:
        summary.corroborates = summary.max_abs < ZERO_TOL
    else:
        summary.corroborates = summary.max_abs > NONZERO_TOL
    return summary


def run_scenario(scenario: Scenario, seed: int = DEFAULT_SEED) -> Report:
    ctx = Context(scenario)
    rng = random.Random(seed)
    reports = []
    for spec in scenario.checks:
        outcome = run_check(ctx, spec.kind, spec.args, spec.raw)
        numeric = []
        for res in outcome.residuals:
            summary = _corroborate(res, _sample(res.expr, rng))
            numeric.append((res, summary))
        reports.append(CheckReport(spec.raw, outcome, numeric))
    return Report(scenario.name, seed, reports)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _residual_entry(res: Residual, summary: NumericSummary, params) -> dict:
    entry = {
        "label": res.label,
        "expect": res.expect,
        "exact_zero": res.expr.is_zero,
        "points": summary.points,
        "max_abs": format(summary.max_abs, ".6e"),
        "corroborates": summary.corroborates,
    }
    if res.expect == "zero" and not res.expr.is_zero:
        entry["residual"] = res.expr.to_text(params)
    return entry


def render_structured(report: Report, params) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": report.scenario,
        "seed": report.seed,
        "overall": "pass" if report.ok else "fail",
        "checks": [
            {
                "check": c.raw,
                "claim": c.outcome.claim,
                "verdict": c.verdict,
                "error": c.outcome.error,
                "facts": [{"label": lbl, "holds": val}
                          for lbl, val in c.outcome.facts],
                "notes": list(c.outcome.notes),
                "residuals": [_residual_entry(r, s, params) for r, s in c.numeric],
            }
            for c in report.checks
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(report: Report, params) -> str:
    lines = [f"scenario: {report.scenario}",
             f"seed: {report.seed}",
             ""]
    for c in report.checks:
        mark = {"pass": "PASS", "fail": "FAIL", "error": "ERROR"}[c.verdict]
        lines.append(f"[{mark}] {c.raw}")
        lines.append(f"       {c.outcome.claim}")
        if c.outcome.error:
            lines.append(f"       error: {c.outcome.error}")
        for lbl, val in c.outcome.facts:
            if not val:
                lines.append(f"       fact does not hold: {lbl}")
        for note in c.outcome.notes:
            lines.append(f"       note: {note}")
        zero_res = [ (r, s) for r, s in c.numeric if r.expect == "zero" ]
        if zero_res:
            worst = max(s.max_abs for _, s in zero_res)
            lines.append(f"       {len(zero_res)} zero-residual(s), "
                         f"numeric max |value| = {worst:.3e} over "
                         f"{NUM_POINTS} seeded points each")
        for r, s in c.numeric:
            if r.expect == "zero" and not r.expr.is_zero:
                lines.append(f"       nonzero residual {r.label} = "
                             f"{r.expr.to_text(params)}")
            if r.expect == "nonzero":
                state = "nonzero as expected" if not r.expr.is_zero else \
                    "unexpectedly zero"
                lines.append(f"       {r.label}: {state} "
                             f"(sampled max |value| = {s.max_abs:.3e})")
            if not s.corroborates:
                lines.append(f"       numeric corroboration FAILED for {r.label}")
        lines.append("")
    lines.append(f"overall: {'pass' if report.ok else 'fail'}")
    return "\n".join(lines) + "\n"
