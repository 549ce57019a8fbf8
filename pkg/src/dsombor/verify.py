"""Corpus sweeps: run graphs through the bound catalog and aggregate the outcome."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from . import bounds as bd
from .bounds import BoundEvaluation, BoundRecord
from .generate import canonical_code
from .graph import Graph, Graph6Error, degree_summary, is_connected, parse_graph6, write_graph6
from .indices import CATALOG_ALPHAS, compute_all, compute_index, parse_index_token

WITNESS_CAP = 1000


@dataclass
class ClaimStats:
    label: str
    predicted: int = 0
    achieved_and_predicted: int = 0
    mismatches: list[tuple[str, bool, bool]] = field(default_factory=list)
    mismatch_overflow: int = 0

    def add(self, g6: str, achieved: bool, predicted: bool) -> None:
        self.predicted += predicted
        self.achieved_and_predicted += achieved and predicted
        if achieved != predicted:
            if len(self.mismatches) < WITNESS_CAP:
                self.mismatches.append((g6, achieved, predicted))
            else:
                self.mismatch_overflow += 1


@dataclass
class BoundStats:
    record: BoundRecord
    checked: int = 0
    applicable: int = 0
    holds: int = 0
    borderline: int = 0
    hard_violations: list[tuple[str, float, float, float]] = field(default_factory=list)
    min_slack_witness: tuple[str, float] | None = None
    equality_count: int = 0
    equality_achievers: list[str] = field(default_factory=list)
    equality_overflow: int = 0
    claims: dict[str, ClaimStats] = field(default_factory=dict)
    # outcomes on graphs outside the asserted applicability range
    outside: dict[str, Any] | None = None

    def __post_init__(self):
        rec = self.record
        labels = ([rec.equality_claim] if rec.has_claim else []) + list(rec.alt_equality_claims)
        self.claims = {label: ClaimStats(label) for label in labels}
        if rec.observe_when_inapplicable:
            self.outside = {"checked": 0, "holds": 0, "hard_violations": [], "min_slack_witness": None}

    def add(self, g6: str, ev: BoundEvaluation, outside_ev: BoundEvaluation | None = None) -> None:
        self.checked += 1
        if outside_ev is not None and outside_ev.applicable and self.outside is not None:
            o = self.outside
            o["checked"] += 1
            o["holds"] += outside_ev.holds
            if outside_ev.hard_violation:
                o["hard_violations"].append((g6, outside_ev.lhs_value, outside_ev.rhs_value, outside_ev.slack))
            if o["min_slack_witness"] is None or outside_ev.slack < o["min_slack_witness"][1]:
                o["min_slack_witness"] = (g6, outside_ev.slack)
        if not ev.applicable:
            return
        self.applicable += 1
        if ev.holds:
            self.holds += 1
        elif ev.hard_violation:
            self.hard_violations.append((g6, ev.lhs_value, ev.rhs_value, ev.slack))
        else:
            self.borderline += 1
        if self.min_slack_witness is None or ev.slack < self.min_slack_witness[1]:
            self.min_slack_witness = (g6, ev.slack)
        if ev.equality_achieved:
            self.equality_count += 1
            if len(self.equality_achievers) < WITNESS_CAP:
                self.equality_achievers.append(g6)
            else:
                self.equality_overflow += 1
        for label, stats in self.claims.items():
            if label == self.record.equality_claim and ev.characterization_predicted is not None:
                predicted = ev.characterization_predicted
            else:
                predicted = ev.alt_predicted[label]
            stats.add(g6, ev.equality_achieved, predicted)


@dataclass
class VerificationReport:
    source: str
    tolerance: float
    stats: list[BoundStats]
    graph_count: int = 0
    errors: list[tuple[str, str]] = field(default_factory=list)
    timestamp: str | None = None

    def bound(self, bound_id: str) -> BoundStats:
        for s in self.stats:
            if s.record.id == bound_id:
                return s
        raise KeyError(bound_id)

    @property
    def has_hard_violation(self) -> bool:
        return any(s.hard_violations for s in self.stats if s.record.must_hold)

    def to_dict(self) -> dict[str, Any]:
        meta: dict[str, Any] = {
            "source": self.source,
            "graph_count": self.graph_count,
            "tolerance": self.tolerance,
            "hard_tolerance": bd.HARD_TOL,
            "errors": [{"item": item, "error": msg} for item, msg in self.errors],
        }
        if self.timestamp is not None:
            meta["timestamp"] = self.timestamp
        return {"meta": meta, "bounds": [_stats_dict(s) for s in self.stats]}


def _witness(pair):
    return None if pair is None else {"graph6": pair[0], "slack": pair[1]}


def _violations(items):
    return [{"graph6": g6, "lhs": lhs, "rhs": rhs, "slack": slack} for g6, lhs, rhs, slack in items]


def _stats_dict(s: BoundStats) -> dict[str, Any]:
    rec = s.record
    out: dict[str, Any] = {
        "id": rec.id,
        "description": rec.description,
        "applicability": list(rec.applicability),
        "equality_claim": rec.equality_claim,
        "see_notes": rec.see_notes,
        "notes": rec.notes,
        "counts": {
            "checked": s.checked,
            "applicable": s.applicable,
            "holds": s.holds,
            "borderline": s.borderline,
            "hard_violations": len(s.hard_violations),
            "equality": s.equality_count,
        },
        "min_slack_witness": _witness(s.min_slack_witness),
        "violations": _violations(s.hard_violations),
        "equality_achievers": s.equality_achievers,
        "equality_overflow": s.equality_overflow,
        "mismatches": [],
        "claims": {},
    }
    for label, c in s.claims.items():
        entry = {
            "predicted": c.predicted,
            "mismatches": [{"graph6": g6, "achieved": a, "predicted": p} for g6, a, p in c.mismatches],
            "mismatch_overflow": c.mismatch_overflow,
        }
        out["claims"][label] = entry
        if label == rec.equality_claim:
            out["mismatches"] = entry["mismatches"]
    if s.outside is not None:
        o = s.outside
        out["outside_applicability"] = {
            "checked": o["checked"],
            "holds": o["holds"],
            "violations": _violations(o["hard_violations"]),
            "min_slack_witness": _witness(o["min_slack_witness"]),
        }
    return out


# sweeping

GraphItem = Graph | str


def _evaluate_one(item: tuple[str, tuple[str, ...], float]):
    """Worker: evaluate one graph6 string against bounds given by id."""
    g6, ids, tol = item
    try:
        g = parse_graph6(g6)
    except Graph6Error as exc:
        return g6, str(exc), None
    s = bd.scalars_for(g, compute_all(g, CATALOG_ALPHAS), degree_summary(g))
    connected = is_connected(g)
    out = []
    for bound_id in ids:
        rec = bd.get_bound(bound_id)
        ev = bd.evaluate_bound(g, rec, s, tol, connected=connected)
        outside = None
        if rec.observe_when_inapplicable and not ev.applicable:
            outside = bd.evaluate_bound(g, rec, s, tol, connected=connected, force=True)
        out.append((ev, outside))
    return g6, None, out


def _items(graphs: Iterable[GraphItem], ids: tuple[str, ...], tol: float) -> Iterator[tuple[str, tuple[str, ...], float]]:
    for g in graphs:
        yield (write_graph6(g) if isinstance(g, Graph) else g.strip()), ids, tol


def iter_evaluations(
    graphs: Iterable[GraphItem],
    bounds: Sequence[BoundRecord],
    tol_rel: float = bd.DEFAULT_TOL,
    jobs: int = 1,
) -> Iterator[tuple[str, str | None, list[tuple[BoundEvaluation, BoundEvaluation | None]] | None]]:
    """Per-graph evaluations in corpus order, optionally computed in worker processes."""
    if not tol_rel > 0:
        raise bd.ConfigurationError("tol_rel must be positive")
    ids = tuple(rec.id for rec in bounds)
    items = _items(graphs, ids, tol_rel)
    if jobs <= 1:
        yield from map(_evaluate_one, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_evaluate_one, items, chunksize=64)


def verify_corpus(
    graphs: Iterable[GraphItem],
    bounds: Sequence[BoundRecord] | None = None,
    tol_rel: float = bd.DEFAULT_TOL,
    *,
    source: str = "<stream>",
    jobs: int = 1,
    on_row: Callable[[str, BoundEvaluation], None] | None = None,
) -> VerificationReport:
    """Evaluate every graph against every bound and aggregate in corpus order.

    Strings that fail to parse are recorded in ``errors`` and skipped.
    """
    bounds = list(bd.catalog() if bounds is None else bounds)
    report = VerificationReport(source, tol_rel, [BoundStats(rec) for rec in bounds])
    for g6, error, evals in iter_evaluations(graphs, bounds, tol_rel, jobs):
        if error is not None:
            report.errors.append((g6, error))
            continue
        report.graph_count += 1
        for stats, (ev, outside) in zip(report.stats, evals):
            stats.add(g6, ev, outside)
            if on_row is not None:
                on_row(g6, ev)
    return report


# characterization audit

CONFIRMED = "confirmed-both-directions"
NOT_SUFFICIENT = "counterexample-to-sufficiency"
NOT_NECESSARY = "counterexample-to-necessity"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class ClaimAudit:
    bound_id: str
    claim: str
    findings: tuple[str, ...]
    # graphs the claim predicts but that miss equality
    sufficiency_witnesses: tuple[str, ...]
    # graphs achieving equality outside the claim
    necessity_witnesses: tuple[str, ...]

    @property
    def status(self) -> str:
        return "+".join(self.findings)


def characterization_audit(report: VerificationReport) -> list[ClaimAudit]:
    out = []
    for s in report.stats:
        for label, c in s.claims.items():
            suff = tuple(g6 for g6, achieved, predicted in c.mismatches if predicted and not achieved)
            nec = tuple(g6 for g6, achieved, predicted in c.mismatches if achieved and not predicted)
            findings = []
            if suff:
                findings.append(NOT_SUFFICIENT)
            if nec:
                findings.append(NOT_NECESSARY)
            if not findings:
                findings.append(CONFIRMED if c.predicted or s.equality_count else VACUOUS)
            out.append(ClaimAudit(s.record.id, label, tuple(findings), suff, nec))
    return out


def audit_dict(audits: Sequence[ClaimAudit]) -> list[dict[str, Any]]:
    return [
        {
            "id": a.bound_id,
            "claim": a.claim,
            "status": a.status,
            "sufficiency_witnesses": list(a.sufficiency_witnesses),
            "necessity_witnesses": list(a.necessity_witnesses),
        }
        for a in audits
    ]


# extremal search


@dataclass(frozen=True)
class ExtremalResult:
    target: str
    direction: str
    value: float
    witnesses: tuple[str, ...]


def _target_fn(target: str, tol_rel: float) -> Callable[[Graph], float | None]:
    try:
        rec = bd.get_bound(target)
    except bd.ConfigurationError:
        kind = parse_index_token(target)
        return lambda g: compute_index(g, kind).value

    def slack(g: Graph) -> float | None:
        ev = bd.evaluate_bound(g, rec, compute_all(g, CATALOG_ALPHAS), tol_rel)
        return ev.slack if ev.applicable else None
    return slack


def extremal_search(
    graphs: Iterable[Graph],
    target: str,
    direction: str = "max",
    tol_rel: float = bd.DEFAULT_TOL,
) -> ExtremalResult:
    """Optimum of an index value (or of a bound's slack) over a corpus, with all ties.

    Graphs on which a bound is inapplicable are skipped.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    fn = _target_fn(target, tol_rel)
    sign = 1.0 if direction == "max" else -1.0
    scored = []
    for g in graphs:
        value = fn(g)
        if value is not None:
            scored.append((value, g))
    if not scored:
        raise ValueError("extremal search over an empty corpus")
    best = max(sign * v for v, _ in scored) * sign
    tol = tol_rel * max(1.0, abs(best))
    ties = sorted(canonical_code(g).decode("ascii") for v, g in scored if abs(v - best) <= tol)
    return ExtremalResult(target, direction, best, tuple(ties))
