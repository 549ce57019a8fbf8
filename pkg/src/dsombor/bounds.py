"""Catalog of DSO bounds as data, plus per-graph evaluation.

Each record states ``lhs <= rhs``. Expressions are small named functions over
a :class:`Scalars` view (index values and n, m, Delta, delta), not a general
expression language.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from . import indices as ix
from .graph import Graph, DegreeSummary, degree_summary, is_connected
from .indices import IndexKind, IndexValue

DEFAULT_TOL = 1e-9
HARD_TOL = 1e-6
SQRT2 = math.sqrt(2.0)


class ConfigurationError(ValueError):
    """A bound was evaluated without an index value it needs, or with a bad tolerance."""


# applicability labels
ALWAYS = "always"
M_POS = "m>=1"
DELTA_POS = "delta>=1"
DELTA_GE2 = "delta>=2"
CONNECTED = "connected"
CONNECTED_N_GT3 = "connected-and-n>3"

# equality characterization labels
EMPTY_GRAPH = "empty-graph"
ALL_COMPONENTS_REGULAR = "all-components-regular"
REGULAR = "regular"
MATCHING = "matching"
PERFECT_MATCHING = "perfect-matching"
EDGE_SQUARE_SUM_CONSTANT = "edge-square-sum-constant"
K3_OR_STAR = "K3-or-star"
NONE_STATED = "none-stated"
SEE_NOTES = "see-notes"


@dataclass(frozen=True)
class Scalars:
    n: int
    m: int
    Delta: int
    delta: int
    values: Mapping[IndexKind, IndexValue]

    def __getitem__(self, kind: IndexKind) -> float:
        try:
            return self.values[kind].value
        except KeyError:
            raise ConfigurationError(f"index {kind.token} was not computed") from None

    def log_pi_f(self) -> float:
        try:
            return self.values[ix.PI_F].log_value
        except KeyError:
            raise ConfigurationError("index pi_f was not computed") from None


Expr = Callable[[Scalars], float]


@dataclass(frozen=True)
class BoundRecord:
    id: str
    description: str
    applicability: tuple[str, ...]
    lhs: Expr
    rhs: Expr
    uses: tuple[IndexKind, ...]
    equality_claim: str
    # structural scalars that appear as divisors; zero makes the graph inapplicable
    nonzero: tuple[str, ...] = ()
    alt_equality_claims: tuple[str, ...] = ()
    see_notes: bool = False
    notes: str = ""
    observe_when_inapplicable: bool = False
    # inequality failures fail a sweep; equality claims are always observational
    must_hold: bool = True

    @property
    def has_claim(self) -> bool:
        return self.equality_claim not in (NONE_STATED, SEE_NOTES)


def _alpha_gaf(s: Scalars, coefficient: float) -> float:
    D, d = s.Delta, s.delta
    q = math.sqrt(D * D + d * d)
    return coefficient * (D + d) * q / (math.sqrt(2.0) * q + D + d) ** 2


def _gaf_lower(coefficient: float) -> Expr:
    def lhs(s: Scalars) -> float:
        inner = _alpha_gaf(s, coefficient) * s.m * (s.m - s[ix.GAF])
        # m >= GAF always; clamp the float residue at equality
        return math.sqrt(max(inner, 0.0))
    return lhs


def _dso(s: Scalars) -> float:
    return s[ix.DSO]


def _pi_f_lower(s: Scalars) -> float:
    root = math.exp(s.log_pi_f() / s.m)
    return math.sqrt(s[ix.FORGOTTEN] + s.m * (s.m - 1) * root) / (2 * s.Delta)


CHI_M2 = ix.chi_alpha(-2.0)

_CATALOG: tuple[BoundRecord, ...] = (
    BoundRecord(
        "B0-lower", "m*sqrt(2)/2 <= DSO (edgewise ratio is at least 1/sqrt(2))",
        (M_POS,), lambda s: s.m * SQRT2 / 2, _dso, (ix.DSO,), ALL_COMPONENTS_REGULAR,
    ),
    BoundRecord(
        "B0-upper", "DSO <= m*sqrt(Delta^2+delta^2)/(Delta+delta)",
        (M_POS,), _dso, lambda s: s.m * math.hypot(s.Delta, s.delta) / (s.Delta + s.delta),
        (ix.DSO,), NONE_STATED,
    ),
    BoundRecord(
        "T-AlbGA-lower", "sqrt(2)/(4 Delta)*Alb + GA/2 <= DSO",
        (M_POS,), lambda s: SQRT2 / (4 * s.Delta) * s[ix.ALBERTSON] + s[ix.GA] / 2, _dso,
        (ix.ALBERTSON, ix.GA, ix.DSO), EMPTY_GRAPH, nonzero=("Delta",),
        notes="claimed equality only for the edgeless graph, which m>=1 excludes",
    ),
    BoundRecord(
        "T-AlbGA-upper", "DSO <= Alb/(2 delta) + sqrt(2)/2*GA",
        (DELTA_POS,), _dso, lambda s: s[ix.ALBERTSON] / (2 * s.delta) + SQRT2 / 2 * s[ix.GA],
        (ix.ALBERTSON, ix.GA, ix.DSO), ALL_COMPONENTS_REGULAR, nonzero=("delta",),
    ),
    BoundRecord(
        "T-AlbM", "DSO <= sqrt(2)/2*(Alb + m)",
        (ALWAYS,), _dso, lambda s: SQRT2 / 2 * (s[ix.ALBERTSON] + s.m),
        (ix.ALBERTSON, ix.DSO), ALL_COMPONENTS_REGULAR,
    ),
    BoundRecord(
        "C-MaxDeg", "DSO <= sqrt(2)/2*m*(Delta - delta + 1)",
        (CONNECTED,), _dso, lambda s: SQRT2 / 2 * s.m * (s.Delta - s.delta + 1),
        (ix.DSO,), REGULAR,
    ),
    BoundRecord(
        "T-HM1", "DSO <= sqrt(2)/2*sqrt(H*(M1 - H))",
        (M_POS,), _dso, lambda s: SQRT2 / 2 * math.sqrt(s[ix.HARMONIC] * (s[ix.M1] - s[ix.HARMONIC])),
        (ix.DSO, ix.HARMONIC, ix.M1), EDGE_SQUARE_SUM_CONSTANT,
        notes="equality claim read as: d_u^2 + d_v^2 is constant over the edges (worded 'is a contrast')",
    ),
    BoundRecord(
        "T-Size", "DSO <= m/(m+1)*sqrt((m+1)^2 - 2)",
        (CONNECTED,), _dso, lambda s: s.m / (s.m + 1) * math.sqrt((s.m + 1) ** 2 - 2),
        (ix.DSO,), NONE_STATED, nonzero=("m",), observe_when_inapplicable=True,
        notes="asserted on connected graphs; also observed on disconnected ones",
    ),
    BoundRecord(
        "T-GAF-proof", "sqrt(alpha4*m*(m - GAF)) <= DSO, alpha4 with leading 4*sqrt(2)",
        (DELTA_POS,), _gaf_lower(4 * SQRT2), _dso, (ix.GAF, ix.DSO), REGULAR, nonzero=("delta",),
    ),
    BoundRecord(
        "T-GAF-stmt", "sqrt(alpha2*m*(m - GAF)) <= DSO, alpha2 with leading 2*sqrt(2)",
        (DELTA_POS,), _gaf_lower(2 * SQRT2), _dso, (ix.GAF, ix.DSO), REGULAR, nonzero=("delta",),
        notes="constant with 2*sqrt(2) in front, half of the 4*sqrt(2) the derivation gives",
    ),
    BoundRecord(
        "T-ISI", "(M1 - 2 ISI + delta*Delta*H)/(sqrt(2)(Delta+delta)) <= DSO",
        (CONNECTED,),
        lambda s: (s[ix.M1] - 2 * s[ix.ISI] + s.delta * s.Delta * s[ix.HARMONIC]) / (SQRT2 * (s.Delta + s.delta)),
        _dso, (ix.M1, ix.ISI, ix.HARMONIC, ix.DSO), REGULAR, nonzero=("Delta",),
    ),
    BoundRecord(
        "T-ChiSF-lower", "chi^2/SF <= DSO",
        (M_POS,), lambda s: s[ix.CHI] ** 2 / s[ix.SF], _dso, (ix.CHI, ix.SF, ix.DSO), ALL_COMPONENTS_REGULAR,
    ),
    BoundRecord(
        "T-ChiF-upper", "DSO <= sqrt(F*chi_{-2})",
        (M_POS,), _dso, lambda s: math.sqrt(s[ix.FORGOTTEN] * s[CHI_M2]),
        (ix.DSO, ix.FORGOTTEN, CHI_M2), ALL_COMPONENTS_REGULAR,
    ),
    BoundRecord(
        "T-RBSO", "R^2/BSO <= DSO",
        (M_POS,), lambda s: s[ix.RANDIC] ** 2 / s[ix.BSO], _dso, (ix.RANDIC, ix.BSO, ix.DSO), NONE_STATED,
    ),
    BoundRecord(
        "T-SDD-lower", "sqrt(2)/(2 Delta)*SDD <= DSO",
        (CONNECTED, DELTA_GE2), lambda s: SQRT2 / (2 * s.Delta) * s[ix.SDD], _dso,
        (ix.SDD, ix.DSO), REGULAR, nonzero=("Delta",),
    ),
    BoundRecord(
        "T-SDD-upper", "DSO <= Delta/(2 delta)*sqrt(m*SDD)",
        (CONNECTED,), _dso, lambda s: s.Delta / (2 * s.delta) * math.sqrt(s.m * s[ix.SDD]),
        (ix.SDD, ix.DSO), REGULAR, nonzero=("delta",),
    ),
    BoundRecord(
        "T-SO-lower", "SO/(2 Delta) <= DSO",
        (CONNECTED,), lambda s: s[ix.SO] / (2 * s.Delta), _dso, (ix.SO, ix.DSO), REGULAR, nonzero=("Delta",),
    ),
    BoundRecord(
        "T-SO-upper", "DSO <= SO/(2 delta)",
        (CONNECTED,), _dso, lambda s: s[ix.SO] / (2 * s.delta), (ix.SO, ix.DSO), REGULAR, nonzero=("delta",),
    ),
    BoundRecord(
        "T-PiF", "sqrt(F + m(m-1)*Pi_F^(1/m))/(2 Delta) <= DSO",
        (M_POS,), _pi_f_lower, _dso, (ix.FORGOTTEN, ix.PI_F, ix.DSO), NONE_STATED, nonzero=("Delta",),
    ),
    BoundRecord(
        "T-BSO-lower", "BSO/2 <= DSO",
        (M_POS,), lambda s: s[ix.BSO] / 2, _dso, (ix.BSO, ix.DSO), MATCHING,
        alt_equality_claims=(PERFECT_MATCHING,),
        notes="'mK2' may or may not allow isolated vertices; both readings audited",
    ),
    BoundRecord(
        "T-BSO-upper", "DSO <= n/4*BSO",
        (M_POS,), _dso, lambda s: s.n / 4 * s[ix.BSO], (ix.BSO, ix.DSO), ALL_COMPONENTS_REGULAR,
        see_notes=True,
        notes="the n/4 factor assumes d_u + d_v <= n on every edge, false e.g. on K_3; equality would also need d_u + d_v = n",
    ),
    BoundRecord(
        "L-M1", "M1 <= m(m+1)",
        (CONNECTED,), lambda s: s[ix.M1], lambda s: s.m * (s.m + 1), (ix.M1,), K3_OR_STAR,
    ),
    BoundRecord(
        "L-H", "2m^2/M1 <= H",
        (M_POS,), lambda s: 2 * s.m ** 2 / s[ix.M1], lambda s: s[ix.HARMONIC], (ix.M1, ix.HARMONIC), NONE_STATED,
    ),
)

_BY_ID = {rec.id: rec for rec in _CATALOG}


def catalog() -> list[BoundRecord]:
    return list(_CATALOG)


def bound_ids() -> list[str]:
    return [rec.id for rec in _CATALOG]


def get_bound(bound_id: str) -> BoundRecord:
    try:
        return _BY_ID[bound_id]
    except KeyError:
        raise ConfigurationError(f"unknown bound {bound_id!r}; valid: {', '.join(_BY_ID)}") from None


def select_bounds(spec: str | Iterable[str]) -> list[BoundRecord]:
    """Resolve ``"all"`` or a comma list of ids, keeping catalog order."""
    if isinstance(spec, str):
        if spec.strip() == "all":
            return catalog()
        spec = [tok for tok in spec.split(",") if tok.strip()]
    wanted = {get_bound(tok.strip()).id for tok in spec}
    return [rec for rec in _CATALOG if rec.id in wanted]


# equality characterizations


def _is_star(g: Graph) -> bool:
    if g.n < 2 or g.m != g.n - 1:
        return False
    return max(g.degrees()) == g.n - 1


def equality_predicate(label: str, g: Graph) -> bool:
    degs = g.degrees()
    m = g.m
    if label == EMPTY_GRAPH:
        return m == 0
    if label == REGULAR:
        return bool(degs) and min(degs) == max(degs) >= 1
    if label == ALL_COMPONENTS_REGULAR:
        return m >= 1 and all(degs[u] == degs[v] for u, v in g.edges())
    if label == MATCHING:
        return m >= 1 and max(degs) <= 1
    if label == PERFECT_MATCHING:
        return m >= 1 and all(d == 1 for d in degs)
    if label == EDGE_SQUARE_SUM_CONSTANT:
        return m >= 1 and len({degs[u] ** 2 + degs[v] ** 2 for u, v in g.edges()}) == 1
    if label == K3_OR_STAR:
        return (g.n == 3 and m == 3) or _is_star(g)
    raise ConfigurationError(f"no predicate for equality label {label!r}")


# evaluation


@dataclass(frozen=True)
class BoundEvaluation:
    bound_id: str
    applicable: bool
    lhs_value: float | None = None
    rhs_value: float | None = None
    slack: float | None = None
    holds: bool | None = None
    hard_violation: bool | None = None
    equality_achieved: bool | None = None
    characterization_predicted: bool | None = None
    characterization_match: bool | None = None
    alt_predicted: dict[str, bool] = field(default_factory=dict)


def _applicable(rec: BoundRecord, g: Graph, ds: DegreeSummary, connected: bool) -> bool:
    m = sum(ds.degrees) // 2
    for label in rec.applicability:
        if label == ALWAYS:
            continue
        if label == M_POS and m < 1:
            return False
        if label == DELTA_POS and ds.delta < 1:
            return False
        if label == DELTA_GE2 and ds.delta < 2:
            return False
        if label == CONNECTED and not connected:
            return False
        if label == CONNECTED_N_GT3 and not (connected and g.n > 3):
            return False
    scalars = {"delta": ds.delta, "Delta": ds.Delta, "m": m}
    return all(scalars[name] != 0 for name in rec.nonzero)


def scalars_for(g: Graph, ind: Iterable[IndexValue], ds: DegreeSummary | None = None) -> Scalars:
    ds = ds or degree_summary(g)
    return Scalars(g.n, sum(ds.degrees) // 2, ds.Delta, ds.delta, {v.kind: v for v in ind})


def compare(lhs: float, rhs: float, tol_rel: float = DEFAULT_TOL) -> tuple[float, bool, bool, bool]:
    """Return ``(slack, holds, equality, hard_violation)`` for ``lhs <= rhs``."""
    slack = rhs - lhs
    scale = max(1.0, abs(lhs), abs(rhs))
    holds = slack >= -tol_rel * scale
    equal = abs(slack) <= tol_rel * scale
    hard = slack < -HARD_TOL * scale
    return slack, holds, equal, hard


def evaluate_bound(
    g: Graph,
    rec: BoundRecord,
    indices: Iterable[IndexValue] | Scalars,
    tol_rel: float = DEFAULT_TOL,
    *,
    connected: bool | None = None,
    force: bool = False,
) -> BoundEvaluation:
    """Evaluate one record on one graph.

    ``force`` drops the connectivity requirement, to observe a bound on graphs
    outside its asserted range; the other predicates and division guards stay.
    """
    if not tol_rel > 0:
        raise ConfigurationError("tol_rel must be positive")
    s = indices if isinstance(indices, Scalars) else scalars_for(g, indices)
    for kind in rec.uses:
        if kind not in s.values:
            raise ConfigurationError(f"bound {rec.id} needs index {kind.token}")
    ds = DegreeSummary(g.degrees(), s.delta, s.Delta)
    if connected is None:
        connected = is_connected(g)
    ok = _applicable(rec, g, ds, True if force else connected)
    if not ok:
        return BoundEvaluation(rec.id, False)

    lhs = float(rec.lhs(s))
    rhs = float(rec.rhs(s))
    slack, holds, equal, hard = compare(lhs, rhs, tol_rel)
    predicted = match = None
    if rec.has_claim:
        predicted = equality_predicate(rec.equality_claim, g)
        match = equal == predicted
    alt = {label: equality_predicate(label, g) for label in rec.alt_equality_claims}
    return BoundEvaluation(rec.id, True, lhs, rhs, slack, holds, hard, equal, predicted, match, alt)
