"""Degree-based topological indices as edge-contribution kernels.

Every index is a sum over edges of ``f(d_u, d_v)`` except the multiplicative
forgotten index, which is the product of ``d_u**2 + d_v**2``. The product is
carried in log space as well because it overflows doubles quickly.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import Graph


class IndexSpecError(ValueError):
    """Bad index token or kernel domain violation."""


class Tag(enum.Enum):
    M1 = "m1"
    RANDIC = "randic"
    ALBERTSON = "albertson"
    GA = "ga"
    HARMONIC = "harmonic"
    ISI = "isi"
    GAF = "gaf"
    SUM_CONNECTIVITY = "chi"
    GENERAL_SUM_CONNECTIVITY = "chi_alpha"
    FORGOTTEN = "forgotten"
    MULTIPLICATIVE_FORGOTTEN = "pi_f"
    SF = "sf"
    BSO = "bso"
    SDD = "sdd"
    SOMBOR = "so"
    DSO = "dso"


@dataclass(frozen=True)
class IndexKind:
    tag: Tag
    alpha: float | None = None

    def __post_init__(self):
        parametric = self.tag is Tag.GENERAL_SUM_CONNECTIVITY
        if parametric != (self.alpha is not None):
            raise IndexSpecError(f"alpha is required for chi_alpha and only for chi_alpha: {self.tag.value}")

    @property
    def is_product(self) -> bool:
        return self.tag is Tag.MULTIPLICATIVE_FORGOTTEN

    @property
    def token(self) -> str:
        if self.alpha is None:
            return self.tag.value
        return f"chi_alpha({_fmt_alpha(self.alpha)})"

    def __str__(self) -> str:
        return self.token


def _fmt_alpha(alpha: float) -> str:
    return str(int(alpha)) if float(alpha).is_integer() else repr(float(alpha))


M1 = IndexKind(Tag.M1)
RANDIC = IndexKind(Tag.RANDIC)
ALBERTSON = IndexKind(Tag.ALBERTSON)
GA = IndexKind(Tag.GA)
HARMONIC = IndexKind(Tag.HARMONIC)
ISI = IndexKind(Tag.ISI)
GAF = IndexKind(Tag.GAF)
CHI = IndexKind(Tag.SUM_CONNECTIVITY)
FORGOTTEN = IndexKind(Tag.FORGOTTEN)
PI_F = IndexKind(Tag.MULTIPLICATIVE_FORGOTTEN)
SF = IndexKind(Tag.SF)
BSO = IndexKind(Tag.BSO)
SDD = IndexKind(Tag.SDD)
SO = IndexKind(Tag.SOMBOR)
DSO = IndexKind(Tag.DSO)


def chi_alpha(alpha: float) -> IndexKind:
    return IndexKind(Tag.GENERAL_SUM_CONNECTIVITY, float(alpha))


FIXED_KINDS: tuple[IndexKind, ...] = (
    M1, RANDIC, ALBERTSON, GA, HARMONIC, ISI, GAF, CHI,
    FORGOTTEN, PI_F, SF, BSO, SDD, SO, DSO,
)
# exponents the bound catalog consumes
CATALOG_ALPHAS: tuple[float, ...] = (-2.0, -0.5)

_CHI_ALPHA_RE = re.compile(r"^chi_alpha\(\s*([^)]+?)\s*\)$")


def parse_index_token(token: str) -> IndexKind:
    token = token.strip()
    match = _CHI_ALPHA_RE.match(token)
    if match:
        try:
            alpha = float(match.group(1))
        except ValueError:
            raise IndexSpecError(f"bad chi_alpha exponent in {token!r}") from None
        if not math.isfinite(alpha):
            raise IndexSpecError(f"chi_alpha exponent must be finite: {token!r}")
        return chi_alpha(alpha)
    for kind in FIXED_KINDS:
        if kind.token == token:
            return kind
    valid = ", ".join(k.token for k in FIXED_KINDS) + ", chi_alpha(<real>)"
    raise IndexSpecError(f"unknown index {token!r}; valid: {valid}")


def _sq(a: int, b: int) -> int:
    return a * a + b * b


_KERNELS: dict[Tag, Callable[[int, int], float]] = {
    Tag.M1: lambda a, b: float(a + b),
    Tag.RANDIC: lambda a, b: 1.0 / math.sqrt(a * b),
    Tag.ALBERTSON: lambda a, b: float(abs(a - b)),
    Tag.GA: lambda a, b: 2.0 * math.sqrt(a * b) / (a + b),
    Tag.HARMONIC: lambda a, b: 2.0 / (a + b),
    Tag.ISI: lambda a, b: a * b / (a + b),
    Tag.GAF: lambda a, b: 2.0 * a * b / _sq(a, b),
    Tag.SUM_CONNECTIVITY: lambda a, b: 1.0 / math.sqrt(a + b),
    Tag.FORGOTTEN: lambda a, b: float(_sq(a, b)),
    Tag.MULTIPLICATIVE_FORGOTTEN: lambda a, b: float(_sq(a, b)),
    Tag.SF: lambda a, b: 1.0 / math.sqrt(_sq(a, b)),
    Tag.BSO: lambda a, b: math.sqrt(1.0 / (a * a) + 1.0 / (b * b)),
    Tag.SDD: lambda a, b: _sq(a, b) / (a * b),
    Tag.SOMBOR: lambda a, b: math.sqrt(_sq(a, b)),
    Tag.DSO: lambda a, b: math.sqrt(_sq(a, b)) / (a + b),
}


def edge_contribution(kind: IndexKind, du: int, dv: int) -> float:
    """Contribution ``f(du, dv)`` of one edge whose endpoints have degrees du, dv."""
    if du < 1 or dv < 1:
        raise IndexSpecError(f"edge endpoint degrees must be >= 1, got ({du}, {dv})")
    if kind.tag is Tag.GENERAL_SUM_CONNECTIVITY:
        return float(du + dv) ** kind.alpha
    return _KERNELS[kind.tag](du, dv)


@dataclass(frozen=True)
class IndexValue:
    """Value of one index on one graph.

    ``exact`` holds the integer value for M1, Albertson, F and Pi_F;
    ``log_value`` is ``log(Pi_F)`` for the product index (``0.0`` when m = 0).
    """

    kind: IndexKind
    value: float
    exact: int | None = None
    log_value: float | None = None


_INTEGER_TAGS = {
    Tag.M1: lambda a, b: a + b,
    Tag.ALBERTSON: lambda a, b: abs(a - b),
    Tag.FORGOTTEN: _sq,
}


def _edge_degrees(g: Graph) -> list[tuple[int, int]]:
    degs = g.degrees()
    return [(degs[u], degs[v]) for u, v in g.edges()]


def _product_value(pairs: Sequence[tuple[int, int]]) -> IndexValue:
    exact = 1
    logs = []
    for a, b in pairs:
        s = _sq(a, b)
        exact *= s
        logs.append(math.log(s))
    try:
        value = float(exact)
    except OverflowError:
        value = math.inf
    return IndexValue(PI_F, value, exact=exact, log_value=math.fsum(logs))


def _sum_value(kind: IndexKind, pairs: Sequence[tuple[int, int]]) -> IndexValue:
    value = math.fsum(edge_contribution(kind, a, b) for a, b in pairs)
    exact_fn = _INTEGER_TAGS.get(kind.tag)
    exact = sum(exact_fn(a, b) for a, b in pairs) if exact_fn else None
    return IndexValue(kind, value, exact=exact)


def compute_index(g: Graph, kind: IndexKind) -> IndexValue:
    pairs = _edge_degrees(g)
    if kind.is_product:
        return _product_value(pairs)
    return _sum_value(kind, pairs)


def compute_all(g: Graph, alpha_values: Iterable[float] = CATALOG_ALPHAS) -> list[IndexValue]:
    """Every fixed index plus one chi_alpha per requested exponent, in a fixed order."""
    pairs = _edge_degrees(g)
    kinds = list(FIXED_KINDS)
    for alpha in alpha_values:
        kind = chi_alpha(alpha)
        if kind not in kinds:
            kinds.append(kind)
    out = []
    for kind in kinds:
        out.append(_product_value(pairs) if kind.is_product else _sum_value(kind, pairs))
    return out


def vertex_m1(g: Graph) -> int:
    """First Zagreb index in its vertex form, the sum of squared degrees."""
    return sum(d * d for d in g.degrees())
