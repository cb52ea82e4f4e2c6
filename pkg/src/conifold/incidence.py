"""Dimension counts showing that two standard curves of distinct degrees on a
generic threefold do not meet.

For degrees ``d != d'`` among ``e_1, .., e_k, e = (1, .., 1)`` the family of
threefolds containing a meeting pair has dimension at most
``dim(pairs) - 6 + (dim M_Y - codim)``, where ``codim`` counts the conditions
imposed on the defining polynomials by containing both curves.  The pair does
not occur generically when this is below ``dim M_Y``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

from conifold.config import ConfigMatrix, validate
from conifold.curves import (
    CurveParametrization,
    coordinate_axis_curve,
    diagonal_curve,
    _parse_kind,
    curve_kinds,
    kind_multidegree,
    skew_axis_curve,
)
from conifold.exact import QQ, rank_rows
from conifold.multiring import (
    AmbientSpace,
    MultiHomogPoly,
    count_monomials,
    dot,
    monomials,
    substitute,
)

#: dim Aut(P^1) for each of the two curves
REPARAMETRIZATION = 6


def _require_relaxed(cfg: ConfigMatrix):
    problems = validate(cfg, strict=False)
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))


def dim_section_space(cfg: ConfigMatrix) -> int:
    """Vector-space dimension of ``V_(d^(1)) x .. x V_(d^(m))``."""
    _require_relaxed(cfg)
    return sum(count_monomials(cfg.ambient, row) for row in cfg.entries)


def dim_curve_space(ambient: AmbientSpace, degree) -> int:
    """Dimension of parametrized maps ``P^1 -> X`` of the given multidegree,
    each factor's coordinate forms taken up to their own scaling."""
    degree = tuple(degree)
    if len(degree) != ambient.k or any(d < 0 for d in degree):
        raise ValueError(f"bad multidegree {degree}")
    if not any(degree):
        raise ValueError("constant maps are excluded")
    return sum((n + 1) * (d + 1) - 1 for n, d in zip(ambient.factors, degree))


def dim_incident_pair_space(ambient: AmbientSpace, d1, d2) -> int:
    """Pairs of maps whose images meet: two marked points, one meeting condition in X."""
    d1, d2 = tuple(d1), tuple(d2)
    if d1 == d2:
        raise ValueError("the degrees must differ")
    return dim_curve_space(ambient, d1) + dim_curve_space(ambient, d2) + 2 - ambient.dim


def fiber_codim_closed(cfg: ConfigMatrix, kind1: str, kind2: str) -> int:
    """Closed-form number of conditions for containing a standard meeting pair."""
    _require_relaxed(cfg)
    a = _parse_kind(kind1, cfg.ambient)
    b = _parse_kind(kind2, cfg.ambient)
    if a is None and b is not None:
        a, b = b, a
    if a is None or a == b:
        raise ValueError(f"unsupported pair {kind1}/{kind2}")
    if b is not None:
        return sum(row[a - 1] + row[b - 1] + 1 for row in cfg.entries)
    return sum(row[a - 1] + sum(row) + 1 for row in cfg.entries)


def _restriction_rows(ambient, degree, curves):
    # monomials through a coordinate vanishing on every curve restrict to zero
    allowed = set(range(ambient.nvars)) - set.intersection(*(c.zero_coordinates() for c in curves))
    rows = []
    seen = set()
    for exps in monomials(ambient, degree, allowed):
        mono = MultiHomogPoly.monomial(ambient, exps, 1, QQ)
        row = tuple(x for c in curves for x in substitute(mono, c).coeffs)
        if any(row) and row not in seen:
            seen.add(row)
            rows.append(list(row))
    return rows


def _restriction_rank(ambient, degree, curves) -> int:
    rows = _restriction_rows(ambient, degree, curves)
    return rank_rows(rows, QQ) if rows else 0


def curves_meet(c1: CurveParametrization, c2: CurveParametrization) -> bool:
    """Whether two curves of multidegree at most ``(1, .., 1)`` share a point.

    Disjoint curves impose independent conditions on forms of multidegree
    ``(2, .., 2)``; a shared point makes the restriction map drop rank.
    """
    amb = c1.ambient
    deg = (2,) * amb.k
    full = sum(dot(deg, c.multidegree) + 1 for c in (c1, c2))
    return _restriction_rank(amb, deg, [c1, c2]) < full


def fiber_codim_oracle(cfg: ConfigMatrix, curve1: CurveParametrization, curve2: CurveParametrization) -> int:
    """Conditions for containing both curves, counted as ranks of restriction maps."""
    _require_relaxed(cfg)
    if curve1.ambient != cfg.ambient or curve2.ambient != cfg.ambient:
        raise ValueError("ambient mismatch")
    curves = [curve1] if curve1 == curve2 else [curve1, curve2]
    if len(curves) == 2 and not curves_meet(curve1, curve2):
        raise ValueError("the curves are disjoint")
    return sum(_restriction_rank(cfg.ambient, row, curves) for row in cfg.entries)


def standard_pair_representatives(ambient: AmbientSpace, kind1: str, kind2: str):
    """Standard representatives of a meeting pair, all through the base point.

    For an axis/diagonal pair this includes the second representative with
    the axis line along ``X[a][2]`` whenever ``n_a >= 2``.
    """
    a = _parse_kind(kind1, ambient)
    b = _parse_kind(kind2, ambient)
    if a is None and b is not None:
        a, b = b, a
    if a is None or a == b:
        raise ValueError(f"unsupported pair {kind1}/{kind2}")
    if b is not None:
        return [(coordinate_axis_curve(ambient, a), coordinate_axis_curve(ambient, b))]
    reps = [(coordinate_axis_curve(ambient, a), diagonal_curve(ambient))]
    if ambient.factors[a - 1] >= 2:
        reps.append((skew_axis_curve(ambient, a), diagonal_curve(ambient)))
    return reps


@dataclass
class IncidencePairReport:
    kind1: str
    kind2: str
    deg1: tuple
    deg2: tuple
    covered: bool
    regime: str
    dim_MY: int | None = None
    dim_pair_space: int | None = None
    reparam_correction: int = REPARAMETRIZATION
    fiber_codim_closed: int | None = None
    fiber_codim_oracle: int | None = None
    lhs: int | None = None
    rhs: int | None = None
    holds: bool | None = None
    margin: int | None = None
    note: str | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["deg1"] = list(self.deg1)
        out["deg2"] = list(self.deg2)
        return out


def _regime(cfg: ConfigMatrix) -> str:
    return "strict (all degrees positive)" if cfg.is_strict() else "relaxed (some degrees zero)"


def check_inequality(cfg: ConfigMatrix, kind1: str, kind2: str, oracle: bool = True) -> IncidencePairReport:
    _require_relaxed(cfg)
    amb = cfg.ambient
    d1 = kind_multidegree(amb, kind1)
    d2 = kind_multidegree(amb, kind2)
    closed = fiber_codim_closed(cfg, kind1, kind2)
    oracle_value = None
    if oracle:
        values = {fiber_codim_oracle(cfg, c1, c2) for c1, c2 in standard_pair_representatives(amb, kind1, kind2)}
        if len(values) != 1:
            raise ArithmeticError(f"representatives of {kind1}/{kind2} disagree: {sorted(values)}")
        oracle_value = values.pop()
    dim_my = dim_section_space(cfg)
    pair = dim_incident_pair_space(amb, d1, d2)
    lhs = pair - REPARAMETRIZATION + (dim_my - closed)
    rhs = dim_my
    return IncidencePairReport(
        kind1=kind1,
        kind2=kind2,
        deg1=d1,
        deg2=d2,
        covered=True,
        regime=_regime(cfg),
        dim_MY=dim_my,
        dim_pair_space=pair,
        fiber_codim_closed=closed,
        fiber_codim_oracle=oracle_value,
        lhs=lhs,
        rhs=rhs,
        holds=lhs < rhs,
        margin=rhs - lhs,
    )


def check_all_pairs(cfg: ConfigMatrix, oracle: bool = True) -> list[IncidencePairReport]:
    """Reports for every unordered pair of distinct degrees among ``e_1..e_k, e``."""
    _require_relaxed(cfg)
    kinds = curve_kinds(cfg.k)
    if cfg.k == 1:
        d = kind_multidegree(cfg.ambient, "axis1")
        return [
            IncidencePairReport(
                kind1="axis1",
                kind2="diagonal",
                deg1=d,
                deg2=d,
                covered=False,
                regime=_regime(cfg),
                note="not covered: both curves have degree (1); the disjointness count needs distinct degrees",
            )
        ]
    return [check_inequality(cfg, a, b, oracle) for a, b in combinations(kinds, 2)]

