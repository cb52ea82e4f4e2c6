"""The standard rational curves, their defining sections, and the
normal-bundle check.

For a configuration on ``P^{n_1} x ... x P^{n_k}`` there are ``k + 1``
standard curves: ``axis<i>`` (a line in factor ``i``, a fixed point elsewhere)
and ``diagonal`` (the same line in every factor).  Each is cut out by
``m + 2`` sections ``s~_j`` of line bundles ``L~_j``.  A threefold through the
curve is built as ``s_i = sum_j s~_j * s_ji`` with ``s_ji`` drawn from spaces
``V_ji`` whose restrictions to the curve give every binary form of degree
``d_ji``; the normal bundle is then the kernel of the graded map ``psi`` with
entries ``s_ji|_C``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from conifold.config import ConfigMatrix, validate
from conifold.exact import Field, PrimeField, random_scalar, rank_rows
from conifold.graded import (
    GradedMapSpec,
    HilbertProfile,
    SplittingError,
    SplittingType,
    WitnessNotFound,
    profile_for_splitting,
    splitting_type,
)
from conifold.multiring import (
    AmbientSpace,
    BinaryForm,
    MultiHomogPoly,
    dot,
    forms_have_common_root,
    poly_add,
    poly_gcd,
    poly_mul,
    poly_neg,
    substitute,
    unit,
)


class CurveMismatch(ValueError):
    pass


# ------------------------------------------------------------------- curves


@dataclass(frozen=True)
class CurveParametrization:
    """A map ``P^1 -> X`` given per factor by ``n_j + 1`` binary forms."""

    ambient: AmbientSpace
    forms: tuple[tuple[BinaryForm, ...], ...]

    def __post_init__(self):
        amb = self.ambient
        if len(self.forms) != amb.k:
            raise ValueError("need one block of forms per factor")
        for j, (block, n) in enumerate(zip(self.forms, amb.factors), start=1):
            if len(block) != n + 1:
                raise ValueError(f"factor {j} needs {n + 1} forms")
            if len({f.degree for f in block}) != 1:
                raise ValueError(f"forms of factor {j} must share a degree")
            if forms_have_common_root(block):
                raise ValueError(f"forms of factor {j} have a common zero")

    @property
    def multidegree(self) -> tuple[int, ...]:
        return tuple(block[0].degree for block in self.forms)

    def zero_coordinates(self) -> set[int]:
        """Flat indices of coordinates that vanish identically on the curve."""
        out, idx = set(), 0
        for block in self.forms:
            for f in block:
                if f.is_zero():
                    out.add(idx)
                idx += 1
        return out

    def __str__(self):
        return "(" + "; ".join(",".join(str(f) for f in b) for b in self.forms) + ")"


_S = BinaryForm.monomial(1, 0)
_T = BinaryForm.monomial(0, 1)
_ONE = BinaryForm.constant(1)


def _line_block(n: int) -> tuple[BinaryForm, ...]:
    return (_S, _T) + (BinaryForm.zero(1),) * (n - 1)


def _point_block(n: int) -> tuple[BinaryForm, ...]:
    return (_ONE,) + (BinaryForm.zero(0),) * n


def coordinate_axis_curve(ambient: AmbientSpace, i: int) -> CurveParametrization:
    """``(1,0,..; ..; s,t,0,..; ..; 1,0,..)`` with the line in factor ``i``."""
    if not 1 <= i <= ambient.k:
        raise IndexError(f"factor index {i} out of range 1..{ambient.k}")
    return CurveParametrization(
        ambient,
        tuple(
            _line_block(n) if j == i else _point_block(n)
            for j, n in enumerate(ambient.factors, start=1)
        ),
    )


def skew_axis_curve(ambient: AmbientSpace, i: int) -> CurveParametrization:
    """Axis curve through the base point with tangent along ``X[i][2]``:
    ``(s, 0, t, 0, ..)`` in factor ``i``.  Needs ``n_i >= 2``."""
    if not 1 <= i <= ambient.k or ambient.factors[i - 1] < 2:
        raise IndexError(f"factor {i} cannot carry the skew line")
    n = ambient.factors[i - 1]
    block = (_S, BinaryForm.zero(1), _T) + (BinaryForm.zero(1),) * (n - 2)
    return CurveParametrization(
        ambient,
        tuple(
            block if j == i else _point_block(nj)
            for j, nj in enumerate(ambient.factors, start=1)
        ),
    )


def diagonal_curve(ambient: AmbientSpace) -> CurveParametrization:
    return CurveParametrization(ambient, tuple(_line_block(n) for n in ambient.factors))


def curve_kinds(k: int) -> list[str]:
    return [f"axis{i}" for i in range(1, k + 1)] + ["diagonal"]


def _parse_kind(kind: str, ambient: AmbientSpace) -> int | None:
    if kind == "diagonal":
        return None
    if kind.startswith("axis"):
        try:
            i = int(kind[4:])
        except ValueError:
            pass
        else:
            if 1 <= i <= ambient.k:
                return i
    raise CurveMismatch(f"unknown curve kind {kind!r} for ambient {ambient.factors}")


def make_curve(ambient: AmbientSpace, kind: str) -> CurveParametrization:
    i = _parse_kind(kind, ambient)
    return diagonal_curve(ambient) if i is None else coordinate_axis_curve(ambient, i)


def kind_multidegree(ambient: AmbientSpace, kind: str) -> tuple[int, ...]:
    i = _parse_kind(kind, ambient)
    return (1,) * ambient.k if i is None else unit(ambient.k, i)


# ---------------------------------------------------------- defining data


@dataclass(frozen=True)
class CurveDefiningData:
    """``m + 2`` pairs ``(multidegree of L~_j, s~_j)``."""

    items: tuple[tuple[tuple[int, ...], MultiHomogPoly], ...]

    @property
    def ltilde(self) -> list[tuple[int, ...]]:
        return [d for d, _ in self.items]

    @property
    def sections(self) -> list[MultiHomogPoly]:
        return [s for _, s in self.items]

    def __len__(self):
        return len(self.items)


def defining_data(ambient: AmbientSpace, kind: str, field: Field | None = None) -> CurveDefiningData:
    from conifold.exact import QQ

    field = field or QQ
    i = _parse_kind(kind, ambient)
    k = ambient.k
    X = lambda j, r: MultiHomogPoly.variable(ambient, j, r, field)  # noqa: E731
    items = []
    if i is not None:
        for j, n in enumerate(ambient.factors, start=1):
            first = 2 if j == i else 1
            items.extend((unit(k, j), X(j, r)) for r in range(first, n + 1))
    else:
        for j in range(2, k + 1):
            bil = X(1, 0) * X(j, 1) - X(1, 1) * X(j, 0)
            items.append((tuple(a + b for a, b in zip(unit(k, 1), unit(k, j))), bil))
        for j, n in enumerate(ambient.factors, start=1):
            items.extend((unit(k, j), X(j, r)) for r in range(2, n + 1))
    data = CurveDefiningData(tuple(items))
    if len(data) != ambient.dim - 1:
        raise AssertionError("defining data must have m + 2 sections")
    return data


# ---------------------------------------------------------- section plans


@dataclass(frozen=True)
class SectionPlan:
    config: ConfigMatrix
    kind: str
    curve: CurveParametrization
    defining: CurveDefiningData
    vji: tuple[tuple[tuple[MultiHomogPoly, ...], ...], ...]  # vji[j][i] = basis of V_ji
    field: Field

    @property
    def m(self) -> int:
        return self.config.m

    def restricted_degree(self, j: int, i: int) -> int:
        deg = self.curve.multidegree
        return dot(self.config.entries[i], deg) - dot(self.defining.ltilde[j], deg)


def _vji_basis(ambient, row, ltilde, curve_degree, field) -> tuple[MultiHomogPoly, ...]:
    """Monomials of multidegree ``row - ltilde`` restricting to ``s^a t^(d-a)``.

    In factors where the curve is a line the monomial is
    ``X[q][0]^(a_q) X[q][1]^(r_q - a_q)``; elsewhere it is ``X[q][0]^(r_q)``.
    The ``s``-power ``a`` is spread greedily over the line factors.
    """
    need = [r - l for r, l in zip(row, ltilde)]
    if any(x < 0 for x in need):
        raise CurveMismatch(f"L_i (x) L~_j^-1 has negative degree {need}")
    d = dot(need, curve_degree)
    basis = []
    for a in range(d + 1):
        exps = [0] * ambient.nvars
        left = a
        for q, (r, c) in enumerate(zip(need, curve_degree), start=1):
            if c == 0:
                exps[ambient.index(q, 0)] = r
            else:
                take = min(r, left)
                left -= take
                exps[ambient.index(q, 0)] = take
                exps[ambient.index(q, 1)] = r - take
        basis.append(MultiHomogPoly.monomial(ambient, exps, 1, field))
    return tuple(basis)


def restriction_rank(basis: Sequence[MultiHomogPoly], curve: CurveParametrization, field: Field) -> int:
    rows = [list(substitute(b, curve).coeffs) for b in basis]
    return rank_rows(rows, field)


def section_plan(cfg: ConfigMatrix, kind: str, field: Field | None = None) -> SectionPlan:
    field = field or PrimeField()
    problems = validate(cfg, strict=True)
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    curve = make_curve(cfg.ambient, kind)
    defining = defining_data(cfg.ambient, kind, field)
    deg = curve.multidegree
    vji = tuple(
        tuple(_vji_basis(cfg.ambient, row, lt, deg, field) for row in cfg.entries)
        for lt in defining.ltilde
    )
    plan = SectionPlan(cfg, kind, curve, defining, vji, field)
    for j, row in enumerate(vji):
        for i, basis in enumerate(row):
            d = plan.restricted_degree(j, i)
            if restriction_rank(basis, curve, field) != d + 1:
                raise ArithmeticError(f"restriction of V_{j + 1}{i + 1} is not onto degree-{d} forms")
    return plan


# ----------------------------------------------------------------- drawing


@dataclass(frozen=True)
class SectionDraw:
    coefficients: tuple[tuple[tuple, ...], ...]  # coefficients[j][i] over the V_ji basis
    choices: tuple[tuple[MultiHomogPoly, ...], ...]  # s_ji
    sections: tuple[MultiHomogPoly, ...]  # s_i


def combine(plan: SectionPlan, coefficients) -> SectionDraw:
    field = plan.field
    amb = plan.config.ambient
    choices = []
    for j, row in enumerate(plan.vji):
        out_row = []
        for i, basis in enumerate(row):
            deg = tuple(r - l for r, l in zip(plan.config.entries[i], plan.defining.ltilde[j]))
            acc = MultiHomogPoly.zero(amb, deg, field)
            for b, c in zip(basis, coefficients[j][i]):
                if c:
                    acc = acc + b.scale(c)
            out_row.append(acc)
        choices.append(tuple(out_row))
    sections = []
    for i, row in enumerate(plan.config.entries):
        acc = MultiHomogPoly.zero(amb, row, field)
        for j, st in enumerate(plan.defining.sections):
            acc = acc + st * choices[j][i]
        sections.append(acc)
    coeffs = tuple(tuple(tuple(c) for c in row) for row in coefficients)
    return SectionDraw(coeffs, tuple(choices), tuple(sections))


def draw_sections(plan: SectionPlan, rng) -> SectionDraw:
    coefficients = [
        [[random_scalar(plan.field, rng, 100) for _ in basis] for basis in row]
        for row in plan.vji
    ]
    return combine(plan, coefficients)


def psi_spec(plan: SectionPlan, draw: SectionDraw) -> GradedMapSpec:
    """The map ``(+) L~_j|_C -> (+) L_i|_C`` with entries ``s_ji|_C``."""
    deg = plan.curve.multidegree
    src = tuple(-dot(lt, deg) for lt in plan.defining.ltilde)
    tgt = tuple(-dot(row, deg) for row in plan.config.entries)
    forms = []
    for j, row in enumerate(draw.choices):
        out = []
        for i, s in enumerate(row):
            f = substitute(s, plan.curve)
            if f.degree != src[j] - tgt[i]:
                raise ArithmeticError(f"s_{j + 1}{i + 1}|_C has degree {f.degree}, expected {src[j] - tgt[i]}")
            out.append(f)
        forms.append(tuple(out))
    return GradedMapSpec(tgt, src, tuple(forms), plan.field)


# -------------------------------------------------------------- smoothness


def _det(matrix: list[list[list]], field: Field) -> list:
    """Determinant of a square matrix of univariate polynomials (Laplace)."""
    n = len(matrix)
    memo: dict = {}

    def minor(row: int, cols: tuple[int, ...]) -> list:
        if row == n:
            return [field.one]
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc: list = []
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            if not sub:
                continue
            term = poly_mul(entry, sub, field)
            acc = poly_add(acc, term if pos % 2 == 0 else poly_neg(term, field), field)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def smoothness_along_curve(sections: Sequence[MultiHomogPoly], curve: CurveParametrization) -> bool:
    """Whether the sections have independent differentials at every point of the curve.

    The homogeneous Jacobian restricted to the curve has the same rank as the
    affine one (its rows annihilate the Euler vectors on the zero locus).  The
    rank is full everywhere exactly when the maximal minors, as binary forms,
    have no common zero; that is decided by a gcd in ``x = s/t`` together with
    a check at ``t = 0``.
    """
    if not sections:
        raise ValueError("no sections given")
    field = sections[0].field
    for idx, s in enumerate(sections, start=1):
        if s.is_zero():
            raise ValueError(f"section {idx} is identically zero")
        if not substitute(s, curve).is_zero():
            raise ValueError(f"section {idx} does not vanish on the curve")
    amb = curve.ambient
    m = len(sections)
    cdeg = curve.multidegree
    row_deg = [dot(s.multidegree, cdeg) for s in sections]
    col_deg = [cdeg[amb.factor_of(v) - 1] for v in range(amb.nvars)]
    jac = []
    for s in sections:
        row = []
        for v in range(amb.nvars):
            d = s.derivative(v)
            row.append(substitute(d, curve).dehomogenize() if not d.is_zero() else [])
        jac.append(row)
    live = [v for v in range(amb.nvars) if any(jac[i][v] for i in range(m))]
    if len(live) < m:
        return False
    g: list = []
    finite_ok = False
    infinity_ok = False
    for cols in combinations(live, m):
        sub = [[jac[i][c] for c in cols] for i in range(m)]
        det = _det(sub, field)
        if not det:
            continue
        degree = sum(row_deg) - sum(col_deg[c] for c in cols)
        if len(det) - 1 == degree:
            infinity_ok = True
        if not finite_ok:
            g = poly_gcd(g, det, field)
            finite_ok = len(g) == 1
        if finite_ok and infinity_ok:
            return True
    return False


# ----------------------------------------------------------------- verdict


@dataclass
class NormalBundleVerdict:
    kind: str
    multidegree: tuple[int, ...]
    attempts: int
    smooth: bool
    profile: HilbertProfile | None
    splitting: SplittingType | None
    passed: bool
    witness: SectionDraw | None = dc_field(default=None, repr=False)
    spec: GradedMapSpec | None = dc_field(default=None, repr=False)
    error: str | None = None
    field: Field | None = dc_field(default=None, repr=False)

    def to_json(self) -> dict:
        tj = self.field.to_json if self.field is not None else (lambda x: x)
        return {
            "curve_kind": self.kind,
            "multidegree": list(self.multidegree),
            "attempts": self.attempts,
            "smooth_along_curve": self.smooth,
            "hilbert_profile": self.profile.to_json() if self.profile else None,
            "splitting_type": list(self.splitting.parts) if self.splitting else None,
            "passed": self.passed,
            "error": self.error,
            "witness": None
            if self.witness is None
            else {
                "vji_coefficients": [
                    [[tj(c) for c in cell] for cell in row] for row in self.witness.coefficients
                ],
                "psi": self.spec.to_json() if self.spec is not None else None,
            },
        }


TARGET = SplittingType((-1, -1))


class AttemptsExhausted(WitnessNotFound):
    def __init__(self, verdict: NormalBundleVerdict):
        super().__init__(
            f"{verdict.kind}: no (-1,-1) witness in {verdict.attempts} attempts ({verdict.error})"
        )
        self.verdict = verdict


def evaluate_draw(plan: SectionPlan, draw: SectionDraw, attempts: int = 1, window=None) -> NormalBundleVerdict:
    """Run smoothness, the graded kernel and the splitting type on one draw."""
    base = dict(
        kind=plan.kind,
        multidegree=plan.curve.multidegree,
        attempts=attempts,
        witness=draw,
        field=plan.field,
    )
    try:
        smooth = smoothness_along_curve(draw.sections, plan.curve)
    except ValueError as exc:
        return NormalBundleVerdict(smooth=False, profile=None, splitting=None, passed=False, error=str(exc), **base)
    spec = psi_spec(plan, draw)
    profile = profile_for_splitting(spec, window)
    try:
        split = splitting_type(profile)
    except SplittingError as exc:
        return NormalBundleVerdict(
            smooth=smooth, profile=profile, splitting=None, passed=False, spec=spec, error=str(exc), **base
        )
    return NormalBundleVerdict(
        smooth=smooth,
        profile=profile,
        splitting=split,
        passed=smooth and split == TARGET,
        spec=spec,
        error=None if smooth else "sections are singular somewhere on the curve",
        **base,
    )


def verify_normal_bundle(cfg: ConfigMatrix, kind: str, rng, max_attempts: int = 5,
                         field: Field | None = None, window=None) -> NormalBundleVerdict:
    """Search for a draw whose threefold is smooth along the curve with normal
    bundle ``O(-1) + O(-1)``.

    Raises :class:`AttemptsExhausted` (carrying the last verdict) when no
    draw passes.
    """
    plan = section_plan(cfg, kind, field)
    verdict = None
    for attempt in range(1, max_attempts + 1):
        draw = draw_sections(plan, rng)
        verdict = evaluate_draw(plan, draw, attempt, window)
        if verdict.passed:
            return verdict
    raise AttemptsExhausted(verdict)
