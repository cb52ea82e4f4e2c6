"""Kernels of graded maps between free ``k[s, t]``-modules.

A :class:`GradedMapSpec` describes ``phi: (+)_j S e~_j -> (+)_i S e_i`` with
``phi(e~_j) = sum_i f_ji e_i``.  The degree-``l`` part of the kernel is the
null space of a block matrix of convolution (multiplication) matrices; its
dimensions as ``l`` varies form the Hilbert profile, which pins down the
splitting type of the kernel bundle on P^1.

Degree convention: a line bundle ``O(a)`` on the curve is the free module
generated in degree ``-a``.  A kernel ``O(-1) + O(-1)`` therefore has two
generators in degree 1 and profile ``0`` for ``l <= 0``, ``2l`` for ``l >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from conifold.exact import ExactMatrix, Field, random_scalar, rank_rows
from conifold.multiring import BinaryForm


class SplittingError(ValueError):
    """The profile matches no rank-2 bundle of degree -2."""


class WitnessNotFound(RuntimeError):
    """No draw reached the generic profile within the attempt budget."""


def degree_problems(target_degrees: Sequence[int], source_degrees: Sequence[int]) -> list[str]:
    problems = []
    m = len(target_degrees)
    if m < 1:
        problems.append("need at least one target generator")
    if len(source_degrees) != m + 2:
        problems.append(f"need m + 2 = {m + 2} source generators, got {len(source_degrees)}")
        return problems
    if sum(source_degrees) != sum(target_degrees) + 2:
        problems.append(
            f"sum of source degrees {sum(source_degrees)} != sum of target degrees + 2 "
            f"({sum(target_degrees) + 2})"
        )
    for j, a in enumerate(source_degrees):
        for i, b in enumerate(target_degrees):
            if a - b < 0:
                problems.append(f"d_{j + 1}{i + 1} = {a - b} is negative")
    return problems


@dataclass(frozen=True)
class GradedMapSpec:
    target_degrees: tuple[int, ...]
    source_degrees: tuple[int, ...]
    forms: tuple[tuple[BinaryForm, ...], ...]  # forms[j][i] = f_ji
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "target_degrees", tuple(self.target_degrees))
        object.__setattr__(self, "source_degrees", tuple(self.source_degrees))
        object.__setattr__(self, "forms", tuple(tuple(r) for r in self.forms))
        problems = degree_problems(self.target_degrees, self.source_degrees)
        if problems:
            raise ValueError("invalid graded map: " + "; ".join(problems))
        if len(self.forms) != self.n or any(len(r) != self.m for r in self.forms):
            raise ValueError("forms must be an (m + 2) x m array")
        for j, row in enumerate(self.forms):
            for i, f in enumerate(row):
                if f.degree != self.source_degrees[j] - self.target_degrees[i]:
                    raise ValueError(f"f_{j + 1}{i + 1} has degree {f.degree}, expected d_ji")

    @property
    def m(self) -> int:
        return len(self.target_degrees)

    @property
    def n(self) -> int:
        return len(self.source_degrees)

    def default_window(self) -> tuple[int, int]:
        return (-1, max(2, 1 + max(self.source_degrees)))

    def permuted(self, source_order: Sequence[int], target_order: Sequence[int]) -> GradedMapSpec:
        return GradedMapSpec(
            tuple(self.target_degrees[i] for i in target_order),
            tuple(self.source_degrees[j] for j in source_order),
            tuple(tuple(self.forms[j][i] for i in target_order) for j in source_order),
            self.field,
        )

    def swapped(self) -> GradedMapSpec:
        """Apply ``(s, t) -> (t, s)`` to every form."""
        return GradedMapSpec(
            self.target_degrees,
            self.source_degrees,
            tuple(tuple(f.swap() for f in row) for row in self.forms),
            self.field,
        )

    def to_json(self) -> dict:
        tj = self.field.to_json
        return {
            "target_degrees": list(self.target_degrees),
            "source_degrees": list(self.source_degrees),
            "forms": [[[tj(c) for c in f.coeffs] for f in row] for row in self.forms],
        }

    @classmethod
    def from_json(cls, data: dict, field: Field) -> GradedMapSpec:
        tgt = tuple(data["target_degrees"])
        src = tuple(data["source_degrees"])
        forms = tuple(
            tuple(
                BinaryForm(src[j] - tgt[i], tuple(field.convert(_parse_scalar(c)) for c in coeffs), field)
                for i, coeffs in enumerate(row)
            )
            for j, row in enumerate(data["forms"])
        )
        return cls(tgt, src, forms, field)


def _parse_scalar(c):
    if isinstance(c, str):
        from fractions import Fraction

        return Fraction(c)
    return c


def convolution_matrix(f: BinaryForm, cofactor_degree: int) -> ExactMatrix:
    """Matrix of ``g -> f * g`` from degree-``cofactor_degree`` forms.

    Both bases are ordered by increasing power of ``s``: ``t^D, t^(D-1) s, ...``.
    """
    if cofactor_degree < 0:
        raise ValueError("cofactor degree must be nonnegative")
    d = cofactor_degree
    rows = f.degree + d + 1
    zero = f.field.zero
    out = [[zero] * (d + 1) for _ in range(rows)]
    for c in range(d + 1):
        for k, a in enumerate(f.coeffs):
            out[c + k][c] = a
    return ExactMatrix.from_rows(out, f.field, cols=d + 1)


def _block_rows(spec: GradedMapSpec, l: int) -> tuple[list[list], int]:
    widths = [max(0, l - a + 1) for a in spec.source_degrees]
    heights = [max(0, l - b + 1) for b in spec.target_degrees]
    ncols = sum(widths)
    rows = []
    for i, h in enumerate(heights):
        block = [[0] * ncols for _ in range(h)]
        col0 = 0
        for j, w in enumerate(widths):
            coeffs = spec.forms[j][i].coeffs
            for c in range(w):
                for k, a in enumerate(coeffs):
                    if a:
                        block[c + k][col0 + c] = a
            col0 += w
        rows.extend(block)
    return rows, ncols


def assemble_block(spec: GradedMapSpec, l: int) -> ExactMatrix:
    """The block matrix whose null space is the degree-``l`` kernel.

    Column block ``j`` holds the coefficients of ``g_j`` (degree
    ``l - deg e~_j``, absent when negative); row block ``i`` the coefficients
    of ``sum_j f_ji g_j`` (degree ``l - deg e_i``).
    """
    rows, ncols = _block_rows(spec, l)
    return ExactMatrix(len(rows), ncols, tuple(x for r in rows for x in r), spec.field)


def block_shape(spec: GradedMapSpec, l: int) -> tuple[int, int]:
    cols = sum(max(0, l - a + 1) for a in spec.source_degrees)
    rows = sum(max(0, l - b + 1) for b in spec.target_degrees)
    return rows, cols


def kernel_dimension(spec: GradedMapSpec, l: int) -> int:
    rows, ncols = _block_rows(spec, l)
    if ncols == 0:
        return 0
    return ncols - rank_rows(rows, spec.field)


@dataclass(frozen=True)
class HilbertProfile:
    window: tuple[int, int]
    dims: dict

    def values(self) -> list[int]:
        lo, hi = self.window
        return [self.dims[l] for l in range(lo, hi + 1)]

    def to_json(self) -> list:
        return [[l, self.dims[l]] for l in range(self.window[0], self.window[1] + 1)]


def hilbert_profile(spec: GradedMapSpec, window: tuple[int, int] | None = None) -> HilbertProfile:
    lo, hi = window if window is not None else spec.default_window()
    if lo > hi:
        raise ValueError("empty window")
    return HilbertProfile((lo, hi), {l: kernel_dimension(spec, l) for l in range(lo, hi + 1)})


def generic_profile_value(l: int) -> int:
    return 2 * l if l >= 1 else 0


def is_generic_profile(profile: HilbertProfile) -> bool:
    return all(v == generic_profile_value(l) for l, v in profile.dims.items())


def split_profile(a: int, b: int, l: int) -> int:
    """``h^0`` of ``(O(a) + O(b))(l)`` on P^1."""
    return max(0, a + l + 1) + max(0, b + l + 1)


@dataclass(frozen=True, order=True)
class SplittingType:
    parts: tuple[int, int]

    def __str__(self):
        a, b = self.parts
        return f"O({a}) + O({b})"


def splitting_type(profile: HilbertProfile) -> SplittingType:
    """Infer ``{a, b}`` with ``a >= b``, ``a + b = -2`` from a kernel profile."""
    lo, hi = profile.window
    dims = profile.dims
    first = next((l for l in range(lo, hi + 1) if dims[l] > 0), None)
    if first is None:
        raise SplittingError("profile has no positive dimension in the window")
    if first - 1 < lo or first + 2 > hi:
        raise SplittingError(
            f"window {profile.window} must cover [{first - 1}, {first + 2}] around the first nonzero degree"
        )
    if dims[hi] - dims[hi - 1] != 2:
        raise SplittingError("profile does not grow with slope 2: kernel is not of rank 2")
    top = max(dims.values()) + (hi - lo) + 2
    for a in range(-1, top + 1):
        b = -2 - a
        if all(split_profile(a, b, l) == dims[l] for l in range(lo, hi + 1)):
            return SplittingType((a, b))
    raise SplittingError(
        f"profile {profile.values()} on {profile.window} matches no O(a) + O(b) with a + b = -2"
    )


def profile_for_splitting(spec: GradedMapSpec, window: tuple[int, int] | None = None) -> HilbertProfile:
    """Profile on ``window`` (default window if ``None``), widened downwards
    until it covers one degree below the first nonzero kernel degree."""
    lo, hi = window if window is not None else spec.default_window()
    hi = max(hi, lo + 3)
    profile = hilbert_profile(spec, (lo, hi))
    floor = min(spec.source_degrees)
    while lo > floor - 1 and profile.dims[lo] > 0:
        lo -= 1
        dims = dict(profile.dims)
        dims[lo] = kernel_dimension(spec, lo)
        profile = HilbertProfile((lo, hi), dims)
    first = next((l for l in range(lo, hi + 1) if profile.dims[l] > 0), None)
    if first is not None and first + 2 > hi:
        dims = dict(profile.dims)
        for l in range(hi + 1, first + 3):
            dims[l] = kernel_dimension(spec, l)
        profile = HilbertProfile((lo, first + 2), dims)
    return profile


def random_spec(target_degrees, source_degrees, field: Field, rng) -> GradedMapSpec:
    forms = tuple(
        tuple(
            BinaryForm(a - b, tuple(random_scalar(field, rng, 100) for _ in range(a - b + 1)), field)
            for b in target_degrees
        )
        for a in source_degrees
    )
    return GradedMapSpec(tuple(target_degrees), tuple(source_degrees), forms, field)


@dataclass(frozen=True)
class Witness:
    spec: GradedMapSpec
    profile: HilbertProfile
    attempts: int


def genericity_witness(
    target_degrees: Sequence[int],
    source_degrees: Sequence[int],
    field: Field,
    rng,
    max_attempts: int = 5,
) -> Witness:
    """Draw random maps until one has the generic profile on the default window."""
    problems = degree_problems(target_degrees, source_degrees)
    if problems:
        raise ValueError("degree data violate the hypotheses: " + "; ".join(problems))
    for attempt in range(1, max_attempts + 1):
        spec = random_spec(target_degrees, source_degrees, field, rng)
        profile = hilbert_profile(spec)
        if is_generic_profile(profile):
            return Witness(spec, profile, attempt)
    raise WitnessNotFound(
        f"no generic witness for degrees {tuple(target_degrees)} <- {tuple(source_degrees)} "
        f"in {max_attempts} attempts"
    )


def sample_lemma_degrees(
    rng, max_m: int = 4, max_degree: int = 6, max_source: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Random degree data for the kernel lemma.

    Returns ``(target_degrees, source_degrees)`` with ``1 <= m <= max_m``,
    ``0 <= d_ji <= max_degree`` and the degree-sum condition.  These are
    the lemma's hypotheses and nothing more.  ``max_source`` optionally caps
    every source degree; with ``max_source=1`` (which covers every map coming
    from a curve, whose source degrees are ``<= 0``) the generic profile is
    the expected one, while a source of degree ``>= 2`` forces a kernel
    element in degree ``<= 0``.
    """
    # Write src_j = top + u_j and tgt_i = top - w_i with top = max(tgt), so
    # d_ji = u_j + w_i and the sum condition fixes top = (2 - sum u - sum w) / 2.
    while True:
        m = rng.integer(1, max_m)
        u = [rng.integer(0, max_degree) for _ in range(m + 2)]
        w = [0] + [rng.integer(0, max_degree) for _ in range(m - 1)]
        if max(u) + max(w) > max_degree or (sum(u) + sum(w)) % 2:
            continue
        top = (2 - sum(u) - sum(w)) // 2
        src = tuple(top + x for x in u)
        if max_source is not None and max(src) > max_source:
            continue
        return tuple(top - x for x in w), src
