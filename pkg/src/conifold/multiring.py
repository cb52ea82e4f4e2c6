"""Multihomogeneous polynomials on a product of projective spaces, binary
forms on P^1, and the truncated cohomology ring of the product.

Coordinates are ``X[j][r]`` with the factor index ``j`` counted from 1 (as in
``X_{10}, X_{11}, ...``) and ``r`` from 0.  Exponent tuples of a
:class:`MultiHomogPoly` are flat, one entry per coordinate, laid out factor by
factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from math import comb
from typing import Iterable, Mapping, Sequence

from conifold.exact import QQ, Field


@dataclass(frozen=True)
class AmbientSpace:
    """``P^{n_1} x ... x P^{n_k}``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if not self.factors:
            raise ValueError("ambient needs at least one factor")
        if any(n < 1 for n in self.factors):
            raise ValueError(f"factor dimensions must be >= 1, got {self.factors}")

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def dim(self) -> int:
        return sum(self.factors)

    @property
    def nvars(self) -> int:
        return self.dim + self.k

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.factors:
            out.append(acc)
            acc += n + 1
        return tuple(out)

    def index(self, j: int, r: int) -> int:
        """Flat index of coordinate ``X[j][r]`` (``j`` from 1)."""
        if not 1 <= j <= self.k or not 0 <= r <= self.factors[j - 1]:
            raise IndexError(f"no coordinate X[{j}][{r}] on {self}")
        return self.offsets[j - 1] + r

    def coordinate(self, idx: int) -> tuple[int, int]:
        for j, (off, n) in enumerate(zip(self.offsets, self.factors), start=1):
            if off <= idx <= off + n:
                return j, idx - off
        raise IndexError(idx)

    def factor_of(self, idx: int) -> int:
        return self.coordinate(idx)[0]


def unit(k: int, i: int) -> tuple[int, ...]:
    """The multidegree ``e_i`` (``i`` from 1)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def ones(k: int) -> tuple[int, ...]:
    return (1,) * k


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------- univariate
# Dense coefficient lists, lowest degree first, trailing zeros trimmed.


def poly_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence, b: Sequence, field: Field) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim([field.reduce(c) for c in out])


def poly_add(a: Sequence, b: Sequence, field: Field) -> list:
    n = max(len(a), len(b))
    out = [
        field.reduce((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0))
        for i in range(n)
    ]
    return poly_trim(out)


def poly_neg(a: Sequence, field: Field) -> list:
    return [field.reduce(-x) for x in a]


def poly_rem(a: Sequence, b: Sequence, field: Field) -> list:
    a = poly_trim([field.reduce(x) for x in a])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = field.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = field.reduce(a[-1] * inv_lead)
        for i, y in enumerate(b):
            a[shift + i] = field.reduce(a[shift + i] - f * y)
        poly_trim(a)
    return a


def poly_gcd(a: Sequence, b: Sequence, field: Field) -> list:
    """Monic gcd (the empty list when both inputs are zero)."""
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    while b:
        a, b = b, poly_rem(a, b, field)
    if not a:
        return []
    inv = field.inv(a[-1])
    return [field.reduce(x * inv) for x in a]


# -------------------------------------------------------------- binary forms


@dataclass(frozen=True)
class BinaryForm:
    """A binary form of declared degree; ``coeffs[k]`` multiplies ``s^k t^(d-k)``."""

    degree: int
    coeffs: tuple
    field: Field = dc_field(default=QQ, compare=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("binary form degree must be >= 0")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients"
            )
        object.__setattr__(
            self, "coeffs", tuple(self.field.convert(c) for c in self.coeffs)
        )

    @classmethod
    def zero(cls, degree: int, field: Field = QQ) -> BinaryForm:
        return cls(degree, (0,) * (degree + 1), field)

    @classmethod
    def monomial(cls, s_power: int, t_power: int, coeff=1, field: Field = QQ) -> BinaryForm:
        d = s_power + t_power
        c = [0] * (d + 1)
        c[s_power] = coeff
        return cls(d, tuple(c), field)

    @classmethod
    def constant(cls, value=1, field: Field = QQ) -> BinaryForm:
        return cls(0, (value,), field)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def over(self, field: Field) -> BinaryForm:
        return BinaryForm(self.degree, self.coeffs, field)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if other.degree != self.degree:
            raise ValueError("adding binary forms of different degrees")
        red = self.field.reduce
        return BinaryForm(
            self.degree, tuple(red(a + b) for a, b in zip(self.coeffs, other.coeffs)), self.field
        )

    def __neg__(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(self.field.reduce(-a) for a in self.coeffs), self.field)

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            c = self.field.convert(other)
            return BinaryForm(
                self.degree, tuple(self.field.reduce(a * c) for a in self.coeffs), self.field
            )
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        red = self.field.reduce
        return BinaryForm(len(out) - 1, tuple(red(c) for c in out), self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BinaryForm:
        result = BinaryForm.constant(1, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def swap(self) -> BinaryForm:
        """Exchange ``s`` and ``t``."""
        return BinaryForm(self.degree, tuple(reversed(self.coeffs)), self.field)

    def dehomogenize(self) -> list:
        """Coefficients of ``F(x, 1)`` in ``x = s/t``, trimmed."""
        return poly_trim(list(self.coeffs))

    def vanishes_at_infinity(self) -> bool:
        """True when ``F(1, 0) = 0``, i.e. ``t`` divides ``F``."""
        return self.coeffs[-1] == 0

    def __str__(self):
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                part
                for part in (
                    "s" if k == 1 else f"s^{k}" if k else "",
                    "t" if d - k == 1 else f"t^{d - k}" if d - k else "",
                )
                if part
            )
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms) if terms else "0"


def forms_have_common_root(forms: Iterable[BinaryForm]) -> bool:
    """Whether the forms share a zero on P^1 (zero forms are ignored).

    A common root is either a common factor of the dehomogenized polynomials
    or the point ``t = 0`` where every form vanishes.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return True
    field = forms[0].field
    if all(f.vanishes_at_infinity() for f in forms):
        return True
    g: list = []
    for f in forms:
        g = poly_gcd(g, f.dehomogenize(), field)
        if len(g) == 1:
            return False
    return len(g) > 1


# ------------------------------------------------------- multihomogeneous ring


@dataclass(frozen=True, eq=False)
class MultiHomogPoly:
    ambient: AmbientSpace
    multidegree: tuple[int, ...]
    terms: Mapping[tuple[int, ...], object]
    field: Field = QQ

    def __post_init__(self):
        amb = self.ambient
        object.__setattr__(self, "multidegree", tuple(self.multidegree))
        if len(self.multidegree) != amb.k:
            raise ValueError("multidegree length must equal the number of factors")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            c = self.field.convert(c)
            if c == 0:
                continue
            if len(exps) != amb.nvars:
                raise ValueError("exponent tuple has wrong length")
            for j, (off, n) in enumerate(zip(amb.offsets, amb.factors)):
                if sum(exps[off : off + n + 1]) != self.multidegree[j]:
                    raise ValueError(
                        f"term {exps} is not of degree {self.multidegree[j]} in factor {j + 1}"
                    )
            clean[exps] = c
        object.__setattr__(self, "terms", clean)

    # constructors
    @classmethod
    def zero(cls, ambient: AmbientSpace, multidegree, field: Field = QQ):
        return cls(ambient, tuple(multidegree), {}, field)

    @classmethod
    def one(cls, ambient: AmbientSpace, field: Field = QQ):
        return cls(ambient, (0,) * ambient.k, {(0,) * ambient.nvars: 1}, field)

    @classmethod
    def variable(cls, ambient: AmbientSpace, j: int, r: int, field: Field = QQ):
        exps = [0] * ambient.nvars
        exps[ambient.index(j, r)] = 1
        return cls(ambient, unit(ambient.k, j), {tuple(exps): 1}, field)

    @classmethod
    def monomial(cls, ambient: AmbientSpace, exps: Sequence[int], coeff=1, field: Field = QQ):
        deg = tuple(
            sum(exps[off : off + n + 1]) for off, n in zip(ambient.offsets, ambient.factors)
        )
        return cls(ambient, deg, {tuple(exps): coeff}, field)

    def over(self, field: Field) -> MultiHomogPoly:
        return MultiHomogPoly(self.ambient, self.multidegree, dict(self.terms), field)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: MultiHomogPoly):
        if other.ambient != self.ambient:
            raise ValueError("ambient mismatch")
        if other.field != self.field:
            raise ValueError("field mismatch")

    def __eq__(self, other):
        if not isinstance(other, MultiHomogPoly):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.multidegree == other.multidegree
            and self.terms == other.terms
        )

    def __add__(self, other: MultiHomogPoly) -> MultiHomogPoly:
        self._check(other)
        if other.multidegree != self.multidegree:
            raise ValueError("adding polynomials of different multidegrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = self.field.reduce(out.get(e, 0) + c)
        return MultiHomogPoly(self.ambient, self.multidegree, out, self.field)

    def __neg__(self) -> MultiHomogPoly:
        red = self.field.reduce
        return MultiHomogPoly(
            self.ambient, self.multidegree, {e: red(-c) for e, c in self.terms.items()}, self.field
        )

    def __sub__(self, other: MultiHomogPoly) -> MultiHomogPoly:
        return self + (-other)

    def scale(self, c) -> MultiHomogPoly:
        c = self.field.convert(c)
        red = self.field.reduce
        return MultiHomogPoly(
            self.ambient, self.multidegree, {e: red(v * c) for e, v in self.terms.items()}, self.field
        )

    def __mul__(self, other):
        if not isinstance(other, MultiHomogPoly):
            return self.scale(other)
        return mh_multiply(self, other)

    def __pow__(self, e: int) -> MultiHomogPoly:
        if e < 0:
            raise ValueError("negative exponent")
        out = MultiHomogPoly.one(self.ambient, self.field)
        for _ in range(e):
            out = out * self
        return out

    def derivative(self, idx: int) -> MultiHomogPoly:
        """Partial derivative with respect to the flat coordinate ``idx``."""
        j = self.ambient.factor_of(idx)
        deg = list(self.multidegree)
        deg[j - 1] -= 1
        out = {}
        red = self.field.reduce
        for e, c in self.terms.items():
            if e[idx]:
                e2 = list(e)
                e2[idx] -= 1
                out[tuple(e2)] = red(c * e[idx])
        if deg[j - 1] < 0:
            return MultiHomogPoly(self.ambient, tuple(max(0, d) for d in deg), {}, self.field)
        return MultiHomogPoly(self.ambient, tuple(deg), out, self.field)

    def to_text(self) -> str:
        """Canonical text form: terms ``coef * X[j][r]^a`` sorted by exponent tuple."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            factors = []
            for idx, a in enumerate(e):
                if a:
                    j, r = self.ambient.coordinate(idx)
                    factors.append(f"X[{j}][{r}]" + (f"^{a}" if a > 1 else ""))
            c = self.field.to_json(self.terms[e])
            parts.append(" * ".join([str(c), *factors]))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()


def mh_multiply(a: MultiHomogPoly, b: MultiHomogPoly) -> MultiHomogPoly:
    a._check(b)
    out: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    red = a.field.reduce
    return MultiHomogPoly(
        a.ambient,
        tuple(x + y for x, y in zip(a.multidegree, b.multidegree)),
        {e: red(c) for e, c in out.items()},
        a.field,
    )


def monomials(ambient: AmbientSpace, multidegree: Sequence[int], allowed: set[int] | None = None):
    """Exponent tuples of every monomial of the given multidegree.

    ``allowed`` restricts the coordinates that may appear with positive
    exponent (flat indices); ``None`` allows all of them.
    """
    blocks = []
    for j, (off, n) in enumerate(zip(ambient.offsets, ambient.factors)):
        idxs = [off + r for r in range(n + 1) if allowed is None or off + r in allowed]
        blocks.append(list(_compositions(multidegree[j], idxs)))
    for combo in iproduct(*blocks):
        e = [0] * ambient.nvars
        for part in combo:
            for idx, a in part:
                e[idx] = a
        yield tuple(e)


def _compositions(total: int, idxs: list[int]):
    if total == 0:
        yield ()
        return
    if not idxs:
        return
    head, rest = idxs[0], idxs[1:]
    for a in range(total, -1, -1):
        if not rest and a != total:
            continue
        for tail in _compositions(total - a, rest):
            yield ((head, a),) + tail if a else tail


def count_monomials(ambient: AmbientSpace, multidegree: Sequence[int]) -> int:
    out = 1
    for n, d in zip(ambient.factors, multidegree):
        out *= comb(n + d, d)
    return out


def substitute(f: MultiHomogPoly, curve) -> BinaryForm:
    """Restrict ``f`` to a parametrized curve, giving a form in ``(s, t)``.

    ``curve`` is a :class:`conifold.curves.CurveParametrization`; the result
    has degree ``sum_j deg_j(curve) * deg_j(f)`` even when it is zero.
    """
    if curve.ambient != f.ambient:
        raise ValueError("ambient mismatch")
    field = f.field
    degree = dot(curve.multidegree, f.multidegree)
    coords = [g.over(field) for block in curve.forms for g in block]
    acc = [0] * (degree + 1)
    powers: dict = {}
    for e, c in f.terms.items():
        term = BinaryForm.constant(c, field)
        for idx, a in enumerate(e):
            if a:
                key = (idx, a)
                p = powers.get(key)
                if p is None:
                    p = powers[key] = coords[idx] ** a
                term = term * p
                if term.is_zero():
                    break
        if term.is_zero():
            continue
        for k, v in enumerate(term.coeffs):
            acc[k] += v
    return BinaryForm(degree, tuple(field.reduce(v) for v in acc), field)


# --------------------------------------------------------- cohomology classes


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    """Element of ``Z[e_1..e_k] / (e_j^(n_j+1))``."""

    ambient: AmbientSpace
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != self.ambient.k:
                raise ValueError("exponent tuple length must equal the number of factors")
            if c and all(a <= n for a, n in zip(e, self.ambient.factors)):
                clean[e] = clean.get(e, 0) + int(c)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def one(cls, ambient: AmbientSpace) -> CohomologyClass:
        return cls(ambient, {(0,) * ambient.k: 1})

    @classmethod
    def generator(cls, ambient: AmbientSpace, j: int) -> CohomologyClass:
        return cls(ambient, {unit(ambient.k, j): 1})

    @classmethod
    def linear(cls, ambient: AmbientSpace, coeffs: Sequence[int]) -> CohomologyClass:
        return cls(ambient, {unit(ambient.k, j + 1): c for j, c in enumerate(coeffs)})

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __add__(self, other: CohomologyClass) -> CohomologyClass:
        if other.ambient != self.ambient:
            raise ValueError("ambient mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return CohomologyClass(self.ambient, out)

    def __neg__(self) -> CohomologyClass:
        return CohomologyClass(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            return coh_multiply(self, other)
        return CohomologyClass(self.ambient, {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CohomologyClass:
        out = CohomologyClass.one(self.ambient)
        for _ in range(e):
            out = out * self
        return out

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ambient.k, 0)

    def graded_part(self, degree: int) -> CohomologyClass:
        return CohomologyClass(
            self.ambient, {e: c for e, c in self.terms.items() if sum(e) == degree}
        )


def coh_multiply(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    out: dict = {}
    caps = a.ambient.factors
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if all(x <= n for x, n in zip(e, caps)):
                out[e] = out.get(e, 0) + ca * cb
    return CohomologyClass(a.ambient, out)


def coh_integrate(c: CohomologyClass) -> int:
    """Degree of the top-dimensional part, i.e. the coefficient of ``prod e_j^(n_j)``."""
    return c.terms.get(c.ambient.factors, 0)


def coh_inverse(c: CohomologyClass) -> CohomologyClass:
    """Multiplicative inverse of a class with constant term 1."""
    if c.constant_term() != 1:
        raise ValueError("only classes with constant term 1 are invertible here")
    nil = c - CohomologyClass.one(c.ambient)
    result = CohomologyClass.one(c.ambient)
    power = CohomologyClass.one(c.ambient)
    for r in range(1, c.ambient.dim + 1):
        power = power * nil
        if not power.terms:
            break
        result = result + (power if r % 2 == 0 else -power)
    return result
