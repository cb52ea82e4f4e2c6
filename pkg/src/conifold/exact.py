"""Exact scalars and dense exact linear algebra.

Scalars are plain Python numbers owned by a field object: ``int`` residues in
``[0, p)`` for :class:`PrimeField`, :class:`fractions.Fraction` for
:class:`RationalField`.  Fields carry the arithmetic (``reduce``, ``inv``,
``convert``) so callers can write ``field.reduce(a * b + c)`` regardless of
mode.

Elimination over word-sized primes is dispatched to the compiled kernel in
``conifold._kernels`` when it is importable, otherwise to ``conifold._pure``.
Set ``CONIFOLD_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from conifold import _pure

if os.environ.get("CONIFOLD_PURE") == "1":
    _backend = _pure
else:
    try:
        from conifold import _kernels as _backend
    except ImportError:  # extension not built
        _backend = _pure

BACKEND = "compiled" if _backend is not _pure else "pure"

#: Default modulus, the Mersenne prime 2**31 - 1.
DEFAULT_PRIME = 2147483647

# (p - 1)**2 + p must fit in a signed 64-bit word for the fast kernels.
_FAST_PRIME_LIMIT = 3037000499


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


class PrimeField:
    """The prime field F_p for an odd prime ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or p < 3 or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p!r}")
        self.p = p

    zero = 0
    one = 1

    def reduce(self, x: int) -> int:
        return x % self.p

    def convert(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * self.inv(x.denominator % self.p) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(x, -1, self.p)

    def to_json(self, x: int) -> int:
        return x

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F_p", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The rationals, with exact :class:`~fractions.Fraction` arithmetic."""

    __slots__ = ()

    zero = Fraction(0)
    one = Fraction(1)

    def reduce(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    convert = reduce

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(x)

    def to_json(self, x: Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()

Field = PrimeField | RationalField


def random_scalar(field: Field, rng, height: int | None = None):
    """Draw a scalar from ``rng``.

    Uniform on F_p in prime-field mode.  In rational mode ``height`` bounds
    numerator and denominator and is mandatory.
    """
    if isinstance(field, PrimeField):
        return rng.below(field.p)
    if height is None or height < 1:
        raise ValueError("rational draws need a positive height bound")
    num = rng.integer(-height, height)
    den = rng.integer(1, height)
    return Fraction(num, den)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    field: Field

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field, cols: int | None = None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and ncols != cols:
            raise ValueError("column count mismatch")
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(field.convert(x) for r in rows for x in r)
        return cls(len(rows), ncols, entries, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field):
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def transpose(self) -> ExactMatrix:
        rows = self.to_rows()
        cols = [[rows[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix(self.cols, self.rows, tuple(x for r in cols for x in r), self.field)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        red = self.field.reduce
        return [
            red(sum(a * b for a, b in zip(row, vec))) for row in self.to_rows()
        ]


def _fast(field: Field) -> bool:
    return isinstance(field, PrimeField) and field.p < _FAST_PRIME_LIMIT


def _rref_generic(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    red = field.reduce
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        a[r] = [red(x * inv) for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [red(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_rows(rows: list[list], field: Field) -> int:
    """Rank of a matrix given as rows of already-reduced field elements."""
    if not rows or not rows[0]:
        return 0
    if _fast(field):
        return _backend.rank_modp(rows, field.p)
    return len(_rref_generic(rows, field)[1])


def rank(mat: ExactMatrix) -> int:
    """Rank of ``mat`` over its field, by exact elimination."""
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return rank_rows(mat.to_rows(), mat.field)


def rref(mat: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    if mat.rows == 0 or mat.cols == 0:
        return mat, []
    if _fast(mat.field):
        rows, pivots = _backend.rref_modp(mat.to_rows(), mat.field.p)
    else:
        rows, pivots = _rref_generic(mat.to_rows(), mat.field)
    return ExactMatrix(mat.rows, mat.cols, tuple(x for r in rows for x in r), mat.field), list(pivots)


def kernel_basis(mat: ExactMatrix) -> list[list]:
    """Basis of the right null space of ``mat``.

    One vector per free column of the reduced row echelon form, so the basis
    has ``mat.cols - rank(mat)`` elements.
    """
    field = mat.field
    if mat.cols == 0:
        return []
    if mat.rows == 0:
        return [
            [field.one if j == f else field.zero for j in range(mat.cols)]
            for f in range(mat.cols)
        ]
    reduced, pivots = rref(mat)
    rows = reduced.to_rows()
    pivot_set = set(pivots)
    basis = []
    for free in range(mat.cols):
        if free in pivot_set:
            continue
        v = [field.zero] * mat.cols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.reduce(-rows[r][free])
        basis.append(v)
    return basis
