"""Configuration matrices of complete intersection Calabi-Yau threefolds.

A configuration is an ambient ``P^{n_1} x ... x P^{n_k}`` and an ``m x k``
integer matrix whose row ``i`` is the multidegree of the ``i``-th defining
line bundle.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from itertools import product as iproduct

from conifold.multiring import (
    AmbientSpace,
    CohomologyClass,
    coh_integrate,
    coh_inverse,
)


@dataclass(frozen=True)
class ConfigMatrix:
    ambient: AmbientSpace
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries)
        )

    @classmethod
    def of(cls, factors, rows) -> ConfigMatrix:
        return cls(AmbientSpace(tuple(factors)), tuple(tuple(r) for r in rows))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return self.ambient.k

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def is_strict(self) -> bool:
        return all(x >= 1 for row in self.entries for x in row)

    def to_text(self) -> str:
        amb = ",".join(str(n) for n in self.ambient.factors)
        rows = ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.entries)
        return f"ambient = [{amb}]\nD = [{rows}]\n"

    def to_json(self) -> dict:
        return {"ambient": list(self.ambient.factors), "D": [list(r) for r in self.entries]}

    def __str__(self):
        return f"{list(self.ambient.factors)} {[list(r) for r in self.entries]}"


def validate(cfg: ConfigMatrix, strict: bool = True) -> list[str]:
    """Return the list of violated conditions (empty when ``cfg`` is valid).

    ``strict`` demands every degree be positive; otherwise nonnegative
    degrees are accepted.  Both modes check the shape, ``m >= 1``, the
    dimension condition ``sum n_j = m + 3`` and the Calabi-Yau column sums.
    """
    problems = []
    amb = cfg.ambient
    if cfg.m < 1:
        problems.append("m must be at least 1 (no rows given)")
    bad_rows = [i + 1 for i, row in enumerate(cfg.entries) if len(row) != amb.k]
    if bad_rows:
        problems.append(f"rows {bad_rows} do not have {amb.k} entries")
        return problems
    if amb.dim != cfg.m + 3:
        problems.append(
            f"dimension condition: sum of n_j is {amb.dim} but m + 3 is {cfg.m + 3}"
        )
    floor = 1 if strict else 0
    for i, row in enumerate(cfg.entries, start=1):
        for j, d in enumerate(row, start=1):
            if d < floor:
                problems.append(f"degree d_{j}^({i}) = {d} is below {floor}")
    for j, n in enumerate(amb.factors, start=1):
        s = sum(cfg.column(j - 1)) if cfg.m else 0
        if s != n + 1:
            problems.append(f"column {j} sums to {s}, Calabi-Yau condition needs {n + 1}")
    return problems


def is_valid(cfg: ConfigMatrix, strict: bool = True) -> bool:
    return not validate(cfg, strict)


def canonical(cfg: ConfigMatrix) -> ConfigMatrix:
    """Rows sorted lexicographically descending; the only gauge is row order."""
    return ConfigMatrix(cfg.ambient, tuple(sorted(cfg.entries, reverse=True)))


def enumerate_configs(ambient: AmbientSpace) -> list[ConfigMatrix]:
    """Every strict-valid configuration on ``ambient`` up to row permutation."""
    m = ambient.dim - 3
    if m < 1:
        raise ValueError(f"no CICY threefold in {ambient.factors}: need sum n_j >= 4")
    sums = tuple(n + 1 for n in ambient.factors)
    if any(s < m for s in sums):
        return []
    # each entry is at least 1 and leaves room for the other m - 1 rows
    ranges = [range(1, s - (m - 1) + 1) for s in sums]
    candidates = sorted(iproduct(*ranges), reverse=True)
    found = []

    def extend(rows, remaining, start):
        if len(rows) == m:
            if all(r == 0 for r in remaining):
                found.append(ConfigMatrix(ambient, tuple(rows)))
            return
        left = m - len(rows) - 1
        for idx in range(start, len(candidates)):
            row = candidates[idx]
            rest = tuple(r - x for r, x in zip(remaining, row))
            if all(x >= left for x in rest):
                extend(rows + [row], rest, idx)

    extend([], sums, 0)
    found.sort(key=lambda c: c.entries, reverse=True)
    return found


def ambients_up_to(total: int) -> list[AmbientSpace]:
    """All ordered ambients with ``4 <= sum n_j <= total``."""
    out = []

    def compositions(n):
        if n == 0:
            yield ()
            return
        for first in range(1, n + 1):
            for rest in compositions(n - first):
                yield (first,) + rest

    for s in range(4, total + 1):
        out.extend(AmbientSpace(c) for c in compositions(s))
    return out


def euler_characteristic(cfg: ConfigMatrix) -> int:
    """Topological Euler characteristic of the complete intersection.

    ``c(TY) = c(TX) / prod_i (1 + c1(L_i))`` restricted to ``Y``; the degree-3
    part is integrated against ``[Y] = prod_i c1(L_i)``.
    """
    problems = validate(cfg, strict=True)
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    amb = cfg.ambient
    tangent = CohomologyClass.one(amb)
    for j, n in enumerate(amb.factors, start=1):
        tangent = tangent * (CohomologyClass.one(amb) + CohomologyClass.generator(amb, j)) ** (n + 1)
    normal = CohomologyClass.one(amb)
    fundamental = CohomologyClass.one(amb)
    for row in cfg.entries:
        c1 = CohomologyClass.linear(amb, row)
        normal = normal * (CohomologyClass.one(amb) + c1)
        fundamental = fundamental * c1
    c3 = (tangent * coh_inverse(normal)).graded_part(3)
    return coh_integrate(c3 * fundamental)


@dataclass(frozen=True)
class TopologyReport:
    euler: int
    b2: int
    b3: int
    nodes: int
    summands: int

    def to_json(self) -> dict:
        return {
            "euler": self.euler,
            "b2": self.b2,
            "b3": self.b3,
            "nodes": self.nodes,
            "summands": self.summands,
            "summands_note": "count (consistent reading): b3(Y)/2 + nodes - b2(Y)",
        }


def topology_report(cfg: ConfigMatrix) -> TopologyReport:
    chi = euler_characteristic(cfg)
    k = cfg.k
    b2 = k
    b3 = 2 + 2 * b2 - chi
    if b3 < 0 or b3 % 2:
        raise ArithmeticError(f"b3 = {b3} for {cfg}; expected even and nonnegative")
    nodes = k + 1
    return TopologyReport(chi, b2, b3, nodes, b3 // 2 + nodes - b2)


_KEY = re.compile(r"^\s*(ambient|D)\s*=\s*(.+?)\s*$")


def parse_configs(text: str) -> list[ConfigMatrix]:
    """Parse ``ambient = [...]`` / ``D = [[...], ...]`` entries.

    Lines starting with ``#`` are ignored.  Each ``D`` line closes the entry
    opened by the preceding ``ambient`` line.
    """
    out = []
    ambient = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        match = _KEY.match(line)
        if not match:
            raise ValueError(f"line {lineno}: expected 'ambient = [...]' or 'D = [[...]]'")
        key, value = match.groups()
        try:
            data = ast.literal_eval(value)
        except (ValueError, SyntaxError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {value!r}") from exc
        if key == "ambient":
            if isinstance(data, int):
                data = [data]
            if not (isinstance(data, (list, tuple)) and all(isinstance(x, int) for x in data)):
                raise ValueError(f"line {lineno}: ambient must be a list of integers")
            ambient = AmbientSpace(tuple(data))
        else:
            if ambient is None:
                raise ValueError(f"line {lineno}: D given before ambient")
            if not (
                isinstance(data, (list, tuple))
                and all(isinstance(r, (list, tuple)) for r in data)
                and all(isinstance(x, int) for r in data for x in r)
            ):
                raise ValueError(f"line {lineno}: D must be a list of integer rows")
            out.append(ConfigMatrix(ambient, tuple(tuple(r) for r in data)))
            ambient = None
    if ambient is not None:
        raise ValueError("ambient line without a following D line")
    return out
