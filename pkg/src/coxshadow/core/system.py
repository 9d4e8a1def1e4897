"""Coxeter matrices: validation, the text input format and named presets."""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, field

INF = math.inf

__all__ = ["INF", "CoxeterSystem", "SystemParseError", "parse_system", "PRESETS"]


class SystemParseError(ValueError):
    """Malformed or invalid Coxeter system description."""


@dataclass(frozen=True)
class CoxeterSystem:
    rank: int
    bonds: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...] = field(default=())
    name: str = ""

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise SystemParseError("rank must be positive")
        if len(self.bonds) != n or any(len(row) != n for row in self.bonds):
            raise SystemParseError(f"bond matrix must be {n}x{n}")
        for i in range(n):
            if self.bonds[i][i] != 1:
                raise SystemParseError(f"diagonal entry m {i + 1} {i + 1} must be 1")
            for j in range(n):
                m = self.bonds[i][j]
                if m != self.bonds[j][i]:
                    raise SystemParseError(f"bond matrix not symmetric at ({i + 1},{j + 1})")
                if i != j and not (m == INF or (int(m) == m and m >= 2)):
                    raise SystemParseError(
                        f"m {i + 1} {j + 1} = {m}: off-diagonal entries must be integers >= 2 or inf"
                    )
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"s{i + 1}" for i in range(n)))
        elif len(self.labels) != n:
            raise SystemParseError("one label per generator required")

    @classmethod
    def from_bonds(cls, bonds, name: str = "") -> CoxeterSystem:
        rows = tuple(tuple(INF if m == INF else int(m) for m in row) for row in bonds)
        return cls(len(rows), rows, name=name)

    def m(self, i: int, j: int):
        return self.bonds[i][j]

    def finite_bonds(self) -> list[int]:
        return [int(m) for i, row in enumerate(self.bonds) for j, m in enumerate(row) if i < j and m != INF]

    def to_text(self) -> str:
        """Canonical text form; ``parse_system(sys.to_text())`` reproduces the matrix."""
        parts = [f"rank {self.rank}"]
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.bonds[i][j]
                if m != 2:
                    parts.append(f"m {i + 1} {j + 1} = {'inf' if m == INF else int(m)}")
        return "; ".join(parts)

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]

    def __str__(self) -> str:
        return self.name or self.to_text()


def _from_upper(rank: int, upper: dict[tuple[int, int], float], name: str) -> CoxeterSystem:
    bonds = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in upper.items():
        bonds[i][j] = bonds[j][i] = m
    return CoxeterSystem.from_bonds(bonds, name=name)


# (rank, {(i, j): m}) with zero-based generator indices
PRESETS: dict[str, tuple[int, dict[tuple[int, int], float]]] = {
    "A1": (1, {}),
    "A2": (2, {(0, 1): 3}),
    "B2": (2, {(0, 1): 4}),
    "G2": (2, {(0, 1): 6}),
    "A3": (3, {(0, 1): 3, (1, 2): 3}),
    "B3": (3, {(0, 1): 4, (1, 2): 3}),
    "H3": (3, {(0, 1): 5, (1, 2): 3}),
    "Atilde1": (2, {(0, 1): INF}),
    "Atilde2": (3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}),
    "Btilde2": (3, {(0, 1): 4, (1, 2): 4}),
    "Ctilde2": (3, {(0, 1): 4, (1, 2): 4}),
    "Gtilde2": (3, {(0, 1): 6, (1, 2): 3}),
}

_BOND = r"(\d+|inf|oo|∞)"
_TRIANGLE = re.compile(rf"^triangle\(\s*{_BOND}\s*,\s*{_BOND}\s*,\s*{_BOND}\s*\)$")
_DIHEDRAL = re.compile(rf"^I2\(\s*{_BOND}\s*\)$")
_RANK = re.compile(r"^rank\s+(\d+)$")
_ENTRY = re.compile(rf"^m\s+(\d+)\s+(\d+)\s*=\s*{_BOND}$")


def _bond_value(tok: str) -> float:
    return INF if tok in ("inf", "oo", "∞") else int(tok)


def parse_system(text: str) -> CoxeterSystem:
    """Parse a preset name or lines of ``rank N`` / ``m i j = v`` (``;`` also separates).

    Unspecified pairs default to 2.  ``triangle(p,q,r)`` sets m12=p, m23=q,
    m13=r; ``I2(m)`` is the dihedral system of order 2m.
    """
    raw = text.strip()
    if raw in PRESETS:
        rank, upper = PRESETS[raw]
        return _from_upper(rank, upper, raw)
    mt = _TRIANGLE.match(raw)
    if mt:
        p, q, r = (_bond_value(x) for x in mt.groups())
        return _from_upper(3, {(0, 1): p, (1, 2): q, (0, 2): r}, raw)
    md = _DIHEDRAL.match(raw)
    if md:
        return _from_upper(2, {(0, 1): _bond_value(md.group(1))}, raw)

    rank = None
    upper: dict[tuple[int, int], float] = {}
    for stmt in re.split(r"[;\n]", raw):
        stmt = stmt.strip()
        if not stmt or stmt.startswith("#"):
            continue
        if (mr := _RANK.match(stmt)) is not None:
            if rank is not None:
                raise SystemParseError("rank given twice")
            rank = int(mr.group(1))
            continue
        if (me := _ENTRY.match(stmt)) is not None:
            i, j = int(me.group(1)) - 1, int(me.group(2)) - 1
            v = _bond_value(me.group(3))
            if i == j:
                raise SystemParseError("diagonal entries are fixed to 1")
            key = (min(i, j), max(i, j))
            if key in upper and upper[key] != v:
                raise SystemParseError(f"conflicting values for m {i + 1} {j + 1}")
            upper[key] = v
            continue
        raise SystemParseError(f"cannot parse {stmt!r}")
    if rank is None:
        raise SystemParseError(f"unknown preset or missing 'rank' line: {raw!r}")
    for i, j in upper:
        if not (0 <= i < rank and 0 <= j < rank):
            raise SystemParseError(f"generator index out of range in m {i + 1} {j + 1}")
    return _from_upper(rank, upper, "")
