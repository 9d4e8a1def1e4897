"""Positive roots, dominance, small (elementary) roots and the reflection table."""

from __future__ import annotations

import csv
import enum
import io
import json
from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key

from .core.group import CoxeterGroup, Root, Wall, format_root, root_sign

__all__ = [
    "Outcome",
    "ReflectionTable",
    "RootSystem",
    "SmallRootCapExceeded",
    "depth",
    "dominates",
    "small_roots",
    "elementary_walls",
    "reflection_table",
]

DEFAULT_CAP = 10**6


class SmallRootCapExceeded(RuntimeError):
    pass


def depth(W: CoxeterGroup, beta: Root) -> int:
    """Depth of a positive root: 1 for simple roots, +1 per depth-raising reflection."""
    if root_sign(beta) <= 0:
        raise ValueError("depth is defined for positive roots")
    d = 1
    while beta not in W.simple_roots:
        for s in range(W.rank):
            if W.bilinear(W.simple_roots[s], beta).sign() > 0:
                beta = W.reflect(s, beta)
                d += 1
                break
        else:
            raise AssertionError("positive non-simple root with no depth-lowering reflection")
    return d


def dominates(W: CoxeterGroup, beta: Root, alpha: Root) -> bool:
    """True iff the wall of ``alpha`` separates the wall of ``beta`` from id.

    For positive roots this holds exactly when (beta|alpha) >= 1 and beta is
    the deeper of the two; the relation is irreflexive.
    """
    if beta == alpha:
        return False
    if W.bilinear(beta, alpha) < 1:
        return False
    return depth(W, beta) > depth(W, alpha)


def _root_cmp(a: tuple[int, Root], b: tuple[int, Root]) -> int:
    if a[0] != b[0]:
        return -1 if a[0] < b[0] else 1
    for x, y in zip(a[1], b[1]):
        if x != y:
            return -1 if x < y else 1
    return 0


def small_roots(W: CoxeterGroup, cap: int = DEFAULT_CAP) -> list[Root]:
    """The finite set of small roots, sorted by (depth, coordinates).

    Breadth-first closure from the simple roots: from a small root gamma,
    s(gamma) is small and deeper exactly when -1 < (alpha_s|gamma) < 0.
    """
    found = {b: 1 for b in W.simple_roots}
    queue = deque(W.simple_roots)
    while queue:
        gamma = queue.popleft()
        for s in range(W.rank):
            ip = W.bilinear(W.simple_roots[s], gamma)
            if ip.sign() < 0 and ip > -1:
                beta = W.reflect(s, gamma)
                if beta not in found:
                    found[beta] = found[gamma] + 1
                    if len(found) > cap:
                        raise SmallRootCapExceeded(
                            f"more than {cap} small roots; the closure rule is not terminating"
                        )
                    queue.append(beta)
    ordered = sorted(((d, b) for b, d in found.items()), key=cmp_to_key(_root_cmp))
    return [b for _, b in ordered]


def elementary_walls(W: CoxeterGroup, sigma: list[Root] | None = None) -> list[Wall]:
    if sigma is None:
        sigma = small_roots(W)
    return [Wall(W, b) for b in sigma]


class Outcome(enum.Enum):
    SMALL_ROOT = "small"
    NOT_SMALL = "not_small"
    NEGATIVE_SIMPLE = "negative_simple"


NOT_SMALL = -1
NEGATIVE_SIMPLE = -2


@dataclass(frozen=True)
class ReflectionTable:
    """``entries[a][s]`` is the index of s(Sigma[a]) in Sigma, or a negative sentinel."""

    entries: tuple[tuple[int, ...], ...]

    def outcome(self, a: int, s: int) -> tuple[Outcome, int | None]:
        e = self.entries[a][s]
        if e == NEGATIVE_SIMPLE:
            return Outcome.NEGATIVE_SIMPLE, None
        if e == NOT_SMALL:
            return Outcome.NOT_SMALL, None
        return Outcome.SMALL_ROOT, e

    def __getitem__(self, a: int) -> tuple[int, ...]:
        return self.entries[a]


def reflection_table(W: CoxeterGroup, sigma: list[Root]) -> ReflectionTable:
    index = {b: i for i, b in enumerate(sigma)}
    rows = []
    for beta in sigma:
        row = []
        for s in range(W.rank):
            if beta == W.simple_roots[s]:
                row.append(NEGATIVE_SIMPLE)
            else:
                row.append(index.get(W.reflect(s, beta), NOT_SMALL))
        rows.append(tuple(row))
    return ReflectionTable(tuple(rows))


class RootSystem:
    """Small roots of a Coxeter group with lookup tables used downstream."""

    def __init__(self, W: CoxeterGroup, cap: int = DEFAULT_CAP):
        self.W = W
        self.sigma: list[Root] = small_roots(W, cap)
        self.index: dict[Root, int] = {b: i for i, b in enumerate(self.sigma)}
        self.table = reflection_table(W, self.sigma)
        self.simple_index = [self.index[a] for a in W.simple_roots]

    def __len__(self) -> int:
        return len(self.sigma)

    def is_small(self, beta: Root) -> bool:
        return self.W.positive(beta) in self.index

    def walls(self) -> list[Wall]:
        return elementary_walls(self.W, self.sigma)

    def to_json(self) -> str:
        data = {
            "system": self.W.system.to_text(),
            "generator": f"c = 2cos(pi/{self.W.field.N})",
            "small_roots": [
                {"index": i, "depth": depth(self.W, b), "coords": format_root(b)}
                for i, b in enumerate(self.sigma)
            ],
        }
        return json.dumps(data, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "depth"] + list(self.W.system.labels))
        for i, b in enumerate(self.sigma):
            w.writerow([i, depth(self.W, b)] + format_root(b))
        return buf.getvalue()
