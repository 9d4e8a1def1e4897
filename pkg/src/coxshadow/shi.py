"""Shi signatures and parts, their smallest elements m(g), the set M, and
desk-scale checks of the Garside shadow property.

Conventions: the signature of g is the set of elementary walls separating id
from g (small roots beta with g^-1(beta) < 0).  The Brink-Howlett automaton
reading a reduced word of x reaches the elementary walls separating id from
x^-1, so the part of g corresponds to the state reached by a reduced word of
g^-1 (the reversed word of g).
"""

from __future__ import annotations

import csv
import io
import json
from collections import deque
from dataclasses import dataclass, field

from .automata import Dfa, brink_howlett, run
from .core.group import CoxeterGroup, Elt
from .oracle import Ball
from .roots import RootSystem

__all__ = [
    "PartRecord",
    "ShiPartition",
    "ShadowReport",
    "MonotoneReport",
    "minimal_elements_by_state",
    "verify_shadow",
]


@dataclass
class PartRecord:
    key: frozenset[int] | int
    min_elt: Elt
    members: list[Elt] = field(default_factory=list)


def minimal_elements_by_state(W: CoxeterGroup, dfa: Dfa):
    """For every state q, all elements x of minimal length whose reduced words reach q.

    Breadth-first over group elements: a transition is defined exactly on
    length-increasing letters, so each element gets a well-defined state.
    Returns ``{q: [x, ...]}``; a singleton list means the shortest element is unique.
    """
    found: dict[int, list[Elt]] = {dfa.start: [W.identity]}
    depth_of = {dfa.start: 0}
    layer = {W.identity: dfa.start}
    d = 0
    while len(depth_of) < dfa.n_states and layer:
        d += 1
        nxt: dict[Elt, int] = {}
        for x, q in layer.items():
            for s in range(W.rank):
                t = dfa.trans[q][s]
                if t < 0:
                    continue
                y = W.mul_gen(x, s)
                prev = nxt.get(y)
                if prev is not None and prev != t:
                    raise AssertionError("automaton state is not a function of the element")
                nxt[y] = t
        for y, t in nxt.items():
            if t not in depth_of:
                depth_of[t] = d
            if depth_of[t] == d:
                found.setdefault(t, []).append(y)
        layer = nxt
    return found


class ShiPartition:
    """Shi parts of W, indexed by Brink-Howlett states."""

    def __init__(self, rs: RootSystem, bh: Dfa | None = None):
        self.rs = rs
        self.W = rs.W
        self.bh = bh if bh is not None else brink_howlett(rs)
        self._min_cache: dict[Elt, Elt] = {}
        self._M: list[Elt] | None = None

    def signature(self, g: Elt) -> frozenset[int]:
        """Indices of small roots whose walls separate id from g."""
        W = self.W
        return frozenset(i for i, b in enumerate(self.rs.sigma) if W.separates_from_id(b, g))

    def state(self, g: Elt) -> int:
        """Brink-Howlett state of the part of g (reads a reduced word of g^-1)."""
        return run(self.bh, reversed(g.word))

    def state_signature(self, q: int) -> frozenset[int]:
        return frozenset(self.bh.meta[q])

    def crossed_wall_is_elementary(self, g: Elt, s: int) -> bool:
        return self.rs.is_small(tuple(row[s] for row in g.mat))

    def minimum(self, g: Elt) -> Elt:
        """m(g): descend across non-elementary walls (smallest generator first)."""
        W = self.W
        path = []
        x = g
        while True:
            cached = self._min_cache.get(x)
            if cached is not None:
                break
            for s in range(W.rank):
                if x.length and W.is_right_descent(x, s) and not self.crossed_wall_is_elementary(x, s):
                    path.append(x)
                    x = W.mul_gen(x, s)
                    break
            else:
                cached = x
                break
        for y in path:
            self._min_cache[y] = cached
        self._min_cache[x] = cached
        return cached

    def is_low(self, h: Elt) -> bool:
        """Every descent wall of h is elementary."""
        W = self.W
        return all(
            self.crossed_wall_is_elementary(h, s) for s in range(W.rank) if h.length and W.is_right_descent(h, s)
        )

    def elements_M(self) -> list[Elt]:
        """One smallest element per Shi part, in Brink-Howlett state order."""
        if self._M is None:
            found = minimal_elements_by_state(self.W, self.bh)
            out = []
            for q in range(self.bh.n_states):
                xs = found[q]
                if len(xs) != 1:
                    raise AssertionError(f"Shi part of state {q} has {len(xs)} shortest elements")
                out.append(self.W.inverse(xs[0]))
            self._M = out
        return self._M

    def parts(self, ball: Ball | None = None) -> list[PartRecord]:
        recs = [PartRecord(self.state_signature(q), m) for q, m in enumerate(self.elements_M())]
        if ball is not None:
            for g in ball.elements:
                recs[self.state(g)].members.append(g)
        return recs

    def parts_json(self, ball: Ball | None = None) -> str:
        W = self.W
        rows = []
        for q, rec in enumerate(self.parts(ball)):
            row = {
                "state": q,
                "signature": sorted(rec.key),
                "min_word": W.format_word(rec.min_elt.word),
                "min_length": rec.min_elt.length,
            }
            if ball is not None:
                row["size_in_ball"] = len(rec.members)
            rows.append(row)
        return json.dumps(
            {"system": W.system.to_text(), "ball": ball.radius if ball else None, "parts": rows}, indent=1
        )

    def parts_csv(self, ball: Ball | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["state", "signature", "min_word", "min_length", "size_in_ball"])
        for q, rec in enumerate(self.parts(ball)):
            w.writerow(
                [
                    q,
                    " ".join(map(str, sorted(rec.key))),
                    self.W.format_word(rec.min_elt.word),
                    rec.min_elt.length,
                    len(rec.members) if ball is not None else "",
                ]
            )
        return buf.getvalue()

    def verify_monotone(self, ball: Ball, radius: int | None = None) -> MonotoneReport:
        """m(g) <= m(h) for every comparable pair g <= h in ball(radius)."""
        return verify_monotone_map(ball, self.minimum, radius)


@dataclass
class MonotoneReport:
    pairs: int = 0
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_monotone_map(ball: Ball, fmap, radius: int | None = None) -> MonotoneReport:
    W = ball.W
    r = ball.radius if radius is None else radius
    dom = ball.within(r)
    image = {i: ball.index[fmap(ball.elements[i])] for i in dom}
    rep = MonotoneReport()
    for h in dom:
        mh = image[h]
        for g in ball.below(h):
            rep.pairs += 1
            if not ball.leq(image[g], mh):
                rep.violations.append(
                    (W.format_word(ball.elements[g].word), W.format_word(ball.elements[h].word))
                )
    return rep


@dataclass
class ShadowReport:
    contains_S: bool
    suffix_closed: bool
    join_closed: bool
    missing_generators: list[str] = field(default_factory=list)
    suffix_counterexamples: list[tuple[str, str]] = field(default_factory=list)
    join_counterexamples: list[tuple[str, str, str]] = field(default_factory=list)
    joins_found: int = 0
    joins_not_found: int = 0

    @property
    def ok(self) -> bool:
        return self.contains_S and self.suffix_closed and self.join_closed

    def to_json(self) -> dict:
        return {
            "contains_S": self.contains_S,
            "suffix_closed": self.suffix_closed,
            "join_closed": self.join_closed,
            "missing_generators": self.missing_generators,
            "suffix_counterexamples": self.suffix_counterexamples,
            "join_counterexamples": self.join_counterexamples,
            "joins_found": self.joins_found,
            "joins_not_found": self.joins_not_found,
        }


def suffixes(W: CoxeterGroup, h: Elt) -> set[Elt]:
    """All g^-1 h with g <= h, by stripping left descents."""
    seen = {h}
    queue = deque([h])
    while queue:
        y = queue.popleft()
        for s in range(W.rank):
            if y.length and W.is_left_descent(y, s):
                z = W.lmul_gen(s, y)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    return seen


def verify_shadow(W: CoxeterGroup, B, radius: int) -> ShadowReport:
    """Garside shadow conditions for a finite set B: S in B, suffix closure, and
    closure under every join found among elements of length <= radius."""
    B = list(dict.fromkeys(B))
    Bset = set(B)
    missing = [W.system.labels[s] for s in range(W.rank) if W.gen(s) not in Bset]
    suffix_bad = []
    for h in B:
        for y in suffixes(W, h):
            if y not in Bset:
                suffix_bad.append((W.format_word(h.word), W.format_word(y.word)))
    join_bad = []
    found = not_found = 0
    for a, u in enumerate(B):
        if u.length > radius:
            continue
        layers = W.upper_layers(u, radius)
        for v in B[a + 1 :]:
            if v.length > radius:
                continue
            j = W.join_in(layers, W.inversion_set(v))
            if j is None:
                not_found += 1
                continue
            found += 1
            if j not in Bset:
                join_bad.append((W.format_word(u.word), W.format_word(v.word), W.format_word(j.word)))
    return ShadowReport(
        contains_S=not missing,
        suffix_closed=not suffix_bad,
        join_closed=not join_bad,
        missing_generators=missing,
        suffix_counterexamples=suffix_bad,
        join_counterexamples=join_bad,
        joins_found=found,
        joins_not_found=not_found,
    )
