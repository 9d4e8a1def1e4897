"""Cone types, cone type parts, gates and the minimal reduced-word automaton.

A cone type part Q(T) collects the g with T(g^-1) = T.  Since the set of
reduced continuations of a reduced word of x is the cone type T(x), the
Myhill-Nerode class of a reduced word of g^-1 (its state in the minimal
automaton) names the part of g.
"""

from __future__ import annotations

import csv
import io
import json
from collections import deque
from dataclasses import dataclass, field

from .automata import Dfa, brink_howlett, export_dot, minimize, run
from .core.group import CoxeterGroup, Elt, Wall
from .oracle import Ball
from .roots import RootSystem
from .shi import MonotoneReport, minimal_elements_by_state, verify_monotone_map, verify_shadow

__all__ = [
    "ConeTypePartition",
    "ConeTheoremReport",
    "HnwReport",
    "ball_states",
    "boundary_walls",
]


def ball_states(ball: Ball, dfa: Dfa, inverse: bool = True) -> list[int]:
    """Automaton state of every ball element.

    Reads the BFS word of each element (or, with ``inverse``, of its inverse);
    every BFS word is reduced, so no entry is -1.
    """
    word_state = [dfa.start] + [0] * (len(ball) - 1)
    for layer in ball.layers[1:]:
        for j in layer:
            word_state[j] = dfa.trans[word_state[ball.parent[j]]][ball.parent_gen[j]]
    if not inverse:
        return word_state
    return [word_state[ball.inverse_idx[i]] for i in range(len(ball))]


def boundary_walls(W: CoxeterGroup, g: Elt, radius: int) -> set[Wall]:
    """Walls between adjacent h in T(g) and h' outside it, for h of length <= radius - l(g).

    T(g) = {h : l(gh) = l(g) + l(h)} is closed under prefixes, so it is
    explored upward from id; an edge (h, hs) leaves T exactly when hs is
    longer than h but ghs is shorter than gh.
    """
    if radius < g.length + 2:
        raise ValueError("radius must be at least l(g) + 2")
    limit = radius - g.length
    walls = set()
    seen = {W.identity}
    frontier = [(W.identity, g)]
    for _ in range(limit + 1):
        nxt = []
        for h, gh in frontier:
            for s in range(W.rank):
                if h.length and W.is_right_descent(h, s):
                    continue
                if W.is_right_descent(gh, s):
                    walls.add(Wall(W, tuple(row[s] for row in h.mat)))
                    continue
                hs = W.mul_gen(h, s)
                if hs not in seen and hs.length <= limit:
                    seen.add(hs)
                    nxt.append((hs, W.mul_gen(gh, s)))
        frontier = nxt
    return walls


@dataclass
class ConeTheoremReport:
    unique_minimum: bool = True
    join_closed: bool = True
    convex: bool = True
    states_seen: int = 0
    joins_found: int = 0
    pairs_checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.unique_minimum and self.join_closed and self.convex


@dataclass
class HnwReport:
    gates: int
    states: int
    bijective: bool
    fixpoints_match: bool

    @property
    def ok(self) -> bool:
        return self.gates == self.states and self.bijective and self.fixpoints_match


class ConeTypePartition:
    """Cone type parts of W, indexed by states of the minimal automaton."""

    def __init__(self, rs: RootSystem, bh: Dfa | None = None, minimal: Dfa | None = None):
        self.rs = rs
        self.W = rs.W
        self.bh = bh if bh is not None else brink_howlett(rs)
        self.dfa = minimal if minimal is not None else minimize(self.bh)
        self._gate_cache: dict[Elt, Elt] = {}
        self._gates: list[Elt] | None = None

    def cone_state(self, g: Elt) -> int:
        """State reached by a reduced word of g^-1."""
        return run(self.dfa, reversed(g.word))

    def gate(self, g: Elt) -> Elt:
        """mu(g): descend while staying in the same cone type part."""
        W = self.W
        path = []
        x = g
        q = self.cone_state(g)
        while True:
            cached = self._gate_cache.get(x)
            if cached is not None:
                break
            for s in range(W.rank):
                if x.length and W.is_right_descent(x, s):
                    y = W.mul_gen(x, s)
                    if self.cone_state(y) == q:
                        path.append(x)
                        x = y
                        break
            else:
                cached = x
                break
        for y in path:
            self._gate_cache[y] = cached
        self._gate_cache[x] = cached
        return cached

    def gates(self) -> list[Elt]:
        """Gamma: the shortest element of each part, in minimal-automaton state order."""
        if self._gates is None:
            found = minimal_elements_by_state(self.W, self.dfa)
            out = []
            for q in range(self.dfa.n_states):
                xs = found[q]
                if len(xs) != 1:
                    raise AssertionError(f"cone type part of state {q} has {len(xs)} shortest elements")
                out.append(self.W.inverse(xs[0]))
            self._gates = out
        return self._gates

    def boundary_walls(self, g: Elt, radius: int) -> set[Wall]:
        return boundary_walls(self.W, g, radius)

    def verify_monotone(self, ball: Ball, radius: int | None = None) -> MonotoneReport:
        return verify_monotone_map(ball, self.gate, radius)

    def verify_cone_theorems(self, ball: Ball, radius: int | None = None) -> ConeTheoremReport:
        """Smallest elements, join closure of Gamma and convexity of parts.

        ``ball`` must have radius at least 2 * (radius - 2) so that every
        geodesic between two elements of ball(radius - 2) stays inside it.
        """
        W = self.W
        R = ball.radius if radius is None else radius
        if ball.radius < max(R, 2 * (R - 2)):
            raise ValueError("ball too small for the convexity check")
        rep = ConeTheoremReport()
        states = ball_states(ball, self.dfa)
        inner = ball.within(R)
        by_state: dict[int, list[int]] = {}
        for i in inner:
            by_state.setdefault(states[i], []).append(i)
        rep.states_seen = len(by_state)
        for q, members in by_state.items():
            lmin = min(ball.depth[i] for i in members)
            shortest = [i for i in members if ball.depth[i] == lmin]
            if len(shortest) != 1:
                rep.unique_minimum = False
                rep.counterexamples.append(("not unique", q, [W.format_word(ball.word_of(i)) for i in shortest]))
                continue
            m = shortest[0]
            for i in members:
                if ball.depth[i] <= R - 2 and not ball.leq(m, i):
                    rep.unique_minimum = False
                    rep.counterexamples.append(("not below", q, W.format_word(ball.word_of(i))))
        shadow = verify_shadow(W, self.gates(), R)
        rep.join_closed = shadow.join_closed
        rep.joins_found = shadow.joins_found
        rep.counterexamples.extend(("join", *c) for c in shadow.join_counterexamples)
        # convexity: every vertex of every geodesic between same-part elements
        for q, members in by_state.items():
            members = [i for i in members if ball.depth[i] <= R - 2]
            for a, g in enumerate(members):
                for h in members[a + 1 :]:
                    rep.pairs_checked += 1
                    bad = _geodesic_escape(ball, states, g, h)
                    if bad is not None:
                        rep.convex = False
                        rep.counterexamples.append(
                            ("geodesic leaves part", W.format_word(ball.word_of(g)), W.format_word(ball.word_of(h)))
                        )
        return rep

    def verify_hnw(self, ball: Ball) -> HnwReport:
        """Gamma has one element per minimal-automaton state, and inside ``ball``
        the fixpoints of the gate descent are exactly the gates."""
        gamma = self.gates()
        image = {self.cone_state(g) for g in gamma}
        bijective = len(image) == len(gamma) == self.dfa.n_states
        gamma_in_ball = {g for g in gamma if g.length <= ball.radius}
        fixpoints = {g for g in ball.elements if self.gate(g) == g}
        return HnwReport(len(gamma), self.dfa.n_states, bijective, fixpoints == gamma_in_ball)

    def parts_json(self, ball: Ball | None = None) -> str:
        W = self.W
        sizes = None
        if ball is not None:
            sizes = [0] * self.dfa.n_states
            for q in ball_states(ball, self.dfa):
                sizes[q] += 1
        rows = []
        for q, g in enumerate(self.gates()):
            row = {"state": q, "gate_word": W.format_word(g.word), "gate_length": g.length}
            if sizes is not None:
                row["size_in_ball"] = sizes[q]
            rows.append(row)
        return json.dumps(
            {"system": W.system.to_text(), "ball": ball.radius if ball else None, "states": rows}, indent=1
        )

    def parts_csv(self, ball: Ball | None = None) -> str:
        sizes = None
        if ball is not None:
            sizes = [0] * self.dfa.n_states
            for q in ball_states(ball, self.dfa):
                sizes[q] += 1
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["state", "gate_word", "gate_length", "size_in_ball"])
        for q, g in enumerate(self.gates()):
            w.writerow([q, self.W.format_word(g.word), g.length, sizes[q] if sizes else ""])
        return buf.getvalue()

    def dot(self) -> str:
        """Minimal automaton in DOT with each state labelled by its gate word."""
        W = self.W
        return export_dot(self.dfa, labels=[W.format_word(g.word) for g in self.gates()])


def _geodesic_escape(ball: Ball, states: list[int], g: int, h: int) -> int | None:
    """A vertex on a geodesic from g to h whose part differs, or None."""
    target = states[g]
    seen = {g}
    queue = deque([g])
    while queue:
        x = queue.popleft()
        if states[x] != target:
            return x
        dx = ball.distance(x, h)
        for y in ball.nbr[x]:
            if y >= 0 and y not in seen and ball.distance(y, h) == dx - 1:
                seen.add(y)
                queue.append(y)
    return None
