"""Brute-force ground truth on a finite ball of the Cayley graph.

Nothing here touches small roots or automata.  Lengths are BFS depths, walls
are identified by the reflection crossing a ball edge, and the walls
separating an element from id are collected along BFS tree paths (a geodesic
crosses each wall once).  Separation, weak order, cone types, part minima
and dominance between walls are all read off these wall sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .core.group import CoxeterGroup, Elt, Root

log = logging.getLogger(__name__)

DEFAULT_MAX_BALL = 10**6

__all__ = [
    "Ball",
    "BallCapExceeded",
    "Inconclusive",
    "NotUnique",
    "BipodalityReport",
    "build_ball",
    "oracle_reduced",
    "oracle_length",
    "oracle_cone_signature",
    "oracle_cone_partition",
    "oracle_shi_partition",
    "oracle_part_minimum",
    "oracle_small_roots",
    "verify_bipodality",
]


class BallCapExceeded(RuntimeError):
    pass


class Inconclusive(RuntimeError):
    """The ball is too small to decide the question; raise the radius."""


@dataclass(frozen=True)
class NotUnique:
    """Two distinct weak-order-minimal members of a part (a counterexample)."""

    witnesses: tuple[int, int]


class Ball:
    """Elements of length <= radius with BFS data, wall ids and inversion masks."""

    def __init__(self, W: CoxeterGroup, radius: int, cap: int = DEFAULT_MAX_BALL):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self.W = W
        self.radius = radius
        n = W.rank
        e = W.identity
        self.elements: list[Elt] = [e]
        self.depth: list[int] = [0]
        self.parent: list[int] = [-1]
        self.parent_gen: list[int] = [-1]
        self.index: dict[Elt, int] = {e: 0}
        self.nbr: list[list[int]] = []
        self.walls: list[Root] = []
        self.wall_index: dict[Root, int] = {}
        self.mask: list[int] = [0]
        self.layers: list[list[int]] = [[0]]
        # up-edges (i, s) dual to each wall
        self.dual_edges: list[list[tuple[int, int]]] = []
        frontier = [0]
        for d in range(radius):
            nxt = []
            for i in frontier:
                g = self.elements[i]
                for s in range(n):
                    h = W.mul_gen(g, s)
                    j = self.index.get(h)
                    if j is None:
                        j = len(self.elements)
                        if j >= cap:
                            raise BallCapExceeded(f"ball of radius {radius} exceeds {cap} elements")
                        self.index[h] = j
                        self.elements.append(h)
                        self.depth.append(d + 1)
                        self.parent.append(i)
                        self.parent_gen.append(s)
                        nxt.append(j)
                        w = self._wall_id(W.positive(tuple(row[s] for row in g.mat)))
                        self.mask.append(self.mask[i] | (1 << w))
                        self.dual_edges[w].append((i, s))
                    elif self.depth[j] == d + 1 and self.parent[j] != i:
                        w = self._wall_id(W.positive(tuple(row[s] for row in g.mat)))
                        self.dual_edges[w].append((i, s))
            if not nxt:
                break
            self.layers.append(nxt)
            frontier = nxt
        # neighbour table (within the ball)
        self.nbr = [[-1] * n for _ in self.elements]
        for j in range(1, len(self.elements)):
            i, s = self.parent[j], self.parent_gen[j]
            self.nbr[i][s] = j
            self.nbr[j][s] = i
        for w, edges in enumerate(self.dual_edges):
            for i, s in edges:
                j = self.index[W.mul_gen(self.elements[i], s)]
                self.nbr[i][s] = j
                self.nbr[j][s] = i
        self.inverse_idx = [self.index[W.inverse(g)] for g in self.elements]

    def _wall_id(self, root: Root) -> int:
        w = self.wall_index.get(root)
        if w is None:
            w = len(self.walls)
            self.wall_index[root] = w
            self.walls.append(root)
            self.dual_edges.append([])
        return w

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Elt) -> bool:
        return g in self.index

    def within(self, r: int) -> list[int]:
        """Indices of elements of length <= r (BFS order)."""
        return [i for layer in self.layers[: r + 1] for i in layer]

    def idx(self, g: Elt) -> int:
        i = self.index.get(g)
        if i is None:
            raise Inconclusive(f"element outside ball of radius {self.radius}")
        return i

    def edge_endpoints(self, w: int) -> list[tuple[int, int]]:
        return [(i, self.nbr[i][s]) for i, s in self.dual_edges[w]]

    def separates(self, w: int, i: int, j: int) -> bool:
        return bool(((self.mask[i] ^ self.mask[j]) >> w) & 1)

    def leq(self, i: int, j: int) -> bool:
        """Weak order i <= j: every wall separating i from id also separates j."""
        return self.mask[i] & ~self.mask[j] == 0

    def distance(self, i: int, j: int) -> int:
        """Number of walls separating two ball elements (= Cayley distance)."""
        return bin(self.mask[i] ^ self.mask[j]).count("1")

    def on_geodesic(self, p: int, g: int) -> bool:
        return self.depth[p] + self.distance(p, g) == self.depth[g]

    def walk(self, i: int, word) -> int:
        for s in word:
            i = self.nbr[i][s]
            if i < 0:
                raise Inconclusive("word leaves the ball")
        return i

    def below(self, j: int) -> list[int]:
        """All i <= j in weak order, found by descending along Cayley edges."""
        seen = {j}
        stack = [j]
        while stack:
            x = stack.pop()
            for y in self.nbr[x]:
                if y >= 0 and self.depth[y] < self.depth[x] and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def word_of(self, i: int) -> list[int]:
        word = []
        while self.parent[i] >= 0:
            word.append(self.parent_gen[i])
            i = self.parent[i]
        return word[::-1]


def build_ball(W: CoxeterGroup, radius: int, cap: int = DEFAULT_MAX_BALL) -> Ball:
    return Ball(W, radius, cap)


def oracle_reduced(ball: Ball, word) -> bool:
    """A word is reduced iff it ends at BFS depth equal to its length."""
    word = list(word)
    if len(word) > ball.radius:
        raise Inconclusive(f"word of length {len(word)} exceeds ball radius {ball.radius}")
    return ball.depth[ball.walk(0, word)] == len(word)


def oracle_length(ball: Ball, g: Elt) -> int:
    return ball.depth[ball.idx(g)]


def oracle_cone_signature(ball: Ball, g: int, margin: int) -> frozenset[int]:
    """T(g^-1) intersected with ball(margin), by length additivity l(g^-1 x) = l(g^-1) + l(x)."""
    if ball.depth[g] + margin > ball.radius:
        raise Inconclusive("element too deep for the requested margin")
    a = ball.inverse_idx[g]
    pos = {0: a}
    for layer in ball.layers[1 : margin + 1]:
        for x in layer:
            y, s = ball.parent[x], ball.parent_gen[x]
            p = pos.get(y)
            if p is None:
                continue
            q = ball.nbr[p][s]
            if q >= 0 and ball.depth[q] == ball.depth[p] + 1:
                pos[x] = q
    return frozenset(pos)


def _partition(keys: dict[int, object]) -> list[list[int]]:
    classes: dict[object, list[int]] = {}
    for i, k in keys.items():
        classes.setdefault(k, []).append(i)
    return sorted(classes.values())


def oracle_cone_partition(ball: Ball, margin: int) -> list[list[int]]:
    """Cone-type partition of ball(R - margin - 1), accepted only if margins
    ``margin`` and ``margin + 1`` induce the same classes."""
    if margin < 1:
        raise ValueError("margin must be at least 1")
    r = ball.radius - margin - 1
    if r < 0:
        raise Inconclusive("ball too small for the requested margin")
    dom = ball.within(r)
    p1 = _partition({i: oracle_cone_signature(ball, i, margin) for i in dom})
    p2 = _partition({i: oracle_cone_signature(ball, i, margin + 1) for i in dom})
    if p1 != p2:
        raise Inconclusive(f"cone partition unstable between margins {margin} and {margin + 1}")
    return p2


def oracle_shi_partition(ball: Ball, small_walls: list[int], r: int | None = None) -> list[list[int]]:
    """Partition of ball(r) by which of the given walls separate an element from id."""
    smask = 0
    for w in small_walls:
        smask |= 1 << w
    dom = ball.within(ball.radius if r is None else r)
    return _partition({i: ball.mask[i] & smask for i in dom})


def oracle_part_minimum(ball: Ball, members: list[int]) -> int | NotUnique:
    """The member below all others in weak order, or two incomparable minimal members."""
    if not members:
        raise ValueError("empty part")
    minimal = [m for m in members if not any(o != m and ball.leq(o, m) for o in members)]
    if len(minimal) == 1 and all(ball.leq(minimal[0], o) for o in members):
        return minimal[0]
    if len(minimal) == 1:
        # unique minimal but not a minimum: cannot happen in a finite poset
        raise AssertionError("finite poset with a unique minimal element that is not a minimum")
    return NotUnique((minimal[0], minimal[1]))


def _wall_depths(ball: Ball) -> list[int]:
    return [min(ball.depth[i] + 1 for i, _ in edges) for edges in ball.dual_edges]


def _undominated(ball: Ball, depth: int) -> set[Root]:
    out = set()
    for w, d in enumerate(_wall_depths(ball)):
        if d > depth:
            continue
        common = -1
        for i, j in ball.edge_endpoints(w):
            common &= ball.mask[i] & ball.mask[j]
        if common == 0:
            out.add(ball.walls[w])
    return out


def oracle_small_roots(W: CoxeterGroup, depth: int, radius: int | None = None, cap: int = DEFAULT_MAX_BALL) -> set[Root]:
    """Roots of depth <= ``depth`` whose wall no other wall separates from id.

    A wall counts as separated from id by another wall when every ball edge
    dual to it lies on the far side of that wall.  The answer must agree for
    balls of radius R and R + 2, otherwise :class:`Inconclusive` is raised.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    radius = 2 * depth if radius is None else radius
    big = Ball(W, radius + 2, cap)
    small = Ball(W, radius, cap)
    a, b = _undominated(small, depth), _undominated(big, depth)
    if a != b:
        raise Inconclusive(f"small roots unstable between radii {radius} and {radius + 2}")
    return b


# --- bipodality ----------------------------------------------------------


@dataclass
class BipodalityReport:
    instances: int = 0
    hypothesis_met: int = 0
    passed: int = 0
    skipped: int = 0
    failures: list[dict] = field(default_factory=list)
    skipped_reasons: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "instances": self.instances,
            "hypothesis_met": self.hypothesis_met,
            "passed": self.passed,
            "skipped": self.skipped,
            "skipped_reasons": dict(self.skipped_reasons),
            "failures": self.failures,
        }


def verify_bipodality(W: CoxeterGroup, radius: int, ball: Ball | None = None) -> BipodalityReport:
    """Check the bipodality property on all instances visible in ball(radius).

    Sharp-angled pairs {r, q} are produced as conjugates w s w^-1, w t w^-1 of
    non-commuting generators with finite m_st; the geometric fundamental
    domain is the sector of w.  For every g in that sector and every wall U
    separating g from W_r or W_q, each remaining wall W' of the dihedral
    reflection group must be separated from g by some wall U'.

    Two walls meet iff |(beta|gamma)| < 1; a wall U separates g from a wall
    W' iff they do not meet and U separates g from a vertex adjacent to W'.
    Candidates for U, U' are the walls separating g from such a vertex, which
    are all dual to ball edges.
    """
    if ball is None:
        ball = Ball(W, radius)
    report = BipodalityReport()
    half = radius // 2
    meet_cache: dict[tuple[int, int], bool] = {}

    def meet(a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        v = meet_cache.get(key)
        if v is None:
            ip = W.bilinear(ball.walls[a], ball.walls[b])
            v = -1 < ip < 1
            meet_cache[key] = v
        return v

    def bits(x: int):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def separating_walls(g: int, x: int):
        return bits(ball.mask[g] ^ ball.mask[x])

    def wall_separated(g: int, wall: int, vertex: int) -> bool:
        return any(u != wall and not meet(u, wall) for u in separating_walls(g, vertex))

    n = W.rank
    pairs = [
        (s, t, int(W.system.bonds[s][t]))
        for s in range(n)
        for t in range(s + 1, n)
        if W.system.bonds[s][t] != float("inf") and W.system.bonds[s][t] > 2
    ]
    if not pairs:
        report.skipped_reasons["no non-commuting finite bonds"] = 1
        return report
    for w in ball.within(half):
        for s, t, m in pairs:
            # residue w<s,t> as a 2m-cycle: vertices and the wall of each edge
            cycle = [w]
            word = []
            for k in range(2 * m):
                word.append(s if k % 2 == 0 else t)
            x = w
            edge_walls = []
            ok = True
            for a in word:
                y = ball.nbr[x][a]
                if y < 0:
                    ok = False
                    break
                edge_walls.append(_edge_wall(ball, x, y))
                cycle.append(y)
                x = y
            if not ok:
                report.skipped += 1
                report.skipped_reasons["residue leaves ball"] = report.skipped_reasons.get("residue leaves ball", 0) + 1
                continue
            wall_r = edge_walls[0]  # crosses (w, ws)
            wall_q = edge_walls[-1]  # crosses (w, wt)
            others = {}
            for k, wl in enumerate(edge_walls):
                if wl not in (wall_r, wall_q):
                    others.setdefault(wl, cycle[k])
            side = ball.mask[w]
            for g in ball.within(half):
                if ((ball.mask[g] ^ side) >> wall_r) & 1 or ((ball.mask[g] ^ side) >> wall_q) & 1:
                    continue
                report.instances += 1
                if not (wall_separated(g, wall_r, w) or wall_separated(g, wall_q, w)):
                    continue
                report.hypothesis_met += 1
                bad = [wl for wl, vtx in others.items() if not wall_separated(g, wl, vtx)]
                if bad:
                    report.failures.append(
                        {
                            "conjugator": W.format_word(ball.word_of(w)),
                            "generators": [W.system.labels[s], W.system.labels[t]],
                            "g": W.format_word(ball.word_of(g)),
                            "walls_without_separator": [[str(a) for a in ball.walls[b]] for b in bad],
                        }
                    )
                else:
                    report.passed += 1
    if report.skipped:
        log.info("bipodality: %d residues skipped (outside ball)", report.skipped)
    return report


def _edge_wall(ball: Ball, i: int, j: int) -> int:
    x = ball.mask[i] ^ ball.mask[j]
    return x.bit_length() - 1
