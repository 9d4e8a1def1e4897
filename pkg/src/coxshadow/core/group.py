"""Group elements in the geometric representation, walls, weak order and joins.

An element ``g`` is stored as the exact matrix of its action on the span of
the simple roots (column ``j`` is ``g(alpha_j)``) together with the matrix of
``g^-1``.  Right multiplication by a generator realizes the Cayley edge
``g -- gs``; the wall crossed by that edge has root ``+-g(alpha_s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import FieldElem, RealCyclotomicField, field_for_bonds
from .system import INF, CoxeterSystem

Root = tuple[FieldElem, ...]
Matrix = tuple[tuple[FieldElem, ...], ...]

__all__ = [
    "CoxeterGroup",
    "Elt",
    "Wall",
    "NoUpperBoundWithin",
    "Root",
    "root_sign",
    "format_root",
]


def root_sign(v: Root) -> int:
    """Sign of a root: +1 if its nonzero coordinates are positive, -1 if negative."""
    for a in v:
        if a:
            return a.sign()
    return 0


def format_root(v: Root) -> list[str]:
    return [str(a) for a in v]


class CoxeterGroup:
    """The Coxeter group of a system, realized by its Tits representation."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.rank = n = system.rank
        self.field: RealCyclotomicField = field_for_bonds(system.bonds)
        F = self.field
        # C = 2B; entries lie in Z[c]
        C = []
        for i in range(n):
            row = []
            for j in range(n):
                m = system.bonds[i][j]
                if i == j:
                    row.append(F(2))
                elif m == INF:
                    row.append(F(-2))
                else:
                    row.append(-F.two_cos_pi_over(int(m)))
            C.append(tuple(row))
        self.C: Matrix = tuple(C)
        self.B: Matrix = tuple(tuple(x / 2 for x in row) for row in C)
        self._C_nonzero = [[j for j in range(n) if C[s][j]] for s in range(n)]
        zero, one = F.zero, F.one
        ident = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        self._identity = Elt(self, ident, ident, 0)
        self._identity._word = ()
        self._gens = [self.mul_gen(self._identity, s) for s in range(n)]
        self.simple_roots: tuple[Root, ...] = tuple(
            tuple(one if i == s else zero for i in range(n)) for s in range(n)
        )

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.system})"

    # --- elements -----------------------------------------------------
    @property
    def identity(self) -> Elt:
        return self._identity

    def gen(self, s: int) -> Elt:
        return self._gens[s]

    @property
    def generators(self) -> list[Elt]:
        return list(self._gens)

    def is_right_descent(self, g: Elt, s: int) -> bool:
        """True iff l(gs) < l(g), i.e. g(alpha_s) is a negative root."""
        for row in g.mat:
            a = row[s]
            if a:
                return a.sign() < 0
        raise AssertionError("zero column in group matrix")

    def is_left_descent(self, g: Elt, s: int) -> bool:
        """True iff l(sg) < l(g), i.e. g^-1(alpha_s) is a negative root."""
        for row in g.inv:
            a = row[s]
            if a:
                return a.sign() < 0
        raise AssertionError("zero column in group matrix")

    def _right_update(self, M: Matrix, s: int) -> Matrix:
        Cs = self.C[s]
        cols = self._C_nonzero[s]
        out = []
        for row in M:
            a = row[s]
            if not a:
                out.append(row)
                continue
            new = list(row)
            for j in cols:
                new[j] = row[j] - Cs[j] * a
            out.append(tuple(new))
        return tuple(out)

    def _left_update(self, M: Matrix, s: int) -> Matrix:
        Cs = self.C[s]
        n = self.rank
        new_row = []
        for j in range(n):
            acc = M[s][j]
            for k in self._C_nonzero[s]:
                b = M[k][j]
                if b:
                    acc = acc - Cs[k] * b
            new_row.append(acc)
        out = list(M)
        out[s] = tuple(new_row)
        return tuple(out)

    def mul_gen(self, g: Elt, s: int) -> Elt:
        """The Cayley neighbour gs."""
        down = g.length > 0 and self.is_right_descent(g, s)
        return Elt(
            self,
            self._right_update(g.mat, s),
            self._left_update(g.inv, s),
            g.length - 1 if down else g.length + 1,
        )

    def lmul_gen(self, s: int, g: Elt) -> Elt:
        """The element sg."""
        down = g.length > 0 and self.is_left_descent(g, s)
        return Elt(
            self,
            self._left_update(g.mat, s),
            self._right_update(g.inv, s),
            g.length - 1 if down else g.length + 1,
        )

    def element(self, word: Iterable[int]) -> Elt:
        g = self._identity
        for s in word:
            g = self.mul_gen(g, s)
        return g

    def parse_word(self, text: str) -> Elt:
        """Element from a word such as ``"s1 s2 s1"`` (or ``"1 2 1"``, ``"e"``)."""
        return self.element(self.word_from_text(text))

    def word_from_text(self, text: str) -> list[int]:
        labels = {lab: i for i, lab in enumerate(self.system.labels)}
        out = []
        for tok in text.replace(",", " ").split():
            if tok in labels:
                out.append(labels[tok])
            elif tok.isdigit() and 1 <= int(tok) <= self.rank:
                out.append(int(tok) - 1)
            elif tok not in ("e", "id"):
                raise ValueError(f"unknown generator {tok!r}")
        return out

    def format_word(self, word: Sequence[int]) -> str:
        return " ".join(self.system.labels[s] for s in word) if word else "e"

    def inverse(self, g: Elt) -> Elt:
        return Elt(self, g.inv, g.mat, g.length)

    def multiply(self, g: Elt, h: Elt) -> Elt:
        for s in h.word:
            g = self.mul_gen(g, s)
        return g

    def from_matrix(self, mat: Matrix, inv: Matrix) -> Elt:
        """Element with a known matrix pair; the length is found by peeling left descents."""
        x = Elt(self, mat, inv, -1)
        length = 0
        cur_mat, cur_inv = mat, inv
        while True:
            probe = Elt(self, cur_mat, cur_inv, 1)
            for s in range(self.rank):
                if self.is_left_descent(probe, s):
                    cur_mat = self._left_update(cur_mat, s)
                    cur_inv = self._right_update(cur_inv, s)
                    length += 1
                    break
            else:
                break
        x.length = length
        return x

    def shortlex_word(self, g: Elt) -> tuple[int, ...]:
        word = []
        x = g
        while x.length > 0:
            for s in range(self.rank):
                if self.is_left_descent(x, s):
                    word.append(s)
                    x = self.lmul_gen(s, x)
                    break
        return tuple(word)

    # --- roots and walls ------------------------------------------------
    def apply(self, g: Elt, v: Root) -> Root:
        """g(v) for v in root coordinates."""
        zero = self.field.zero
        out = []
        for row in g.mat:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def apply_inverse(self, g: Elt, v: Root) -> Root:
        return self.apply(Elt(self, g.inv, g.mat, g.length), v)

    def bilinear(self, u: Root, v: Root) -> FieldElem:
        acc = self.field.zero
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and self.C[i][j]:
                    acc = acc + a * b * self.C[i][j]
        return acc / 2

    def reflect(self, s: int, v: Root) -> Root:
        """s(v) = v - 2(alpha_s|v) alpha_s."""
        coef = self.field.zero
        for j, b in enumerate(v):
            if b and self.C[s][j]:
                coef = coef + self.C[s][j] * b
        if not coef:
            return v
        out = list(v)
        out[s] = v[s] - coef
        return tuple(out)

    def positive(self, v: Root) -> Root:
        return v if root_sign(v) > 0 else tuple(-a for a in v)

    def reflection(self, beta: Root) -> Elt:
        """The reflection r_beta as a group element."""
        n = self.rank
        one, zero = self.field.one, self.field.zero
        cb = [self.field.zero] * n
        for j in range(n):
            acc = zero
            for k in range(n):
                if beta[k] and self.C[k][j]:
                    acc = acc + beta[k] * self.C[k][j]
            cb[j] = acc
        mat = tuple(
            tuple((one if i == j else zero) - beta[i] * cb[j] for j in range(n)) for i in range(n)
        )
        return self.from_matrix(mat, mat)

    def wall(self, root: Root) -> Wall:
        return Wall(self, self.positive(root))

    def inversion_roots(self, g: Elt) -> list[Root]:
        """Positive roots beta with g^-1(beta) < 0, in the order a reduced word crosses them."""
        roots = []
        x = self._identity
        for s in g.word:
            roots.append(tuple(row[s] for row in x.mat))
            x = self.mul_gen(x, s)
        return roots

    def inversion_set(self, g: Elt) -> frozenset[Root]:
        if g._inversions is None:
            g._inversions = frozenset(self.inversion_roots(g))
        return g._inversions

    def inversion_walls(self, g: Elt) -> set[Wall]:
        return {Wall(self, b) for b in self.inversion_roots(g)}

    def descent_walls(self, g: Elt) -> list[tuple[int, Wall]]:
        """Pairs (s, wall between g and gs) for every right descent s of g."""
        out = []
        if g.length == 0:
            return out
        for s in range(self.rank):
            if self.is_right_descent(g, s):
                col = tuple(-row[s] for row in g.mat)
                out.append((s, Wall(self, col)))
        return out

    def separates_from_id(self, beta: Root, g: Elt) -> bool:
        return root_sign(self.apply_inverse(g, beta)) < 0

    def separates(self, wall: Wall, x: Elt, y: Elt) -> bool:
        return self.separates_from_id(wall.root, x) != self.separates_from_id(wall.root, y)

    # --- weak order -----------------------------------------------------
    def weak_leq(self, p: Elt, g: Elt) -> bool:
        """p lies on a geodesic from id to g (inversion-set inclusion)."""
        if p.length > g.length:
            return False
        if p.length == 0:
            return True
        if g._inversions is not None:
            return self.inversion_set(p) <= g._inversions
        return all(self.separates_from_id(b, g) for b in self.inversion_set(p))

    def upper_layers(self, u: Elt, radius: int) -> list[list[tuple[Elt, frozenset]]]:
        """Elements w with u <= w and l(w) <= radius, grouped by length, with inversion sets."""
        layers = [[(u, self.inversion_set(u))]]
        seen = {u}
        for _ in range(u.length, radius):
            nxt = []
            for w, inv in layers[-1]:
                for s in range(self.rank):
                    if self.is_right_descent(w, s):
                        continue
                    ws = self.mul_gen(w, s)
                    if ws in seen:
                        continue
                    seen.add(ws)
                    beta = tuple(row[s] for row in w.mat)
                    nxt.append((ws, inv | {beta}))
            if not nxt:
                break
            layers.append(nxt)
        return layers

    @staticmethod
    def join_in(layers, v_inversions: frozenset) -> Elt | None:
        """First (hence unique) upper bound of v found in the layers of upper_layers."""
        for layer in layers:
            hits = [w for w, inv in layer if v_inversions <= inv]
            if hits:
                if len(hits) > 1:
                    raise AssertionError("two minimal upper bounds: weak order join failed")
                return hits[0]
        return None

    def join(self, u: Elt, v: Elt, radius: int) -> Elt | NoUpperBoundWithin:
        """Weak-order join of u and v, searched among elements of length <= radius.

        The ball is downward closed and the join lies below every upper bound,
        so the first upper bound found (by length) is the global join.
        """
        if radius < max(u.length, v.length):
            raise ValueError("radius must be at least max(l(u), l(v))")
        if u.length < v.length:
            u, v = v, u
        found = self.join_in(self.upper_layers(u, radius), self.inversion_set(v))
        return NoUpperBoundWithin(radius) if found is None else found


@dataclass(frozen=True)
class NoUpperBoundWithin:
    """No common upper bound of length <= radius; the global join may or may not exist."""

    radius: int


class Elt:
    """A group element: exact matrix, inverse matrix, and length."""

    __slots__ = ("group", "mat", "inv", "length", "_word", "_hash", "_inversions")

    def __init__(self, group: CoxeterGroup, mat: Matrix, inv: Matrix, length: int):
        self.group = group
        self.mat = mat
        self.inv = inv
        self.length = length
        self._word = None
        self._hash = None
        self._inversions = None

    def __eq__(self, other) -> bool:
        return isinstance(other, Elt) and self.mat == other.mat

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.mat)
        return self._hash

    @property
    def word(self) -> tuple[int, ...]:
        """ShortLex-minimal reduced word (generator indices)."""
        if self._word is None:
            self._word = self.group.shortlex_word(self)
        return self._word

    def __len__(self) -> int:
        return self.length

    def __mul__(self, other: Elt) -> Elt:
        return self.group.multiply(self, other)

    def __invert__(self) -> Elt:
        return self.group.inverse(self)

    def __repr__(self) -> str:
        return f"Elt({self.group.format_word(self.word)})"

    def __str__(self) -> str:
        return self.group.format_word(self.word)

    def key(self) -> tuple:
        return tuple(a.key() for row in self.mat for a in row)

    def to_json(self) -> dict:
        g = self.group
        return {
            "word": g.format_word(self.word),
            "length": self.length,
            "inversion_roots": [format_root(b) for b in g.inversion_roots(self)],
        }


class Wall:
    """The wall of the reflection in a positive root."""

    __slots__ = ("group", "root", "_refl")

    def __init__(self, group: CoxeterGroup, root: Root):
        self.group = group
        self.root = group.positive(root)
        self._refl = None

    @property
    def refl(self) -> Elt:
        if self._refl is None:
            self._refl = self.group.reflection(self.root)
        return self._refl

    def __eq__(self, other) -> bool:
        return isinstance(other, Wall) and self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"Wall({', '.join(format_root(self.root))})"
