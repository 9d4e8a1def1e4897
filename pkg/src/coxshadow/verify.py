"""Property suites run by the ``verify`` subcommand and the acceptance tests.

Each suite compares the main path (small roots, automata, greedy descents)
with the brute-force oracle on a ball, or checks a theorem at desk scale.
A check ends as ``pass``, ``fail``, ``inconclusive`` (the ball was too small
to decide) or ``vacuous``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

from .automata import DEFAULT_MAX_STATES, Dfa, StateCapExceeded, brink_howlett, equivalent, minimize, word_growth
from .conetype import ConeTypePartition, ball_states, boundary_walls
from .core.group import CoxeterGroup
from .core.system import CoxeterSystem
from .oracle import (
    DEFAULT_MAX_BALL,
    Ball,
    BallCapExceeded,
    Inconclusive,
    NotUnique,
    oracle_cone_partition,
    oracle_part_minimum,
    oracle_shi_partition,
    oracle_small_roots,
    verify_bipodality,
)
from .roots import RootSystem, SmallRootCapExceeded, depth
from .shi import ShiPartition, verify_shadow

log = logging.getLogger(__name__)

SUITES = ("automata", "shi", "cone", "shadow", "bipodality", "agreement")
PASS, FAIL, INCONCLUSIVE, VACUOUS = "pass", "fail", "inconclusive", "vacuous"

__all__ = ["SUITES", "Check", "SuiteResult", "Context", "run_suite", "overall_status"]


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    system: str
    radius: int
    checks: list[Check] = field(default_factory=list)

    @property
    def status(self) -> str:
        return overall_status(c.status for c in self.checks)

    def add(self, name: str, ok: bool, **detail) -> Check:
        c = Check(name, PASS if ok else FAIL, detail)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "system": self.system,
            "radius": self.radius,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
        }


def overall_status(statuses) -> str:
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PASS


class Context:
    """Lazily built objects shared by the suites for one system."""

    def __init__(
        self,
        system: CoxeterSystem,
        max_states: int = DEFAULT_MAX_STATES,
        max_ball: int = DEFAULT_MAX_BALL,
        bh: Dfa | None = None,
        minimal: Dfa | None = None,
    ):
        self.system = system
        self.W = CoxeterGroup(system)
        self.max_states = max_states
        self.max_ball = max_ball
        self._bh = bh
        self._minimal = minimal
        self._balls: dict[int, Ball] = {}

    @cached_property
    def rs(self) -> RootSystem:
        return RootSystem(self.W)

    @property
    def bh(self) -> Dfa:
        if self._bh is None:
            self._bh = brink_howlett(self.rs, self.max_states)
        return self._bh

    @property
    def minimal(self) -> Dfa:
        if self._minimal is None:
            self._minimal = minimize(self.bh)
        return self._minimal

    @cached_property
    def shi(self) -> ShiPartition:
        return ShiPartition(self.rs, self.bh)

    @cached_property
    def cones(self) -> ConeTypePartition:
        return ConeTypePartition(self.rs, self.bh, self.minimal)

    def ball(self, radius: int) -> Ball:
        b = self._balls.get(radius)
        if b is None:
            b = Ball(self.W, radius, self.max_ball)
            self._balls[radius] = b
        return b

    @cached_property
    def oracle_sigma(self):
        """Small roots found by the ball half-space test, up to one beyond the main depth."""
        d = max(depth(self.W, b) for b in self.rs.sigma) + 1
        return oracle_small_roots(self.W, d, cap=self.max_ball)


# --- automata --------------------------------------------------------------


def _word_census(ball: Ball, dfa: Dfa, nmax: int):
    """Walk every word of length <= nmax; compare acceptance with oracle reducedness.

    A non-reduced word has only non-reduced extensions and a rejected word
    only rejected ones, so branches where both fail are cut without loss.
    Returns (reduced word counts per length, first disagreement or None).
    """
    counts = [0] * (nmax + 1)
    stack = [(0, dfa.start, 0, ())]
    while stack:
        i, q, n, word = stack.pop()
        reduced = i >= 0 and ball.depth[i] == n
        accepted = q >= 0
        if reduced != accepted:
            return counts, word
        if not reduced:
            continue
        counts[n] += 1
        if n == nmax:
            continue
        for s in range(len(dfa.alphabet)):
            j = ball.nbr[i][s]
            t = dfa.trans[q][s]
            stack.append((j, t, n + 1, word + (s,)))
    return counts, None


def suite_automata(ctx: Context, R: int) -> SuiteResult:
    res = SuiteResult("automata", str(ctx.system), R)
    ball = ctx.ball(R)
    counts, bad = _word_census(ball, ctx.bh, R)
    res.add(
        "brink_howlett_accepts_exactly_reduced_words",
        bad is None,
        max_length=R,
        disagreement=None if bad is None else ctx.W.format_word(bad),
    )
    res.add("minimize_preserves_language", equivalent(ctx.bh, ctx.minimal),
            brink_howlett_states=ctx.bh.n_states, minimal_states=ctx.minimal.n_states)
    growth = word_growth(ctx.minimal, R)
    res.add("word_growth_matches_oracle", growth == counts, automaton=growth, oracle=counts)
    res.add("brink_howlett_states_equal_M", ctx.bh.n_states == len(ctx.shi.elements_M()), M=len(ctx.shi.elements_M()))
    return res


# --- shi ---------------------------------------------------------------------


def _oracle_small_wall_ids(ctx: Context, ball: Ball) -> list[int]:
    return [ball.wall_index[b] for b in ctx.oracle_sigma if b in ball.wall_index]


def _same_partition(a: list[list[int]], b: list[list[int]]) -> bool:
    return sorted(map(sorted, a)) == sorted(map(sorted, b))


def _classes(states: list[int], dom: list[int]) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for i in dom:
        out.setdefault(states[i], []).append(i)
    return list(out.values())


def suite_shi(ctx: Context, R: int) -> SuiteResult:
    res = SuiteResult("shi", str(ctx.system), R)
    W, shi = ctx.W, ctx.shi
    ball = ctx.ball(R)
    try:
        osig = ctx.oracle_sigma
    except Inconclusive as exc:
        res.checks.append(Check("small_roots_match_oracle", INCONCLUSIVE, {"reason": str(exc)}))
        return res
    res.add("small_roots_match_oracle", set(ctx.rs.sigma) == osig, main=len(ctx.rs.sigma), oracle=len(osig))
    try:
        M = shi.elements_M()
        res.add("unique_shortest_per_part", True, M=len(M), max_length=max(m.length for m in M))
    except AssertionError as exc:
        res.add("unique_shortest_per_part", False, reason=str(exc))
        return res
    states = ball_states(ball, shi.bh)
    dom = ball.within(R)
    oparts = oracle_shi_partition(ball, _oracle_small_wall_ids(ctx, ball), R)
    res.add("parts_match_oracle", _same_partition(_classes(states, dom), oparts), parts_in_ball=len(oparts))
    bad_min = []
    not_unique = 0
    for part in oparts:
        om = oracle_part_minimum(ball, part)
        if isinstance(om, NotUnique):
            not_unique += 1
            continue
        if shi.minimum(ball.elements[part[-1]]) != ball.elements[om]:
            bad_min.append(W.format_word(ball.word_of(part[-1])))
        if M[states[om]] != ball.elements[om]:
            bad_min.append(W.format_word(ball.word_of(om)))
    res.add("oracle_part_minimum_unique", not_unique == 0, not_unique=not_unique)
    res.add("minimum_matches_oracle", not bad_min, mismatches=bad_min[:5])
    mono = shi.verify_monotone(ball, R)
    res.add("minimum_monotone", mono.ok, pairs=mono.pairs, violations=mono.violations[:5])
    low_ok = all(shi.is_low(m) for m in M)
    res.add("M_elements_are_low", low_ok)
    return res


# --- cone types ---------------------------------------------------------------


def _nerode_check(ctx: Context, dom: int, max_margin: int) -> Check:
    """Automaton states against oracle cone types on ball(dom).

    The margin (length of the extensions tested) grows until two consecutive
    margins give the same oracle partition; that partition is then compared.
    """
    for margin in range(1, max_margin + 1):
        ball = ctx.ball(dom + margin + 1)
        try:
            oparts = oracle_cone_partition(ball, margin)
        except Inconclusive:
            continue
        states = ball_states(ball, ctx.minimal)
        ok = _same_partition(_classes(states, ball.within(dom)), oparts)
        return Check(
            "nerode_classes_match_oracle",
            PASS if ok else FAIL,
            {"domain_radius": dom, "margin": margin, "classes": len(oparts)},
        )
    return Check(
        "nerode_classes_match_oracle",
        INCONCLUSIVE,
        {"reason": f"oracle cone partition of ball({dom}) unstable up to margin {max_margin}"},
    )


def suite_cone(ctx: Context, R: int) -> SuiteResult:
    res = SuiteResult("cone", str(ctx.system), R)
    W, cp = ctx.W, ctx.cones
    ball = ctx.ball(R)
    try:
        gates = cp.gates()
    except AssertionError as exc:
        res.add("unique_shortest_per_part", False, reason=str(exc))
        return res
    res.add("unique_shortest_per_part", True, gates=len(gates), max_length=max(g.length for g in gates))

    states = ball_states(ball, cp.dfa)
    res.checks.append(_nerode_check(ctx, R // 2, R))

    bad_min = []
    not_unique = 0
    for part in _classes(states, ball.within(R)):
        om = oracle_part_minimum(ball, part)
        if isinstance(om, NotUnique):
            not_unique += 1
            continue
        if cp.gate(ball.elements[part[-1]]) != ball.elements[om]:
            bad_min.append(W.format_word(ball.word_of(part[-1])))
    res.add("oracle_part_minimum_unique", not_unique == 0, not_unique=not_unique)
    res.add("gate_matches_oracle", not bad_min, mismatches=bad_min[:5])

    big = ctx.ball(max(R, 2 * (R - 2)))
    thm = cp.verify_cone_theorems(big, R)
    res.add("smallest_element_per_part", thm.unique_minimum, states_seen=thm.states_seen)
    res.add("gates_closed_under_joins", thm.join_closed, joins_found=thm.joins_found)
    res.add("parts_convex", thm.convex, pairs=thm.pairs_checked, counterexamples=thm.counterexamples[:5])
    hnw = cp.verify_hnw(ball)
    res.add("gates_biject_with_minimal_states", hnw.ok, gates=hnw.gates, states=hnw.states,
            fixpoints_match=hnw.fixpoints_match)
    mono = cp.verify_monotone(ball, R)
    res.add("gate_monotone", mono.ok, pairs=mono.pairs, violations=mono.violations[:5])

    # stop rule: g is a gate iff each descent wall of g bounds the cone type part of g
    r = max(1, R // 2)
    bad_stop = []
    for i in ball.within(r):
        g = ball.elements[i]
        ginv = W.inverse(g)
        bw = boundary_walls(W, ginv, g.length + R)
        rule = all(wall in bw for _, wall in W.descent_walls(g))
        if rule != (cp.gate(g) == g):
            bad_stop.append(W.format_word(g.word))
        if not all(W.separates_from_id(wall.root, g) for wall in bw):
            bad_stop.append("wall not separating: " + W.format_word(g.word))
    res.add("boundary_stop_rule", not bad_stop, radius=r, mismatches=bad_stop[:5])
    return res


# --- shadows ------------------------------------------------------------------


def suite_shadow(ctx: Context, R: int) -> SuiteResult:
    res = SuiteResult("shadow", str(ctx.system), R)
    for label, B in (("M", ctx.shi.elements_M()), ("Gamma", ctx.cones.gates())):
        rep = verify_shadow(ctx.W, B, R)
        res.add(f"{label}_contains_S", rep.contains_S, missing=rep.missing_generators)
        res.add(f"{label}_suffix_closed", rep.suffix_closed, counterexamples=rep.suffix_counterexamples[:5])
        res.add(
            f"{label}_join_closed",
            rep.join_closed,
            joins_found=rep.joins_found,
            joins_not_found=rep.joins_not_found,
            counterexamples=rep.join_counterexamples[:5],
        )
    return res


# --- bipodality ---------------------------------------------------------------


def suite_bipodality(ctx: Context, R: int) -> SuiteResult:
    res = SuiteResult("bipodality", str(ctx.system), R)
    rep = verify_bipodality(ctx.W, R, ctx.ball(R))
    if rep.hypothesis_met == 0 and not rep.failures:
        res.checks.append(Check("bipodality", VACUOUS, rep.to_json()))
    else:
        res.add("bipodality", rep.ok, **rep.to_json())
    return res


# --- agreement ----------------------------------------------------------------


def suite_agreement(ctx: Context, R: int) -> SuiteResult:
    """Lengths, inversion walls and signatures: main path against the ball."""
    res = SuiteResult("agreement", str(ctx.system), R)
    W = ctx.W
    ball = ctx.ball(R)
    bad_len = [i for i, g in enumerate(ball.elements) if g.length != ball.depth[i]]
    res.add("lengths", not bad_len, elements=len(ball))
    bad_inv = []
    for i, g in enumerate(ball.elements):
        main = W.inversion_set(g)
        oracle = {ball.walls[w] for w in range(len(ball.walls)) if (ball.mask[i] >> w) & 1}
        if main != oracle:
            bad_inv.append(W.format_word(g.word))
    res.add("inversion_walls", not bad_inv, mismatches=bad_inv[:5])
    bad_words = [i for i, g in enumerate(ball.elements) if W.element(g.word) != g or len(g.word) != g.length]
    res.add("shortlex_words_reduced", not bad_words)
    try:
        ids = {ball.wall_index[b]: k for k, b in enumerate(ctx.rs.sigma) if b in ball.wall_index}
        osig = set(ctx.oracle_sigma)
    except Inconclusive as exc:
        res.checks.append(Check("signatures", INCONCLUSIVE, {"reason": str(exc)}))
        return res
    bad_sig = []
    for i, g in enumerate(ball.elements):
        main = ctx.shi.signature(g)
        oracle = frozenset(ids[w] for w in ids if (ball.mask[i] >> w) & 1 and ball.walls[w] in osig)
        if main != oracle or ctx.shi.state_signature(ctx.shi.state(g)) != main:
            bad_sig.append(W.format_word(g.word))
    res.add("signatures", not bad_sig, mismatches=bad_sig[:5])
    return res


_RUNNERS = {
    "automata": suite_automata,
    "shi": suite_shi,
    "cone": suite_cone,
    "shadow": suite_shadow,
    "bipodality": suite_bipodality,
    "agreement": suite_agreement,
}


def run_suite(ctx: Context, suite: str, radius: int) -> SuiteResult:
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    log.info("suite %s on %s, radius %d", suite, ctx.system, radius)
    try:
        return _RUNNERS[suite](ctx, radius)
    except (Inconclusive, BallCapExceeded, StateCapExceeded, SmallRootCapExceeded) as exc:
        # a larger cap or radius could settle the question
        res = SuiteResult(suite, str(ctx.system), radius)
        res.checks.append(Check(suite, INCONCLUSIVE, {"reason": str(exc)}))
        return res


def run_suites(ctx: Context, suites, radius: int) -> list[SuiteResult]:
    return [run_suite(ctx, s, radius) for s in suites]
