"""Command-line front end: ``coxshadow <subcommand> --system ...``.

Exit codes: 0 success, 2 usage error, 3 inconclusive (ball too small or a
cap was hit), 4 a verified property failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .automata import (
    DEFAULT_MAX_STATES,
    Dfa,
    DfaFormatError,
    StateCapExceeded,
    brink_howlett,
    export_dot,
    export_json,
    growth_csv,
    import_json,
    minimize,
    word_growth,
)
from .conetype import ConeTypePartition, ball_states
from .core.group import CoxeterGroup
from .core.system import INF, CoxeterSystem, SystemParseError, parse_system
from .oracle import DEFAULT_MAX_BALL, Ball, BallCapExceeded, Inconclusive
from .render import UnsupportedSystem, render_svg
from .roots import RootSystem, SmallRootCapExceeded
from .shi import ShiPartition
from .verify import FAIL, INCONCLUSIVE, SUITES, Context, overall_status, run_suite

log = logging.getLogger("coxshadow")

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_FAIL = 0, 2, 3, 4
KINDS = ("brink_howlett", "minimal")


class UsageError(Exception):
    pass


# --- automaton cache ------------------------------------------------------------


class Cache:
    """JSON files named ``<matrix digest>-<kind>.json``; disabled without a directory."""

    def __init__(self, directory: str | None):
        self.dir = Path(directory) if directory else None
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    def path(self, system: CoxeterSystem, kind: str) -> Path | None:
        return None if self.dir is None else self.dir / f"{system.digest()}-{kind}.json"

    def load(self, system: CoxeterSystem, kind: str) -> str | None:
        p = self.path(system, kind)
        if p is None or not p.exists():
            return None
        return p.read_text()

    def store(self, system: CoxeterSystem, kind: str, text: str) -> None:
        p = self.path(system, kind)
        if p is not None:
            p.write_text(text)


def load_automata(system: CoxeterSystem, rs: RootSystem, cache: Cache, max_states: int) -> tuple[Dfa, Dfa]:
    """Brink-Howlett and minimal automata, read from the cache when present."""
    out = []
    for kind in KINDS:
        text = cache.load(system, kind)
        dfa = None
        if text is not None:
            try:
                dfa = import_json(text)
                log.info("loaded %s automaton from cache", kind)
            except DfaFormatError:
                log.warning("ignoring unreadable cache entry for %s", kind)
        if dfa is None:
            dfa = brink_howlett(rs, max_states) if kind == "brink_howlett" else minimize(out[0])
            cache.store(system, kind, export_json(dfa))
        out.append(dfa)
    return out[0], out[1]


# --- helpers --------------------------------------------------------------------


def _system(args) -> CoxeterSystem:
    try:
        return parse_system(args.system)
    except SystemParseError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _context(args, system: CoxeterSystem) -> Context:
    ctx = Context(system, args.max_states, args.max_ball)
    ctx._bh, ctx._minimal = load_automata(system, ctx.rs, Cache(args.cache_dir), args.max_states)
    return ctx


def _bond_text(m) -> str:
    return "inf" if m == INF else str(int(m))


# --- subcommands ----------------------------------------------------------------


def cmd_info(args) -> int:
    system = _system(args)
    W = CoxeterGroup(system)
    lines = [
        f"system: {system}",
        f"rank: {system.rank}",
        "bonds: ("
        + ", ".join(_bond_text(system.bonds[i][j]) for i, j in _bond_pairs(system.rank))
        + ")  pairs "
        + " ".join(f"{i + 1}{j + 1}" for i, j in _bond_pairs(system.rank)),
        f"N: {W.field.N}",
        f"field degree: {W.field.degree}",
        f"digest: {system.digest()}",
    ]
    text = Cache(args.cache_dir).load(system, "brink_howlett")
    if text is not None:
        bh = import_json(text)
        lines.append(f"small roots: {1 + max((max(m) for m in bh.meta if m), default=-1)}")
        lines.append(f"brink-howlett states: {bh.n_states}")
    _emit("\n".join(lines), None)
    return EXIT_OK


def _bond_pairs(n: int):
    """(1,2), (2,3), ..., then the remaining pairs: rank 3 prints (m12, m23, m13)."""
    chain = [(i, i + 1) for i in range(n - 1)]
    rest = [(i, j) for i in range(n) for j in range(i + 2, n)]
    return chain + rest


def cmd_roots(args) -> int:
    rs = RootSystem(CoxeterGroup(_system(args)))
    _emit(rs.to_csv() if args.format == "csv" else rs.to_json(), args.out)
    return EXIT_OK


def cmd_automaton(args) -> int:
    system = _system(args)
    bh, mn = load_automata(system, RootSystem(CoxeterGroup(system)), Cache(args.cache_dir), args.max_states)
    dfa = bh if args.kind == "brink_howlett" else mn
    if args.dot:
        Path(args.dot).write_text(export_dot(dfa))
    if args.json:
        Path(args.json).write_text(export_json(dfa))
    _emit(f"{args.kind}: {dfa.n_states} states", None)
    return EXIT_OK


def cmd_shi(args) -> int:
    ctx = _context(args, _system(args))
    ball = Ball(ctx.W, args.ball, args.max_ball) if args.ball is not None else None
    shi = ShiPartition(ctx.rs, ctx.bh)
    _emit(shi.parts_csv(ball) if args.format == "csv" else shi.parts_json(ball), args.out)
    if args.out:
        _emit(f"{ctx.bh.n_states} parts", None)
    return EXIT_OK


def cmd_cones(args) -> int:
    ctx = _context(args, _system(args))
    ball = Ball(ctx.W, args.ball, args.max_ball) if args.ball is not None else None
    cp = ConeTypePartition(ctx.rs, ctx.bh, ctx.minimal)
    _emit(cp.parts_csv(ball) if args.format == "csv" else cp.parts_json(ball), args.out)
    if args.dot:
        Path(args.dot).write_text(cp.dot())
    if args.out:
        _emit(f"{ctx.minimal.n_states} cone type parts", None)
    return EXIT_OK


def cmd_growth(args) -> int:
    ctx = _context(args, _system(args))
    counts = word_growth(ctx.minimal, args.max_length)
    if not args.elements:
        _emit(growth_csv(counts), args.out)
        return EXIT_OK
    ball = Ball(ctx.W, args.max_length, args.max_ball)
    layers = [len(layer) for layer in ball.layers] + [0] * (args.max_length + 1 - len(ball.layers))
    rows = ["length,reduced_words,elements"] + [f"{k},{c},{layers[k]}" for k, c in enumerate(counts)]
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def _suite_worker(payload):
    text, suite, radius, max_states, max_ball = payload
    ctx = Context(parse_system(text), max_states, max_ball)
    return run_suite(ctx, suite, radius)


def cmd_verify(args) -> int:
    system = _system(args)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(suites) > 1:
        payloads = [(system.to_text(), s, args.radius, args.max_states, args.max_ball) for s in suites]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_suite_worker, payloads))
    else:
        ctx = _context(args, system)
        results = [run_suite(ctx, s, args.radius) for s in suites]
    status = overall_status(r.status for r in results)
    report = {
        "system": system.to_text(),
        "radius": args.radius,
        "status": status,
        "suites": [r.to_json() for r in results],
        "failures": [
            {"suite": r.suite, "check": c.name, "detail": c.detail}
            for r in results
            for c in r.checks
            if c.status == FAIL
        ],
        "inconclusive": [
            {"suite": r.suite, "check": c.name, "detail": c.detail}
            for r in results
            for c in r.checks
            if c.status == INCONCLUSIVE
        ],
    }
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=1, default=str) + "\n")
    for r in results:
        _emit(f"{r.suite:<11} {r.status}", None)
    _emit(f"overall     {status}", None)
    return {FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(status, EXIT_OK)


def cmd_render(args) -> int:
    ctx = _context(args, _system(args))
    ball = Ball(ctx.W, args.radius, args.max_ball)
    dfa = ctx.bh if args.coloring == "shi" else ctx.minimal
    try:
        svg, n = render_svg(
            ctx.W, ball, ball_states(ball, dfa), dfa.n_states, f"{ctx.system} {args.coloring} parts, ball {args.radius}"
        )
    except UnsupportedSystem as exc:
        raise UsageError(str(exc)) from exc
    _emit(svg, args.out)
    if args.out:
        _emit(f"{n} parts in window", None)
    return EXIT_OK


def cmd_export(args) -> int:
    W = CoxeterGroup(_system(args))
    if args.words:
        try:
            elts = [W.parse_word(w) for w in args.words]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        elts = Ball(W, args.ball, args.max_ball).elements
    data = {"system": W.system.to_text(), "elements": [g.to_json() for g in elts]}
    _emit(json.dumps(data, indent=1), args.out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxshadow", description="Shi parts, cone types and Garside shadows.")
    p.add_argument("--cache-dir", help="directory for cached automata (JSON)")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, help="cap on automaton states")
    p.add_argument("--max-ball", type=int, default=DEFAULT_MAX_BALL, help="cap on ball size")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--system", required=True, help="preset name, triangle(p,q,r), I2(m) or 'rank N; m i j = v'")
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "summary of a Coxeter system")
    sp = add("roots", cmd_roots, "small roots")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")
    sp = add("automaton", cmd_automaton, "Brink-Howlett or minimal automaton")
    sp.add_argument("--kind", choices=KINDS, default="minimal")
    sp.add_argument("--dot")
    sp.add_argument("--json")
    sp = add("shi", cmd_shi, "Shi parts and their smallest elements")
    sp.add_argument("--ball", type=int, help="report part sizes in this ball")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")
    sp = add("cones", cmd_cones, "cone type parts and gates")
    sp.add_argument("--ball", type=int)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")
    sp.add_argument("--dot", help="minimal automaton with gate labels")
    sp = add("growth", cmd_growth, "reduced words per length")
    sp.add_argument("--max-length", type=int, default=10)
    sp.add_argument("--elements", action="store_true", help="add element counts from the ball")
    sp.add_argument("--out")
    sp = add("verify", cmd_verify, "property suites")
    sp.add_argument("--radius", type=int, default=8)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--report")
    sp = add("render", cmd_render, "SVG of parts (affine rank 3)")
    sp.add_argument("--radius", type=int, default=8)
    sp.add_argument("--coloring", choices=("shi", "cone"), default="shi")
    sp.add_argument("--out")
    sp = add("export", cmd_export, "elements as JSON")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--ball", type=int)
    group.add_argument("--words", nargs="+")
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    for flag in ("radius", "ball", "max_length"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            print(f"error: --{flag.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BallCapExceeded, StateCapExceeded, SmallRootCapExceeded, Inconclusive) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
