"""Partial DFAs over the generators: Brink-Howlett construction, minimization,
equivalence, word growth and DOT/JSON exchange.

All states are accepting; a missing transition means the word is rejected.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import deque
from dataclasses import dataclass

from .roots import RootSystem

__all__ = [
    "Dfa",
    "DfaFormatError",
    "StateCapExceeded",
    "brink_howlett",
    "minimize",
    "accepts",
    "run",
    "equivalent",
    "word_growth",
    "export_dot",
    "export_json",
    "import_dot",
    "import_json",
    "growth_csv",
]

DEFAULT_MAX_STATES = 10**6


class StateCapExceeded(RuntimeError):
    pass


class DfaFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Dfa:
    """``trans[q][s]`` is the target state or -1; ``meta[q]`` is a tuple of ints."""

    alphabet: tuple[str, ...]
    start: int
    trans: tuple[tuple[int, ...], ...]
    meta: tuple[tuple[int, ...], ...]
    kind: str = ""

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def __len__(self) -> int:
        return len(self.trans)

    def step(self, q: int, s: int) -> int:
        return self.trans[q][s]


def _canonical(alphabet, start, trans, meta, kind) -> Dfa:
    """Renumber reachable states in BFS order (letters in alphabet order)."""
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for t in trans[q]:
            if t >= 0 and t not in order:
                order[t] = len(order)
                queue.append(t)
    inv = sorted(order, key=order.get)
    new_trans = tuple(tuple(order[t] if t >= 0 else -1 for t in trans[q]) for q in inv)
    new_meta = tuple(tuple(meta[q]) for q in inv)
    return Dfa(tuple(alphabet), 0, new_trans, new_meta, kind)


def brink_howlett(rs: RootSystem, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    """Automaton of reduced words whose states are sets of small roots.

    From state A, letter s is allowed iff alpha_s is not in A; the target is
    {alpha_s} together with the small images s(gamma), gamma in A.  Reading a
    reduced word of x reaches the set of small roots sent negative by x,
    i.e. the elementary walls separating id from x^-1.
    """
    W = rs.W
    table = rs.table
    start = frozenset()
    ids = {start: 0}
    states = [start]
    trans: list[list[int]] = []
    queue = deque([start])
    while queue:
        A = queue.popleft()
        row = []
        for s in range(W.rank):
            a_s = rs.simple_index[s]
            if a_s in A:
                row.append(-1)
                continue
            target = {a_s}
            for a in A:
                b = table.entries[a][s]
                if b >= 0:
                    target.add(b)
            target = frozenset(target)
            if target not in ids:
                ids[target] = len(states)
                states.append(target)
                if len(states) > max_states:
                    raise StateCapExceeded(f"Brink-Howlett automaton exceeds {max_states} states")
                queue.append(target)
            row.append(ids[target])
        trans.append(row)
    meta = [tuple(sorted(A)) for A in states]
    return _canonical(W.system.labels, 0, trans, meta, "brink_howlett")


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement with an implicit dead state.

    ``meta`` of the result lists, per state, the input states it merges.
    """
    n = dfa.n_states
    k = len(dfa.alphabet)
    dead = n
    # completed transition function including the dead sink
    delta = [[t if t >= 0 else dead for t in row] for row in dfa.trans] + [[dead] * k]
    preimage = [[[] for _ in range(n + 1)] for _ in range(k)]
    for q in range(n + 1):
        for s in range(k):
            preimage[s][delta[q][s]].append(q)

    block_of = [0] * n + [1]
    blocks: list[set[int]] = [set(range(n)), {dead}]
    if n == 0:
        blocks = [{dead}]
        block_of = [0]
    work = {(min(range(len(blocks)), key=lambda b: len(blocks[b])), s) for s in range(k)}
    while work:
        b, s = work.pop()
        splitter = blocks[b]
        pre = set()
        for q in splitter:
            pre.update(preimage[s][q])
        touched: dict[int, set[int]] = {}
        for q in pre:
            touched.setdefault(block_of[q], set()).add(q)
        for c, inside in touched.items():
            if len(inside) == len(blocks[c]):
                continue
            outside = blocks[c] - inside
            blocks[c] = inside
            new = len(blocks)
            blocks.append(outside)
            for q in outside:
                block_of[q] = new
            for t in range(k):
                if (c, t) in work:
                    work.add((new, t))
                else:
                    work.add((c, t) if len(inside) <= len(outside) else (new, t))

    dead_block = block_of[dead]
    live = [b for b in range(len(blocks)) if b != dead_block]
    renum = {b: i for i, b in enumerate(live)}
    trans = []
    meta = []
    for b in live:
        rep = min(blocks[b])
        trans.append(
            [renum[block_of[delta[rep][s]]] if block_of[delta[rep][s]] != dead_block else -1 for s in range(k)]
        )
        meta.append(tuple(sorted(blocks[b])))
    return _canonical(dfa.alphabet, renum[block_of[dfa.start]], trans, meta, "minimal")


def run(dfa: Dfa, word) -> int:
    """State reached by reading ``word`` (generator indices), or -1 if rejected."""
    q = dfa.start
    for s in word:
        q = dfa.trans[q][s]
        if q < 0:
            return -1
    return q


def accepts(dfa: Dfa, word) -> bool:
    return run(dfa, word) >= 0


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Exact language equality of two prefix-closed all-accepting automata."""
    k = max(len(d1.alphabet), len(d2.alphabet))
    seen = {(d1.start, d2.start)}
    queue = deque(seen)
    while queue:
        p, q = queue.popleft()
        for s in range(k):
            a = d1.trans[p][s] if s < len(d1.alphabet) else -1
            b = d2.trans[q][s] if s < len(d2.alphabet) else -1
            if (a < 0) != (b < 0):
                return False
            if a >= 0 and (a, b) not in seen:
                seen.add((a, b))
                queue.append((a, b))
    return True


def word_growth(dfa: Dfa, nmax: int) -> list[int]:
    """Number of accepted words of each length 0..nmax (transfer-matrix iteration)."""
    counts = [0] * dfa.n_states
    counts[dfa.start] = 1
    out = [1]
    for _ in range(nmax):
        nxt = [0] * dfa.n_states
        for q, c in enumerate(counts):
            if c:
                for t in dfa.trans[q]:
                    if t >= 0:
                        nxt[t] += c
        counts = nxt
        out.append(sum(counts))
    return out


def growth_csv(counts: list[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length", "count"])
    for i, c in enumerate(counts):
        w.writerow([i, c])
    return buf.getvalue()


def _meta_text(m) -> str:
    return ",".join(str(x) for x in m)


def export_dot(dfa: Dfa, labels: list[str] | None = None) -> str:
    """DOT text; state labels default to the canonical signature in ``meta``."""
    lines = [
        f'digraph "{dfa.kind or "dfa"}" {{',
        "  rankdir=LR;",
        f'  alphabet="{" ".join(dfa.alphabet)}";',
        '  __start [shape=point, label=""];',
        f"  __start -> q{dfa.start};",
    ]
    for q in range(dfa.n_states):
        label = labels[q] if labels is not None else "{" + _meta_text(dfa.meta[q]) + "}"
        lines.append(f'  q{q} [label="{label}", meta="{_meta_text(dfa.meta[q])}"];')
    for q, row in enumerate(dfa.trans):
        for s, t in enumerate(row):
            if t >= 0:
                lines.append(f'  q{q} -> q{t} [label="{dfa.alphabet[s]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_HEAD = re.compile(r'^digraph\s+"([^"]*)"\s*\{')
_DOT_ALPHA = re.compile(r'^alphabet="([^"]*)";$')
_DOT_START = re.compile(r"^__start\s*->\s*q(\d+);$")
_DOT_NODE = re.compile(r'^q(\d+)\s*\[label="[^"]*",\s*meta="([^"]*)"\];$')
_DOT_EDGE = re.compile(r'^q(\d+)\s*->\s*q(\d+)\s*\[label="([^"]*)"\];$')


def import_dot(text: str) -> Dfa:
    """Inverse of :func:`export_dot`."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not (m := _DOT_HEAD.match(lines[0])):
        raise DfaFormatError("not a DFA digraph")
    kind = m.group(1)
    kind = "" if kind == "dfa" else kind
    alphabet = None
    start = None
    meta: dict[int, tuple[int, ...]] = {}
    edges = []
    for ln in lines[1:]:
        if ln in ("}", "rankdir=LR;") or ln.startswith("__start ["):
            continue
        if (m := _DOT_ALPHA.match(ln)) is not None:
            alphabet = tuple(m.group(1).split())
        elif (m := _DOT_START.match(ln)) is not None:
            start = int(m.group(1))
        elif (m := _DOT_NODE.match(ln)) is not None:
            meta[int(m.group(1))] = tuple(int(x) for x in m.group(2).split(",") if x)
        elif (m := _DOT_EDGE.match(ln)) is not None:
            edges.append((int(m.group(1)), m.group(3), int(m.group(2))))
        else:
            raise DfaFormatError(f"unrecognized DOT line: {ln!r}")
    if alphabet is None or start is None:
        raise DfaFormatError("missing alphabet or start state")
    return _assemble(alphabet, start, len(meta), edges, [meta.get(q, ()) for q in range(len(meta))], kind)


def _assemble(alphabet, start, n, edges, meta, kind) -> Dfa:
    letter = {a: i for i, a in enumerate(alphabet)}
    trans = [[-1] * len(alphabet) for _ in range(n)]
    for q, a, t in edges:
        if a not in letter:
            raise DfaFormatError(f"unknown letter {a!r}")
        if not (0 <= q < n and 0 <= t < n):
            raise DfaFormatError("transition references an unknown state")
        if trans[q][letter[a]] not in (-1, t):
            raise DfaFormatError("nondeterministic transition")
        trans[q][letter[a]] = t
    if not 0 <= start < n:
        raise DfaFormatError("start state out of range")
    return Dfa(tuple(alphabet), start, tuple(tuple(r) for r in trans), tuple(tuple(m) for m in meta), kind)


def export_json(dfa: Dfa) -> str:
    data = {
        "kind": dfa.kind,
        "alphabet": list(dfa.alphabet),
        "states": list(range(dfa.n_states)),
        "start": dfa.start,
        "transitions": [
            [q, dfa.alphabet[s], t] for q, row in enumerate(dfa.trans) for s, t in enumerate(row) if t >= 0
        ],
        "meta": [list(m) for m in dfa.meta],
    }
    return json.dumps(data, indent=1)


def import_json(text: str) -> Dfa:
    try:
        data = json.loads(text)
        states = data["states"]
        if states != list(range(len(states))):
            raise DfaFormatError("states must be 0..n-1")
        return _assemble(
            data["alphabet"],
            data["start"],
            len(states),
            [tuple(e) for e in data["transitions"]],
            data["meta"],
            data.get("kind", ""),
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, DfaFormatError):
            raise
        raise DfaFormatError(f"malformed automaton JSON: {exc}") from exc
