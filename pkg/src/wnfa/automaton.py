"""Core Wheeler NFA representation, text format, validation and acceptance.

A Wheeler NFA is stored with its states already arranged in Wheeler order:
state 1 is the initial state, and the order on positions 1..n is the claimed
Wheeler order.  Whether that claim actually holds (the two edge-ordering
axioms plus reachability and co-reachability) is decided by :func:`validate`,
never by the constructor.

Symbols are interned against an :class:`OrderedAlphabet`, so edge labels are
integer ranks and every label comparison is an integer comparison.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property


class ParseError(Exception):
    """Malformed ``.wnfa`` or ``.rel`` document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class OrderedAlphabet:
    """A finite symbol set with a fixed total order.

    ``symbols[r]`` is the token of rank ``r``; comparing ranks compares
    symbols.  Tokens are arbitrary non-empty strings without whitespace,
    which leaves room for generated symbol families such as ``#1 #2 ...``.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        seen = set()
        for tok in self.symbols:
            if not isinstance(tok, str) or not tok or tok.split() != [tok]:
                raise ValueError(f"bad symbol token {tok!r}")
            if tok in seen:
                raise ValueError(f"duplicate symbol {tok!r}")
            seen.add(tok)

    @cached_property
    def rank(self) -> dict[str, int]:
        return {tok: r for r, tok in enumerate(self.symbols)}

    def rank_of(self, token: str) -> int:
        try:
            return self.rank[token]
        except KeyError:
            raise ValueError(f"unknown symbol {token!r}") from None

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, token: str) -> bool:
        return token in self.rank


@dataclass(frozen=True)
class WheelerNfa:
    """An NFA whose states sit at positions 1..n of a claimed Wheeler order.

    Fields:
      n        -- number of states (>= 1); the initial state is position 1
      alphabet -- the ordered symbol set
      edges    -- (source, target, label-rank) triples, deduplicated and kept
                  sorted by (source, label, target)
      finals   -- accepting positions

    The constructor enforces only structural sanity (ranges, no duplicate
    edges).  Use :func:`validate` to check the Wheeler axioms and the
    reachability assumptions.
    """

    n: int
    alphabet: OrderedAlphabet
    edges: tuple[tuple[int, int, int], ...]
    finals: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("state count must be >= 1")
        sigma = len(self.alphabet)
        edges = [tuple(e) for e in self.edges]
        for u, v, a in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")
            if not (0 <= a < sigma):
                raise ValueError(f"edge label rank {a} out of range")
        edges.sort(key=lambda e: (e[0], e[2], e[1]))
        for prev, cur in zip(edges, edges[1:]):
            if prev == cur:
                u, v, a = cur
                raise ValueError(
                    f"duplicate edge ({u}, {v}, {self.alphabet.symbols[a]!r})"
                )
        object.__setattr__(self, "edges", tuple(edges))
        finals = frozenset(self.finals)
        for f in finals:
            if not (1 <= f <= self.n):
                raise ValueError(f"final state {f} out of range 1..{self.n}")
        object.__setattr__(self, "finals", finals)

    def out_edges(self, u: int) -> tuple[tuple[int, int, int], ...]:
        return tuple(e for e in self.edges if e[0] == u)


class ViolationKind(enum.Enum):
    NOT_REACHABLE = "NotReachable"
    NOT_CO_REACHABLE = "NotCoReachable"
    AXIOM2 = "Axiom2"
    AXIOM3 = "Axiom3"
    DUPLICATE_EDGE = "DuplicateEdge"
    BAD_INITIAL = "BadInitial"


@dataclass(frozen=True)
class Violation:
    """One validation problem: a kind plus the offending state or edge pair."""

    kind: ViolationKind
    witness: tuple

    def describe(self, a: WheelerNfa) -> str:
        sym = a.alphabet.symbols

        def edge(e):
            return f"({e[0]} -> {e[1]} on {sym[e[2]]})"

        k = self.kind
        if k is ViolationKind.NOT_REACHABLE:
            return f"{k.value}: state {self.witness[0]} has no path from the initial state"
        if k is ViolationKind.NOT_CO_REACHABLE:
            return f"{k.value}: state {self.witness[0]} has no path to a final state"
        if k is ViolationKind.AXIOM2:
            e1, e2 = self.witness
            return (
                f"{k.value}: edges {edge(e1)} and {edge(e2)} order targets "
                f"{e1[1]} < {e2[1]} but labels {sym[e1[2]]} > {sym[e2[2]]}"
            )
        if k is ViolationKind.AXIOM3:
            e1, e2 = self.witness
            return (
                f"{k.value}: equal-label edges {edge(e1)} and {edge(e2)} cross: "
                f"targets {e1[1]} < {e2[1]} but sources {e1[0]} > {e2[0]}"
            )
        if k is ViolationKind.DUPLICATE_EDGE:
            return f"{k.value}: edge {edge(self.witness[0])} repeated"
        return f"{k.value}: {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self, a: WheelerNfa) -> str:
        if self.ok:
            return "ok"
        return "\n".join(v.describe(a) for v in self.violations)


def _successors(a: WheelerNfa) -> list[dict[int, list[int]]]:
    """Per-state map label-rank -> target list (index 0 unused)."""
    out: list[dict[int, list[int]]] = [dict() for _ in range(a.n + 1)]
    for u, v, lab in a.edges:
        out[u].setdefault(lab, []).append(v)
    return out


def _reachable(a: WheelerNfa) -> set[int]:
    seen = {1}
    stack = [1]
    fwd: list[list[int]] = [[] for _ in range(a.n + 1)]
    for u, v, _ in a.edges:
        fwd[u].append(v)
    while stack:
        u = stack.pop()
        for v in fwd[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _co_reachable(a: WheelerNfa) -> set[int]:
    seen = set(a.finals)
    stack = list(a.finals)
    back: list[list[int]] = [[] for _ in range(a.n + 1)]
    for u, v, _ in a.edges:
        back[v].append(u)
    while stack:
        v = stack.pop()
        for u in back[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def validate(a: WheelerNfa) -> ValidationReport:
    """Check that the position order of ``a`` really is a Wheeler order.

    Reports every violation found:

    * a state with no path from position 1, or no path to a final state;
    * a pair of edges whose targets are ordered but whose labels are not
      (Axiom 2);
    * a pair of equally labeled edges that cross (Axiom 3).

    Both axiom checks scan edges sorted by (label, target, source); a
    violating pair exists iff one exists between order-adjacent entries of
    that sorted sequence, so the checks cost O(|E| log |E|) instead of
    comparing all pairs.  An empty report means ``a`` is a Wheeler NFA whose
    Wheeler order is the position order.
    """
    violations: list[Violation] = []

    # Duplicates cannot survive the constructor; kept as a defensive check
    # against instances produced by dataclasses.replace-style surgery.
    by_key = sorted(a.edges)
    for prev, cur in zip(by_key, by_key[1:]):
        if prev == cur:
            violations.append(Violation(ViolationKind.DUPLICATE_EDGE, (cur,)))

    reach = _reachable(a)
    for u in range(1, a.n + 1):
        if u not in reach:
            violations.append(Violation(ViolationKind.NOT_REACHABLE, (u,)))
    co = _co_reachable(a)
    for u in range(1, a.n + 1):
        if u not in co:
            violations.append(Violation(ViolationKind.NOT_CO_REACHABLE, (u,)))

    # (label, target, source) order: within a label block targets ascend, so
    # Axiom 2 reduces to "targets never decrease across a label boundary" and
    # Axiom 3 to "sources never decrease when the target strictly increases
    # inside one block".
    ordered = sorted(a.edges, key=lambda e: (e[2], e[1], e[0]))
    for e1, e2 in zip(ordered, ordered[1:]):
        u1, v1, a1 = e1
        u2, v2, a2 = e2
        if a1 != a2:
            if v2 < v1:
                # smaller target carries the strictly larger label
                violations.append(Violation(ViolationKind.AXIOM2, (e2, e1)))
        elif v1 < v2 and u1 > u2:
            violations.append(Violation(ViolationKind.AXIOM3, (e1, e2)))

    return ValidationReport(tuple(violations))


def is_deterministic(a: WheelerNfa) -> bool:
    seen = set()
    for u, _, lab in a.edges:
        if (u, lab) in seen:
            return False
        seen.add((u, lab))
    return True


def _word_tokens(word) -> list[str]:
    # A str is a sequence of one-character tokens; anything else is an
    # iterable of tokens (needed for multi-character symbols like "#3").
    return list(word)


def accepts(a: WheelerNfa, word) -> bool:
    """Decide word membership by tracking the reachable state subset.

    ``word`` is a string (one token per character) or an iterable of tokens.
    Raises ValueError on tokens outside the alphabet.
    """
    ranks = [a.alphabet.rank_of(tok) for tok in _word_tokens(word)]
    succ = _successors(a)
    current = {1}
    for r in ranks:
        current = {v for u in current for v in succ[u].get(r, ())}
        if not current:
            return False
    return any(u in a.finals for u in current)


# --------------------------------------------------------------------------
# .wnfa text format
#
#   alphabet <tok1> <tok2> ...      (declares the symbol order, left-to-right)
#   states <n>
#   final <i1> <i2> ...             (possibly no indices)
#   edge <src> <dst> <tok>          (one line per edge, 1-based positions)
#
# Lines whose first non-blank character is '#' are comments.  The initial
# state is always position 1; an explicit "initial" line is rejected.
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\S+")


def _lex(line: str) -> list[tuple[str, int]]:
    if line.lstrip().startswith("#"):
        return []
    return [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]


def _parse_int(tok: str, what: str, lineno: int, col: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", lineno, col) from None


def parse_wnfa(text: str) -> WheelerNfa:
    """Parse a ``.wnfa`` document into a :class:`WheelerNfa`.

    Raises :class:`ParseError` (with line and column) on syntax errors,
    unknown symbols, out-of-range state indices, duplicate edges, or a
    missing header.
    """
    alphabet: OrderedAlphabet | None = None
    n: int | None = None
    finals: frozenset[int] | None = None
    edges: list[tuple[int, int, int]] = []
    seen_edges: set[tuple[int, int, int]] = set()
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), 1):
        last_line = lineno
        toks = _lex(raw)
        if not toks:
            continue
        kw, kwcol = toks[0]
        if kw == "alphabet":
            if alphabet is not None:
                raise ParseError("repeated alphabet line", lineno, kwcol)
            try:
                alphabet = OrderedAlphabet(tuple(t for t, _ in toks[1:]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, kwcol) from None
        elif kw == "states":
            if alphabet is None:
                raise ParseError("states line before alphabet line", lineno, kwcol)
            if n is not None:
                raise ParseError("repeated states line", lineno, kwcol)
            if len(toks) != 2:
                raise ParseError("states line takes exactly one count", lineno, kwcol)
            n = _parse_int(toks[1][0], "state count", lineno, toks[1][1])
            if n < 1:
                raise ParseError("state count must be >= 1", lineno, toks[1][1])
        elif kw == "final":
            if n is None:
                raise ParseError("final line before states line", lineno, kwcol)
            if finals is not None:
                raise ParseError("repeated final line", lineno, kwcol)
            acc = set()
            for tok, col in toks[1:]:
                i = _parse_int(tok, "state index", lineno, col)
                if not (1 <= i <= n):
                    raise ParseError(f"state index {i} out of range 1..{n}", lineno, col)
                acc.add(i)
            finals = frozenset(acc)
        elif kw == "edge":
            if finals is None:
                raise ParseError("edge line before final line", lineno, kwcol)
            if len(toks) != 4:
                raise ParseError("edge line takes: edge <src> <dst> <tok>", lineno, kwcol)
            (s_tok, s_col), (d_tok, d_col), (l_tok, l_col) = toks[1], toks[2], toks[3]
            src = _parse_int(s_tok, "state index", lineno, s_col)
            dst = _parse_int(d_tok, "state index", lineno, d_col)
            assert n is not None and alphabet is not None
            if not (1 <= src <= n):
                raise ParseError(f"state index {src} out of range 1..{n}", lineno, s_col)
            if not (1 <= dst <= n):
                raise ParseError(f"state index {dst} out of range 1..{n}", lineno, d_col)
            if l_tok not in alphabet:
                raise ParseError(f"unknown symbol {l_tok!r}", lineno, l_col)
            e = (src, dst, alphabet.rank_of(l_tok))
            if e in seen_edges:
                raise ParseError(
                    f"duplicate edge {src} {dst} {l_tok}", lineno, kwcol
                )
            seen_edges.add(e)
            edges.append(e)
        elif kw == "initial":
            raise ParseError(
                "unsupported 'initial' line: the initial state is always position 1",
                lineno,
                kwcol,
            )
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno, kwcol)

    if alphabet is None:
        raise ParseError("missing alphabet line", last_line + 1)
    if n is None:
        raise ParseError("missing states line", last_line + 1)
    if finals is None:
        raise ParseError("missing final line", last_line + 1)
    return WheelerNfa(n, alphabet, tuple(edges), finals)


def serialize_wnfa(a: WheelerNfa) -> str:
    """Render the canonical ``.wnfa`` document for ``a``.

    The alphabet line lists symbols in rank order and edges come sorted by
    (source, label, target), so equal automata serialize identically and
    ``parse_wnfa(serialize_wnfa(a)) == a``.
    """
    lines = [
        ("alphabet " + " ".join(a.alphabet.symbols)).rstrip(),
        f"states {a.n}",
        ("final " + " ".join(str(i) for i in sorted(a.finals))).rstrip(),
    ]
    for u, v, lab in a.edges:
        lines.append(f"edge {u} {v} {a.alphabet.symbols[lab]}")
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: WheelerNfa) -> str:
    """Graphviz rendering: one node per position, double circle for finals."""
    out = ["digraph wnfa {", "  rankdir=LR;"]
    for i in range(1, a.n + 1):
        shape = "doublecircle" if i in a.finals else "circle"
        out.append(f"  {i} [shape={shape}];")
    for u, v, lab in a.edges:
        out.append(f"  {u} -> {v} [label={_dot_quote(a.alphabet.symbols[lab])}];")
    out.append("}")
    return "\n".join(out) + "\n"
