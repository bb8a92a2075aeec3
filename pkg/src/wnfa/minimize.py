"""Linear-time minimization of Wheeler NFAs.

The pipeline has three stages, all O(|E|) with label ranks bounded by the
alphabet size:

1. :func:`compute_extrema` scans counting-sorted edge lists to find, for
   every state, the extreme (label, source) pairs among its incoming edges
   and its set of outgoing labels.
2. :func:`boundary_bits` runs a single queue-driven propagation that marks
   each boundary between order-adjacent states that must separate.  The 0
   bits that survive encode the maximum order-respecting autobisimulation.
3. :func:`quotient` collapses each maximal 0-run into one state.

Stage 2 never enqueues a boundary index twice, which is both the linearity
argument and a testable invariant (at most n-1 enqueues per run).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import WheelerNfa, is_deterministic
from .relations import BoundaryBits, Relation

TRACE_SEED = "SEED"
TRACE_DEQUEUE = "DEQUEUE"
TRACE_SET_JMIN = "SET-from-jmin"
TRACE_SET_JMAX = "SET-from-jmax"


def _counting_pass(order: list[int], keys: list[int], key_max: int) -> list[int]:
    """One stable counting-sort pass of edge indices by ``keys``."""
    counts = [0] * (key_max + 1)
    for idx in order:
        counts[keys[idx]] += 1
    total = 0
    for k in range(key_max + 1):
        counts[k], total = total, total + counts[k]
    out = [0] * len(order)
    for idx in order:
        k = keys[idx]
        out[counts[k]] = idx
        counts[k] += 1
    return out


def _radix_order(edges, components) -> list[int]:
    """Edge indices sorted by the given (keys, key_max) components, major first."""
    order = list(range(len(edges)))
    for keys, key_max in reversed(components):
        order = _counting_pass(order, keys, key_max)
    return order


@dataclass(frozen=True)
class IncidenceExtrema:
    """Per-state incoming-edge extremes and outgoing-label sets.

    For state i >= 2 (and for state 1 when it has in-edges): ``a_min[i]`` /
    ``j_min[i]`` are the label and source of the (label, source)-least
    incoming edge, ``a_max[i]`` / ``j_max[i]`` of the greatest.  ``None``
    marks a state without incoming edges.  ``out_sets[i]`` is the sorted
    tuple of distinct labels leaving i, and ``z[i]`` (2 <= i <= n) records
    whether states i-1 and i differ in their outgoing-label sets.
    Index 0 of every array is padding.
    """

    a_min: tuple[int | None, ...]
    j_min: tuple[int | None, ...]
    a_max: tuple[int | None, ...]
    j_max: tuple[int | None, ...]
    out_sets: tuple[tuple[int, ...], ...]
    z: tuple[bool, ...]


def compute_extrema(a: WheelerNfa) -> IncidenceExtrema:
    n = a.n
    m = len(a.edges)
    sigma = max(len(a.alphabet), 1)
    src = [e[0] for e in a.edges]
    dst = [e[1] for e in a.edges]
    lab = [e[2] for e in a.edges]

    a_min: list[int | None] = [None] * (n + 1)
    j_min: list[int | None] = [None] * (n + 1)
    a_max: list[int | None] = [None] * (n + 1)
    j_max: list[int | None] = [None] * (n + 1)

    # In-edges sorted by (target, label, source): the first edge of each
    # target block is its (label, source) minimum, the last its maximum.
    by_in = _radix_order(a.edges, [(dst, n), (lab, sigma - 1), (src, n)])
    pos = 0
    while pos < m:
        t = dst[by_in[pos]]
        first = by_in[pos]
        while pos < m and dst[by_in[pos]] == t:
            last = by_in[pos]
            pos += 1
        a_min[t], j_min[t] = lab[first], src[first]
        a_max[t], j_max[t] = lab[last], src[last]

    # Out-edges sorted by (source, label): collapse each source block into
    # its distinct label tuple.
    out_sets: list[tuple[int, ...]] = [()] * (n + 1)
    by_out = _radix_order(a.edges, [(src, n), (lab, sigma - 1)])
    pos = 0
    while pos < m:
        s = src[by_out[pos]]
        labels: list[int] = []
        while pos < m and src[by_out[pos]] == s:
            cur = lab[by_out[pos]]
            if not labels or labels[-1] != cur:
                labels.append(cur)
            pos += 1
        out_sets[s] = tuple(labels)

    z = [False] * (n + 1)
    for i in range(2, n + 1):
        z[i] = out_sets[i - 1] != out_sets[i]

    return IncidenceExtrema(
        tuple(a_min), tuple(j_min), tuple(a_max), tuple(j_max), tuple(out_sets), tuple(z)
    )


def boundary_bits(a: WheelerNfa, trace: list | None = None) -> BoundaryBits:
    """Boundaries of the maximum order-respecting autobisimulation.

    Bit i (2 <= i <= n) ends up 1 exactly when states i-1 and i must be
    separated.  Seeds are the boundaries with an acceptance or
    outgoing-label disagreement; each seeded or derived split is enqueued
    once and propagated: splitting at i forces a split at ``j_min[i]`` (the
    least source feeding i with its least in-label, when that boundary
    exists) and just after ``j_max[i-1]`` (the greatest source feeding i-1
    with its greatest in-label).  The result equals the brute-force oracle;
    the differential tests enforce that.

    ``trace``, when given, receives (event, index) records in execution
    order: SEED, DEQUEUE, SET-from-jmin, SET-from-jmax.
    """
    n = a.n
    ex = compute_extrema(a)
    bits = [False] * (n + 1)
    queue: deque[int] = deque()

    def record(event: str, index: int):
        if trace is not None:
            trace.append((event, index))

    for i in range(2, n + 1):
        if ((i - 1) in a.finals) != (i in a.finals) or ex.z[i]:
            queue.append(i)
            bits[i] = True
            record(TRACE_SEED, i)

    while queue:
        i = queue.popleft()
        record(TRACE_DEQUEUE, i)
        jm = ex.j_min[i]
        if jm is not None and jm >= 2 and not bits[jm]:
            queue.append(jm)
            bits[jm] = True
            record(TRACE_SET_JMIN, jm)
        jx = ex.j_max[i - 1]
        if jx is not None and jx <= n - 1 and not bits[jx + 1]:
            queue.append(jx + 1)
            bits[jx + 1] = True
            record(TRACE_SET_JMAX, jx + 1)

    return BoundaryBits(n, tuple(bits[2 : n + 1]))


@dataclass(frozen=True)
class QuotientResult:
    """A quotient automaton plus the class map that produced it.

    ``class_map[p - 1]`` is the quotient position of input position p; it is
    monotone non-decreasing and onto 1..quotient.n, because classes are
    position intervals taken in order.
    """

    quotient: WheelerNfa
    class_map: tuple[int, ...]

    def as_relation(self) -> Relation:
        return Relation(
            len(self.class_map),
            self.quotient.n,
            frozenset((p, c) for p, c in enumerate(self.class_map, 1)),
        )


def quotient(a: WheelerNfa, bits: BoundaryBits) -> QuotientResult:
    """Collapse every maximal 0-run of ``bits`` into a single state.

    ``bits`` must encode an autobisimulation of ``a`` (the caller's
    responsibility; arrays from :func:`boundary_bits` or the oracle qualify).
    Edges and finals are the images of the originals, deduplicated by a
    counting sort over (source class, label, target class).  A deterministic
    input is asserted to stay deterministic.
    """
    n = a.n
    if bits.n != n:
        raise ValueError(f"bit array covers {bits.n} states, automaton has {n}")

    class_map = [0] * (n + 1)
    cls = 1
    for p in range(1, n + 1):
        if p > 1 and bits.bit(p):
            cls += 1
        class_map[p] = cls
    m = cls

    sigma = max(len(a.alphabet), 1)
    mapped = [(class_map[u], class_map[v], lb) for u, v, lb in a.edges]
    src = [e[0] for e in mapped]
    dst = [e[1] for e in mapped]
    lab = [e[2] for e in mapped]
    order = _radix_order(mapped, [(src, m), (lab, sigma - 1), (dst, m)])
    edges: list[tuple[int, int, int]] = []
    for idx in order:
        e = mapped[idx]
        if not edges or edges[-1] != e:
            edges.append(e)

    finals = frozenset(class_map[f] for f in a.finals)
    q = WheelerNfa(m, a.alphabet, tuple(edges), finals)
    if is_deterministic(a):
        assert is_deterministic(q), "quotient of a deterministic automaton went non-deterministic"
    return QuotientResult(q, tuple(class_map[1:]))


def minimize(a: WheelerNfa, trace: list | None = None) -> QuotientResult:
    """Quotient ``a`` by the maximum order-respecting autobisimulation.

    The result is the unique (up to isomorphism) state-minimal Wheeler NFA
    that is Wheeler-bisimilar to ``a``; minimizing it again is the identity.
    """
    return quotient(a, boundary_bits(a, trace))


def format_trace(trace) -> str:
    """Render trace records one per line, tab-separated."""
    return "".join(f"{event}\t{index}\n" for event, index in trace)
