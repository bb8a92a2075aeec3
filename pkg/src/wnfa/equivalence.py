"""Deciding Wheeler-bisimilarity and comparing languages.

Two Wheeler NFAs admit a Wheeler bisimulation between them iff their
minimized forms are isomorphic, and because both sides carry a total order
there is only one candidate isomorphism: the position-identity map.  That
turns the whole decision into minimize + compare, and a concrete witness
relation can be assembled from the two class maps when the answer is yes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automaton import OrderedAlphabet, WheelerNfa, is_deterministic
from .generators import gen_random_wheeler
from .minimize import minimize
from .relations import Relation, compose, inverse

REASON_SIZE_MISMATCH = "SizeMismatch"
REASON_NOT_ISOMORPHIC = "NotIsomorphic"
REASON_ISOMORPHIC = "Isomorphic"


@dataclass(frozen=True)
class EquivalenceVerdict:
    bisimilar: bool
    witness: Relation | None
    reason: str


def _token_edges(a: WheelerNfa) -> list[tuple[int, str, int]]:
    return sorted((u, a.alphabet.symbols[lab], v) for u, v, lab in a.edges)


def order_respecting_iso(a: WheelerNfa, a2: WheelerNfa) -> bool:
    """Is the position-identity map an isomorphism between ``a`` and ``a2``?

    For Wheeler NFAs this is the only map that can be one, since an
    isomorphism between ordered automata must respect both orders.
    """
    if a.n != a2.n:
        return False
    if a.finals != a2.finals:
        return False
    return _token_edges(a) == _token_edges(a2)


def wheeler_bisimilar(a: WheelerNfa, a2: WheelerNfa) -> EquivalenceVerdict:
    """Decide whether some Wheeler bisimulation relates ``a`` and ``a2``.

    Minimizes both sides and compares the quotients under the unique
    order-respecting candidate map.  When they match, the returned witness
    is (inverse of a2's class map) o (identity on the quotient) o (a's
    class map), which the Wheeler-bisimulation checker accepts.
    """
    r1 = minimize(a)
    r2 = minimize(a2)
    if r1.quotient.n != r2.quotient.n:
        return EquivalenceVerdict(False, None, REASON_SIZE_MISMATCH)
    if not order_respecting_iso(r1.quotient, r2.quotient):
        return EquivalenceVerdict(False, None, REASON_NOT_ISOMORPHIC)
    iso = Relation.identity(r1.quotient.n)
    witness = compose(inverse(r2.as_relation()), compose(iso, r1.as_relation()))
    return EquivalenceVerdict(True, witness, REASON_ISOMORPHIC)


def dfa_language_bisimulation(a: WheelerNfa, a2: WheelerNfa) -> Relation:
    """Relate states of two Wheeler DFAs reached by a common input string.

    Product reachability from (1, 1) following equal tokens.  When the two
    DFAs recognize the same language, the result is a Wheeler bisimulation;
    callers confirm by running it through the checker, and a check failure
    is the signal that the languages differ.
    """
    for side in (a, a2):
        if not is_deterministic(side):
            raise ValueError("dfa_language_bisimulation needs deterministic inputs")

    def token_step(x: WheelerNfa) -> list[dict[str, int]]:
        step: list[dict[str, int]] = [dict() for _ in range(x.n + 1)]
        for u, v, lab in x.edges:
            step[u][x.alphabet.symbols[lab]] = v
        return step

    step1 = token_step(a)
    step2 = token_step(a2)
    seen = {(1, 1)}
    stack = [(1, 1)]
    while stack:
        u, u2 = stack.pop()
        for tok, v in step1[u].items():
            v2 = step2[u2].get(tok)
            if v2 is not None and (v, v2) not in seen:
                seen.add((v, v2))
                stack.append((v, v2))
    return Relation(a.n, a2.n, frozenset(seen))


def language_sample_equal(a: WheelerNfa, a2: WheelerNfa, max_len: int) -> bool:
    """Do the two automata accept exactly the same words up to ``max_len``?

    Breadth-first walk of the word tree carrying the reachable state subset
    of each automaton; a branch is pruned once both subsets are empty (the
    word then leads nowhere in either language) and repeated subset pairs
    are not re-expanded.
    """
    tokens = sorted(set(a.alphabet.symbols) | set(a2.alphabet.symbols))

    def token_succ(x: WheelerNfa) -> list[dict[str, list[int]]]:
        succ: list[dict[str, list[int]]] = [dict() for _ in range(x.n + 1)]
        for u, v, lab in x.edges:
            succ[u].setdefault(x.alphabet.symbols[lab], []).append(v)
        return succ

    succ1 = token_succ(a)
    succ2 = token_succ(a2)

    start = (frozenset({1}), frozenset({1}))
    frontier = [start]
    visited = {start}
    for _ in range(max_len + 1):
        next_frontier = []
        for s1, s2 in frontier:
            if any(u in a.finals for u in s1) != any(u in a2.finals for u in s2):
                return False
            for tok in tokens:
                t1 = frozenset(v for u in s1 for v in succ1[u].get(tok, ()))
                t2 = frozenset(v for u in s2 for v in succ2[u].get(tok, ()))
                if not t1 and not t2:
                    continue
                node = (t1, t2)
                if node not in visited:
                    visited.add(node)
                    next_frontier.append(node)
        frontier = next_frontier
    return True


# --------------------------------------------------------------------------
# Equal-language Wheeler DFA pairs, via self-loop unrolling.
# --------------------------------------------------------------------------


def unrollable_loops(a: WheelerNfa) -> list[tuple[int, int]]:
    """Self-loops (state, label) that :func:`unroll_self_loop` may expand."""
    in_labels: list[set[int]] = [set() for _ in range(a.n + 1)]
    in_sources: list[dict[int, list[int]]] = [dict() for _ in range(a.n + 1)]
    out_by_label: list[dict[int, list[int]]] = [dict() for _ in range(a.n + 1)]
    for u, v, lab in a.edges:
        in_labels[v].add(lab)
        in_sources[v].setdefault(lab, []).append(u)
        out_by_label[u].setdefault(lab, []).append(v)
    found = []
    for v in range(1, a.n + 1):
        for lab, targets in out_by_label[v].items():
            if targets != [v]:
                continue  # the label must leave v only through the self-loop
            if lab != max(in_labels[v]):
                continue  # the new copy sits right after v, so its single
                # in-label must not undercut v's other in-labels
            if any(u > v for u in in_sources[v][lab]):
                continue  # crossing sources would break the equal-label rule
            # the copy replicates v's other out-edges, so each must be the
            # only edge of its label (a duplicated label would cross) and
            # not a second self-loop (its copy would feed the new state a
            # smaller in-label)
            ok = all(
                len(others) == 1 and others != [v]
                for lb, others in out_by_label[v].items()
                if lb != lab
            )
            if ok:
                found.append((v, lab))
    return found


def unroll_self_loop(a: WheelerNfa, v: int, lab: int) -> WheelerNfa:
    """Split state ``v``'s self-loop on ``lab`` into a two-state chain.

    A new state is inserted at position v+1: the loop edge is redirected to
    it, it loops on ``lab`` itself, and it copies every other outgoing edge
    and the acceptance status of ``v``.  The construction preserves the
    language, the Wheeler order, and determinism; it is only sound for the
    loops reported by :func:`unrollable_loops`.
    """
    if (v, lab) not in unrollable_loops(a):
        raise ValueError(f"self-loop ({v}, {a.alphabet.symbols[lab]}) is not unrollable")
    w = v + 1

    def shift(x: int) -> int:
        return x if x <= v else x + 1

    edges = []
    for x, y, lb in a.edges:
        if (x, y, lb) == (v, v, lab):
            edges.append((v, w, lab))
        else:
            edges.append((shift(x), shift(y), lb))
        if x == v and (y, lb) != (v, lab):
            # the copy replicates v's non-loop behaviour
            edges.append((w, w if y == v else shift(y), lb))
    edges.append((w, w, lab))

    finals = {shift(f) for f in a.finals}
    if v in a.finals:
        finals.add(w)
    return WheelerNfa(a.n + 1, a.alphabet, tuple(edges), frozenset(finals))


def _addable_self_loops(a: WheelerNfa) -> list[tuple[int, int]]:
    """(state, label) pairs where a new self-loop keeps the automaton a
    Wheeler DFA and becomes unrollable afterwards."""
    out_pairs = {(u, lab) for u, _, lab in a.edges}
    in_labels: list[set[int]] = [set() for _ in range(a.n + 1)]
    by_label: dict[int, list[tuple[int, int]]] = {}
    for u, v, lab in a.edges:
        in_labels[v].add(lab)
        by_label.setdefault(lab, []).append((u, v))
    found = []
    for v in range(1, a.n + 1):
        if not in_labels[v]:
            continue
        lab = max(in_labels[v])
        if (v, lab) in out_pairs:
            continue
        ok = all(
            (x <= v if t <= v else x >= v) for x, t in by_label.get(lab, ())
        )
        if ok:
            found.append((v, lab))
    return found


def gen_equal_language_dfa_pair(
    seed: int, n: int = 8, sigma: int = 3, unrolls: int = 2
) -> tuple[WheelerNfa, WheelerNfa]:
    """Two Wheeler DFAs with the same language but usually different shapes.

    A random Wheeler DFA gains a couple of sound self-loops, then each side
    unrolls independently chosen loops; when no loop qualifies a side stays
    as drawn.  Deterministic per seed.
    """
    rng = random.Random(seed)
    base = gen_random_wheeler(n, 2, sigma, rng.randrange(2**30), deterministic=True)
    for _ in range(2):
        spots = _addable_self_loops(base)
        if not spots:
            break
        v, lab = spots[rng.randrange(len(spots))]
        base = WheelerNfa(
            base.n, base.alphabet, base.edges + ((v, v, lab),), base.finals
        )

    def expand(x: WheelerNfa) -> WheelerNfa:
        for _ in range(rng.randint(0, unrolls)):
            loops = unrollable_loops(x)
            if not loops:
                break
            v, lab = loops[rng.randrange(len(loops))]
            x = unroll_self_loop(x, v, lab)
        return x

    return expand(base), expand(base)


def hand_dfa(symbols, n, edges, finals) -> WheelerNfa:
    """Small helper for writing explicit automata in tests and scripts."""
    alphabet = OrderedAlphabet(tuple(symbols))
    ranked = tuple((u, v, alphabet.rank_of(tok)) for u, v, tok in edges)
    return WheelerNfa(n, alphabet, ranked, frozenset(finals))
