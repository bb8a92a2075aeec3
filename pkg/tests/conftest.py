import itertools

import pytest

from wnfa import OrderedAlphabet, Relation, WheelerNfa


def build(symbols, n, edges, finals) -> WheelerNfa:
    """Assemble an automaton from token-labeled edges."""
    alphabet = OrderedAlphabet(tuple(symbols))
    ranked = tuple((u, v, alphabet.rank_of(tok)) for u, v, tok in edges)
    return WheelerNfa(n, alphabet, ranked, frozenset(finals))


@pytest.fixture
def sample_nfa() -> WheelerNfa:
    """Valid 4-state Wheeler NFA with a two-label state and a back edge."""
    return build(
        "abc",
        4,
        [
            (1, 2, "a"),
            (2, 3, "a"),
            (1, 3, "a"),
            (3, 3, "b"),
            (1, 4, "c"),
            (4, 3, "a"),
            (2, 4, "c"),
            (4, 4, "c"),
        ],
        {3, 4},
    )


@pytest.fixture
def aa_star_loop_first() -> WheelerNfa:
    """Minimal acceptor of aa* with the loop on the initial state."""
    return build("a", 2, [(1, 1, "a"), (1, 2, "a")], {2})


@pytest.fixture
def aa_star_loop_last() -> WheelerNfa:
    """Minimal acceptor of aa* with the loop on the final state."""
    return build("a", 2, [(1, 2, "a"), (2, 2, "a")], {2})


@pytest.fixture
def branchy() -> WheelerNfa:
    """4-state all-final automaton whose b-fan covers three targets."""
    return build(
        "abcd",
        4,
        [
            (1, 2, "a"),
            (1, 2, "b"),
            (1, 3, "b"),
            (1, 4, "b"),
            (1, 4, "c"),
            (2, 4, "d"),
            (4, 4, "d"),
        ],
        {1, 2, 3, 4},
    )


@pytest.fixture
def branchy_variant() -> WheelerNfa:
    """Like branchy but without the b-edge into state 4."""
    return build(
        "abcd",
        4,
        [
            (1, 2, "a"),
            (1, 2, "b"),
            (1, 3, "b"),
            (1, 4, "c"),
            (2, 4, "d"),
            (4, 4, "d"),
        ],
        {1, 2, 3, 4},
    )


@pytest.fixture
def branchy_relation() -> Relation:
    """Standard-but-not-Wheeler bisimulation between branchy and its variant."""
    return Relation(4, 4, frozenset({(1, 1), (2, 2), (3, 3), (4, 4), (4, 2)}))


@pytest.fixture
def two_level_tree() -> WheelerNfa:
    """8-state layered automaton separating plain and order-respecting merges.

    The plain coarsest bisimulation merges the middle layers pairwise, but
    none of those merges respect the position order, so the order-respecting
    classes are all singletons.
    """
    return build(
        "abc",
        8,
        [
            (1, 2, "a"),
            (1, 3, "a"),
            (2, 4, "b"),
            (2, 5, "b"),
            (3, 6, "b"),
            (3, 7, "b"),
            (4, 8, "c"),
            (5, 8, "c"),
            (6, 8, "c"),
            (7, 8, "c"),
        ],
        {4, 6, 8},
    )


def unorderable_three_state() -> list[WheelerNfa]:
    """Both position orders of a 3-state NFA that admits no Wheeler order.

    State u fans out on a, b, c to v and on b to w, with a d-loop on v.
    Whichever of v, w comes second, some label pair lands out of order.
    """
    uvw = build(
        "abcd",
        3,
        [(1, 2, "a"), (1, 2, "b"), (1, 2, "c"), (1, 3, "b"), (2, 2, "d")],
        {1, 2, 3},
    )
    uwv = build(
        "abcd",
        3,
        [(1, 3, "a"), (1, 3, "b"), (1, 3, "c"), (1, 2, "b"), (3, 3, "d")],
        {1, 2, 3},
    )
    return [uvw, uwv]


def brute_accepts(a: WheelerNfa, word) -> bool:
    """Path-enumeration acceptance: independent of the subset construction."""
    ranks = [a.alphabet.rank_of(tok) for tok in word]
    step = {}
    for u, v, lab in a.edges:
        step.setdefault((u, lab), []).append(v)

    def walk(state: int, idx: int) -> bool:
        if idx == len(ranks):
            return state in a.finals
        return any(walk(v, idx + 1) for v in step.get((state, ranks[idx]), ()))

    return walk(1, 0)


def words_up_to(symbols, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(symbols, repeat=length)
