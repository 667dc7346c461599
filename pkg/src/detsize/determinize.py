"""The subset construction, DFA minimization, language equivalence and
universality checks, and state complexity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .boolmat import _TABLE_LIMIT, image_table, transition_matrices
from .fsa import (
    Fsa,
    Word,
    complete_with_dead_state,
    is_codeterministic,
    is_deterministic,
    is_trim,
)

DEFAULT_MAX_STATES = 2**20

__all__ = [
    "DEFAULT_MAX_STATES",
    "BlowUpError",
    "SubsetAutomaton",
    "Dfa",
    "subset_construct",
    "subset_to_dfa",
    "minimize",
    "state_complexity",
    "equivalent",
    "distinguishing_word",
    "is_universal",
    "universality_witness",
    "check_brzozowski",
]


class BlowUpError(RuntimeError):
    """The subset construction was aborted after discovering too many states."""

    def __init__(self, states_found: int, max_states: int):
        self.states_found = states_found
        self.max_states = max_states
        super().__init__(
            f"subset construction aborted: {states_found} states found, cap is {max_states}"
        )


@dataclass(frozen=True)
class SubsetAutomaton:
    """Output of the subset construction.

    ``subsets[i]`` is the bitmask of base states making up state i, with state
    0 the set of initial states; states are numbered in discovery order.
    ``transitions[i][k]`` is the successor of state i under ``base.alphabet[k]``,
    so the automaton is deterministic and total by construction. The empty
    subset, when reached, is an ordinary (dead) state.
    """

    base: Fsa
    subsets: tuple[int, ...]
    transitions: tuple[tuple[int, ...], ...]
    final_flags: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.subsets)

    def members(self, i: int) -> tuple[str, ...]:
        """Base-state names in subset i, in base index order."""
        return tuple(q for k, q in enumerate(self.base.states) if (self.subsets[i] >> k) & 1)

    def state_name(self, i: int) -> str:
        return f"S{i}=" + ",".join(self.members(i))

    @cached_property
    def symbol_index(self) -> dict[str, int]:
        return {sym: k for k, sym in enumerate(self.base.alphabet)}

    def run(self, word: Word) -> int:
        """Index of the state reached from state 0 on ``word``."""
        i = 0
        for sym in word:
            i = self.transitions[i][self.symbol_index[sym]]
        return i

    def accepts(self, word: Word) -> bool:
        return self.final_flags[self.run(word)]


def subset_construct(a: Fsa, max_states: int = DEFAULT_MAX_STATES) -> SubsetAutomaton:
    """Determinize by exploring accessible subsets with a LIFO stack.

    Popped subsets are expanded symbol by symbol in alphabet order; a subset is
    numbered the first time it is seen, so two runs on the same input produce
    identical numbering. Discovering more than ``max_states`` subsets raises
    BlowUpError rather than truncating.
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    mats = transition_matrices(a)
    if a.n <= _TABLE_LIMIT:
        tables = [image_table(mats[sym]) for sym in a.alphabet]
        steps = [t.__getitem__ for t in tables]
    else:
        steps = [mats[sym].apply for sym in a.alphabet]

    idx = a.state_index
    init = 0
    for q in a.initial:
        init |= 1 << idx[q]
    final_mask = 0
    for q in a.final:
        final_mask |= 1 << idx[q]

    index: dict[int, int] = {init: 0}
    order: list[int] = [init]
    rows: dict[int, list[int]] = {}
    stack: list[int] = [init]
    while stack:
        cur = stack.pop()
        row = []
        for step in steps:
            nxt = step(cur)
            j = index.get(nxt)
            if j is None:
                if len(order) >= max_states:
                    raise BlowUpError(len(order), max_states)
                j = len(order)
                index[nxt] = j
                order.append(nxt)
                stack.append(nxt)
            row.append(j)
        rows[index[cur]] = row
    return SubsetAutomaton(
        base=a,
        subsets=tuple(order),
        transitions=tuple(tuple(rows[i]) for i in range(len(order))),
        final_flags=tuple(bool(s & final_mask) for s in order),
    )


class Dfa(Fsa):
    """An Fsa with a unique initial state and a total transition function.

    Equality is by fields, so a Dfa compares equal to a plain Fsa with the
    same content (e.g. after a serialize/parse round trip).
    """

    def __post_init__(self):
        super().__post_init__()
        if not is_deterministic(self):
            raise ValueError("not deterministic")

    def __eq__(self, other):
        if isinstance(other, Fsa):
            return (
                self.alphabet == other.alphabet
                and self.states == other.states
                and self.initial == other.initial
                and self.final == other.final
                and self.transitions == other.transitions
            )
        return NotImplemented

    __hash__ = Fsa.__hash__


def subset_to_dfa(s: SubsetAutomaton) -> Dfa:
    """Forget subset labels; state names still encode the subset, as in
    ``S0=q1,q2``, for traceability."""
    names = [s.state_name(i) for i in range(s.n)]
    trans = frozenset(
        (names[i], sym, names[s.transitions[i][k]])
        for i in range(s.n)
        for k, sym in enumerate(s.base.alphabet)
    )
    final = frozenset(names[i] for i in range(s.n) if s.final_flags[i])
    return Dfa(s.base.alphabet, tuple(names), frozenset({names[0]}), final, trans)


def minimize(d: Dfa) -> Dfa:
    """Minimal total DFA for the same language, unique up to renaming.

    Restricts to accessible states, then merges indistinguishable states by
    partition refinement. An automaton with no reachable accepting state
    collapses to the 1-state all-rejecting DFA. When the input is already
    minimal it is returned unchanged.
    """
    start = next(iter(d.initial))
    succ: dict[tuple[str, str], str] = {(src, sym): dst for src, sym, dst in d.transitions}

    order = [start]
    seen = {start}
    for q in order:
        for sym in d.alphabet:
            r = succ[(q, sym)]
            if r not in seen:
                seen.add(r)
                order.append(r)

    def regroup(key) -> dict[str, int]:
        ids: dict = {}
        out = {}
        for q in order:
            k = key(q)
            if k not in ids:
                ids[k] = len(ids)
            out[q] = ids[k]
        return out

    block = regroup(lambda q: q in d.final)
    while True:
        refined = regroup(lambda q: (block[q],) + tuple(block[succ[(q, sym)]] for sym in d.alphabet))
        if max(refined.values()) == max(block.values()):
            block = refined
            break
        block = refined

    k = max(block.values()) + 1
    if k == d.n:
        return d
    names = [f"m{i}" for i in range(k)]
    trans = frozenset(
        (names[block[q]], sym, names[block[succ[(q, sym)]]]) for q in order for sym in d.alphabet
    )
    final = frozenset(names[block[q]] for q in order if q in d.final)
    return Dfa(d.alphabet, tuple(names), frozenset({names[0]}), final, trans)


def state_complexity(a: Fsa, max_states: int = DEFAULT_MAX_STATES) -> int:
    """Number of states of the minimal total DFA equivalent to ``a``."""
    return minimize(subset_to_dfa(subset_construct(a, max_states))).n


def _widen(a: Fsa, alphabet: tuple[str, ...]) -> Fsa:
    if alphabet == a.alphabet:
        return a
    return Fsa(alphabet, a.states, a.initial, a.final, a.transitions)


def distinguishing_word(a: Fsa, b: Fsa, max_states: int = DEFAULT_MAX_STATES) -> Word | None:
    """A shortest word over the union alphabet accepted by exactly one of the
    two automata, or None when they are equivalent."""
    union = a.alphabet + tuple(sym for sym in b.alphabet if sym not in set(a.alphabet))
    sa = subset_construct(_widen(a, union), max_states)
    sb = subset_construct(_widen(b, union), max_states)
    start = (0, 0)
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        ia, ib = pair
        if sa.final_flags[ia] != sb.final_flags[ib]:
            word: list[str] = []
            node = pair
            while parent[node] is not None:
                node, sym = parent[node]
                word.append(sym)
            return tuple(reversed(word))
        for k, sym in enumerate(union):
            nxt = (sa.transitions[ia][k], sb.transitions[ib][k])
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return None


def equivalent(a: Fsa, b: Fsa, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True iff the two automata accept the same language."""
    return distinguishing_word(a, b, max_states) is None


def universality_witness(a: Fsa, max_states: int = DEFAULT_MAX_STATES) -> Word | None:
    """A shortest rejected word, or None when the language is universal.

    The automaton is first completed with a dead state; the subset automaton
    then accepts everything iff every generated subset contains a final state,
    and a breadth-first search reads a witness off the path to the first
    subset without one.
    """
    s = subset_construct(complete_with_dead_state(a), max_states)
    parent: dict[int, tuple[int, str] | None] = {0: None}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if not s.final_flags[i]:
            word: list[str] = []
            node = i
            while parent[node] is not None:
                node, sym = parent[node]
                word.append(sym)
            return tuple(reversed(word))
        for k, sym in enumerate(s.base.alphabet):
            j = s.transitions[i][k]
            if j not in parent:
                parent[j] = (i, sym)
                queue.append(j)
    return None


def is_universal(a: Fsa, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True iff ``a`` accepts every word over its alphabet."""
    return universality_witness(a, max_states) is None


def check_brzozowski(a: Fsa, max_states: int = DEFAULT_MAX_STATES) -> bool | None:
    """For a trim, co-deterministic automaton the subset construction yields
    the minimal DFA already; verify that by size comparison. Returns None when
    the precondition does not hold (the check is not applicable)."""
    if not (is_trim(a) and is_codeterministic(a)):
        return None
    return subset_construct(a, max_states).n == state_complexity(a, max_states)
