"""Finite-state automata: values, a line-oriented text format, and structural transforms.

States and symbols are plain strings; internally every state also has a dense
index given by its position in ``Fsa.states``. All values are immutable after
construction and every operation is a pure function, so automata can be shared
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

EPSILON = "<eps>"

Word = tuple[str, ...]

__all__ = [
    "EPSILON",
    "Word",
    "ParseError",
    "Fsa",
    "parse_fsa",
    "serialize_fsa",
    "remove_epsilon",
    "reverse",
    "trim",
    "is_trim",
    "is_total",
    "is_deterministic",
    "is_codeterministic",
    "complete_with_dead_state",
    "accepts",
    "fresh_state_name",
]


class ParseError(ValueError):
    """Malformed automaton text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _valid_symbol(sym: str) -> bool:
    return isinstance(sym, str) and bool(sym) and not any(c.isspace() for c in sym) and sym != EPSILON


def _valid_state(name: str) -> bool:
    return _valid_symbol(name) and not name.startswith(("@", "#"))


@dataclass(frozen=True)
class Fsa:
    """A finite-state automaton.

    ``transitions`` holds (source, symbol, target) triples; the symbol may be
    the reserved out-of-alphabet marker ``EPSILON``. Transitions form a set,
    so duplicates collapse; multiplicity never affects the language. The empty
    state set is a legal value (it arises from trimming an empty language).
    """

    alphabet: tuple[str, ...] = ()
    states: tuple[str, ...] = ()
    initial: frozenset[str] = frozenset()
    final: frozenset[str] = frozenset()
    transitions: frozenset[tuple[str, str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(
            self, "transitions", frozenset(tuple(t) for t in self.transitions)
        )
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate symbol in alphabet")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state name")
        for sym in self.alphabet:
            if not _valid_symbol(sym):
                raise ValueError(f"invalid symbol {sym!r}")
        for q in self.states:
            if not _valid_state(q):
                raise ValueError(f"invalid state name {q!r}")
        state_set = set(self.states)
        for kind, group in (("initial", self.initial), ("final", self.final)):
            for q in group:
                if q not in state_set:
                    raise ValueError(f"{kind} state {q!r} not in state set")
        symbol_set = set(self.alphabet)
        for t in self.transitions:
            if len(t) != 3:
                raise ValueError(f"transition {t!r} is not a triple")
            src, sym, dst = t
            if src not in state_set or dst not in state_set:
                raise ValueError(f"transition {t!r} uses an unknown state")
            if sym != EPSILON and sym not in symbol_set:
                raise ValueError(f"transition {t!r} uses an unknown symbol")

    @classmethod
    def make(
        cls,
        transitions: Iterable[tuple[str, str, str]] = (),
        initial: Iterable[str] = (),
        final: Iterable[str] = (),
        *,
        states: Iterable[str] = (),
        alphabet: Iterable[str] = (),
    ) -> "Fsa":
        """Build an automaton, inferring state and alphabet order from first use."""
        transitions = [tuple(t) for t in transitions]
        initial = list(initial)
        final = list(final)
        order: list[str] = []
        seen: set[str] = set()

        def declare(q: str) -> None:
            if q not in seen:
                seen.add(q)
                order.append(q)

        for q in states:
            declare(q)
        for src, _, dst in transitions:
            declare(src)
            declare(dst)
        for q in initial + final:
            declare(q)
        syms: list[str] = list(alphabet)
        sym_seen = set(syms)
        for _, sym, _ in transitions:
            if sym != EPSILON and sym not in sym_seen:
                sym_seen.add(sym)
                syms.append(sym)
        return cls(tuple(syms), tuple(order), frozenset(initial), frozenset(final), frozenset(transitions))

    @property
    def n(self) -> int:
        return len(self.states)

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def has_epsilon(self) -> bool:
        return any(sym == EPSILON for _, sym, _ in self.transitions)


def parse_fsa(text: str) -> Fsa:
    """Parse the line-oriented automaton text format.

    Lines are either ``src sym dst`` transitions (``<eps>`` denotes the empty
    symbol), ``@initial q`` / ``@final q`` markers, or an optional
    ``@alphabet a b c`` line pinning alphabet order. ``#``-lines and blank
    lines are ignored. States and symbols are declared by first use; state
    indexing follows first-appearance order.
    """
    pinned: list[str] | None = None
    states: list[str] = []
    state_seen: set[str] = set()
    symbols: list[str] = []
    symbol_seen: set[str] = set()
    initial: list[str] = []
    final: list[str] = []
    transitions: list[tuple[str, str, str]] = []

    def declare_state(name: str, lineno: int) -> None:
        if not _valid_state(name):
            raise ParseError(f"invalid state name {name!r}", lineno)
        if name not in state_seen:
            state_seen.add(name)
            states.append(name)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "@alphabet":
            if pinned is not None:
                raise ParseError("duplicate @alphabet declaration", lineno)
            pinned = tokens[1:]
            if len(set(pinned)) != len(pinned):
                raise ParseError("duplicate symbol in @alphabet", lineno)
            for sym in pinned:
                if not _valid_symbol(sym):
                    raise ParseError(f"invalid symbol {sym!r}", lineno)
        elif head in ("@initial", "@final"):
            if len(tokens) != 2:
                raise ParseError(f"{head} takes exactly one state", lineno)
            declare_state(tokens[1], lineno)
            (initial if head == "@initial" else final).append(tokens[1])
        elif head.startswith("@"):
            raise ParseError(f"unknown directive {head!r}", lineno)
        else:
            if len(tokens) != 3:
                raise ParseError("transition line must be 'src sym dst'", lineno)
            src, sym, dst = tokens
            declare_state(src, lineno)
            declare_state(dst, lineno)
            if sym != EPSILON:
                if not _valid_symbol(sym):
                    raise ParseError(f"invalid symbol {sym!r}", lineno)
                if pinned is not None and sym not in pinned:
                    raise ParseError(f"symbol {sym!r} not in declared alphabet", lineno)
                if sym not in symbol_seen:
                    symbol_seen.add(sym)
                    symbols.append(sym)
            transitions.append((src, sym, dst))

    if not states:
        raise ParseError("no states declared")
    if pinned is not None:
        leftover = [s for s in symbols if s not in pinned]
        if leftover:
            raise ParseError(f"symbol {leftover[0]!r} not in declared alphabet")
        alphabet = tuple(pinned)
    else:
        alphabet = tuple(symbols)
    return Fsa(alphabet, tuple(states), frozenset(initial), frozenset(final), frozenset(transitions))


def serialize_fsa(a: Fsa) -> str:
    """Render an automaton in the text format, deterministically.

    Transitions are sorted by (source index, symbol, target index); then come
    ``@initial`` and ``@final`` lines in state-index order. The ``@alphabet``
    line is emitted only when first-use order in the transitions would not
    reproduce the alphabet, so parse(serialize(a)) restores it either way.
    """
    idx = a.state_index
    trans = sorted(a.transitions, key=lambda t: (idx[t[0]], t[1], idx[t[2]]))
    first_use: list[str] = []
    seen: set[str] = set()
    for _, sym, _ in trans:
        if sym != EPSILON and sym not in seen:
            seen.add(sym)
            first_use.append(sym)
    lines: list[str] = []
    if tuple(first_use) != a.alphabet:
        lines.append("@alphabet" + "".join(" " + s for s in a.alphabet))
    lines.extend(f"{src} {sym} {dst}" for src, sym, dst in trans)
    lines.extend(f"@initial {q}" for q in a.states if q in a.initial)
    lines.extend(f"@final {q}" for q in a.states if q in a.final)
    return "".join(line + "\n" for line in lines)


def _adjacency(a: Fsa) -> dict[str, dict[str, set[str]]]:
    adj: dict[str, dict[str, set[str]]] = {q: {} for q in a.states}
    for src, sym, dst in a.transitions:
        adj[src].setdefault(sym, set()).add(dst)
    return adj


def _eps_closure(adj: dict[str, dict[str, set[str]]], start: Iterable[str]) -> set[str]:
    closure = set(start)
    stack = list(closure)
    while stack:
        q = stack.pop()
        for r in adj[q].get(EPSILON, ()):
            if r not in closure:
                closure.add(r)
                stack.append(r)
    return closure


def remove_epsilon(a: Fsa) -> Fsa:
    """Equivalent automaton without epsilon transitions; the state set is unchanged."""
    if not a.has_epsilon:
        return a
    adj = _adjacency(a)
    closures = {q: _eps_closure(adj, (q,)) for q in a.states}
    new_trans = set()
    for q in a.states:
        for p in closures[q]:
            for sym, targets in adj[p].items():
                if sym == EPSILON:
                    continue
                for dst in targets:
                    new_trans.add((q, sym, dst))
    new_final = frozenset(q for q in a.states if closures[q] & a.final)
    return Fsa(a.alphabet, a.states, a.initial, new_final, frozenset(new_trans))


def reverse(a: Fsa) -> Fsa:
    """Flip every transition and swap initial with final states."""
    flipped = frozenset((dst, sym, src) for src, sym, dst in a.transitions)
    return Fsa(a.alphabet, a.states, a.final, a.initial, flipped)


def _reachable(states: Iterable[str], edges: dict[str, set[str]]) -> set[str]:
    seen = set(states)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for r in edges.get(q, ()):
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def _forward_backward(a: Fsa) -> tuple[set[str], set[str]]:
    fwd: dict[str, set[str]] = {}
    bwd: dict[str, set[str]] = {}
    for src, _, dst in a.transitions:
        fwd.setdefault(src, set()).add(dst)
        bwd.setdefault(dst, set()).add(src)
    return _reachable(a.initial, fwd), _reachable(a.final, bwd)


def trim(a: Fsa) -> Fsa:
    """Keep exactly the states that lie on some path from an initial to a final state."""
    accessible, coaccessible = _forward_backward(a)
    keep = accessible & coaccessible
    if len(keep) == a.n:
        return a
    states = tuple(q for q in a.states if q in keep)
    trans = frozenset(t for t in a.transitions if t[0] in keep and t[2] in keep)
    return Fsa(a.alphabet, states, a.initial & keep, a.final & keep, trans)


def is_trim(a: Fsa) -> bool:
    accessible, coaccessible = _forward_backward(a)
    return len(accessible & coaccessible) == a.n


def is_total(a: Fsa) -> bool:
    """True when every (state, symbol) pair has at least one successor."""
    pairs = {(src, sym) for src, sym, _ in a.transitions if sym != EPSILON}
    return all((q, w) in pairs for q in a.states for w in a.alphabet)


def is_deterministic(a: Fsa) -> bool:
    """True iff there is a unique initial state and every (state, symbol) pair
    has exactly one successor."""
    if len(a.initial) != 1:
        return False
    count: dict[tuple[str, str], int] = {}
    for src, sym, _ in a.transitions:
        if sym == EPSILON:
            return False
        count[(src, sym)] = count.get((src, sym), 0) + 1
    return all(count.get((q, w), 0) == 1 for q in a.states for w in a.alphabet)


def is_codeterministic(a: Fsa) -> bool:
    """True iff the reversed automaton is deterministic."""
    return is_deterministic(reverse(a))


def fresh_state_name(base: str, taken: Iterable[str]) -> str:
    """Deterministically pick a state name not in ``taken``, starting from ``base``."""
    taken = set(taken)
    if base not in taken:
        return base
    k = 2
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def complete_with_dead_state(a: Fsa) -> Fsa:
    """Make the transition relation total by routing missing (state, symbol)
    pairs to a fresh non-final sink with self-loops; a total automaton is
    returned unchanged, which makes the operation idempotent."""
    if is_total(a):
        return a
    dead = fresh_state_name("q_dead", a.states)
    pairs = {(src, sym) for src, sym, _ in a.transitions if sym != EPSILON}
    new_trans = set(a.transitions)
    for q in a.states:
        for w in a.alphabet:
            if (q, w) not in pairs:
                new_trans.add((q, w, dead))
    for w in a.alphabet:
        new_trans.add((dead, w, dead))
    return Fsa(a.alphabet, a.states + (dead,), a.initial, a.final, frozenset(new_trans))


def accepts(a: Fsa, word: Iterable[str]) -> bool:
    """Membership test by on-the-fly subset simulation (epsilon-aware)."""
    alphabet = set(a.alphabet)
    adj = _adjacency(a)
    current = _eps_closure(adj, a.initial)
    for sym in word:
        if sym not in alphabet:
            raise ValueError(f"symbol {sym!r} not in alphabet")
        step: set[str] = set()
        for q in current:
            step |= adj[q].get(sym, set())
        current = _eps_closure(adj, step)
        if not current:
            return False
    return bool(current & a.final)
