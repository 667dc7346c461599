"""A priori upper bounds on the size of the subset automaton: transition-monoid
size, per-symbol range sizes, the combined subset complexity, the unary-monoid
sandwich, and the all-but-one bound."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .boolmat import (
    _TABLE_LIMIT,
    DEFAULT_RANGE_CAP,
    BoolMatrix,
    cyclicity,
    image_table,
    matrix_range,
    rank_gf2,
    transition_matrices,
)
from .determinize import DEFAULT_MAX_STATES, BlowUpError, subset_construct
from .fsa import Fsa

DEFAULT_MONOID_CAP = 100_000
DEFAULT_ESTIMATE_CONSTANT = 2

__all__ = [
    "DEFAULT_MONOID_CAP",
    "DEFAULT_ESTIMATE_CONSTANT",
    "MonoidClosure",
    "monoid_closure",
    "monoid_bound",
    "range_bound",
    "subset_complexity",
    "unary_monoid_bounds",
    "all_but_one_bound",
    "SymbolStats",
    "BoundReport",
    "full_report",
    "report_to_dict",
    "report_from_dict",
    "report_to_json",
    "report_from_json",
    "render_report_text",
]


@dataclass(frozen=True)
class MonoidClosure:
    """A set of Boolean matrices containing the identity and, unless capped,
    closed under right-multiplication by the generators."""

    elements: frozenset[BoolMatrix]
    generator_symbols: tuple[str, ...]
    generators: tuple[BoolMatrix, ...]
    capped: bool
    cap: int

    @property
    def size(self) -> int:
        return len(self.elements)


def _closure_rows(
    generators: Sequence[tuple[int, ...]], n: int, cap: int
) -> tuple[set[tuple[int, ...]], bool]:
    """Breadth-first closure from the identity under right-multiplication,
    on raw row tuples. Stops (capped) as soon as the element count would
    exceed ``cap``; generator order fixes the traversal, so the capped
    outcome is deterministic."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if n <= _TABLE_LIMIT:
        tables = [image_table(BoolMatrix(n, g)) for g in generators]

        def product(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
            t = tables[k]
            return tuple(t[r] for r in rows)

    else:
        def product(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
            g = generators[k]
            out = []
            for r in rows:
                acc = 0
                while r:
                    low = r & -r
                    acc |= g[low.bit_length() - 1]
                    r ^= low
                out.append(acc)
            return tuple(out)

    identity = tuple(1 << i for i in range(n))
    elements: set[tuple[int, ...]] = {identity}
    queue: deque[tuple[int, ...]] = deque([identity])
    while queue:
        current = queue.popleft()
        for k in range(len(generators)):
            nxt = product(current, k)
            if nxt not in elements:
                if len(elements) >= cap:
                    return elements, True
                elements.add(nxt)
                queue.append(nxt)
    return elements, False


def monoid_closure(
    mats: Sequence[BoolMatrix],
    cap: int = DEFAULT_MONOID_CAP,
    *,
    symbols: Sequence[str] = (),
    dim: int | None = None,
) -> MonoidClosure:
    """Closure of the given matrices under Boolean product, with the identity.

    With no generators the result is {identity}; ``dim`` must then supply the
    dimension. Enumeration stops with ``capped`` set once the element count
    would exceed ``cap``, in which case exactly ``cap`` elements are kept.
    """
    if mats:
        n = mats[0].n
        for m in mats:
            if m.n != n:
                raise ValueError(f"dimension mismatch: {m.n} vs {n}")
        if dim is not None and dim != n:
            raise ValueError(f"dimension mismatch: {dim} vs {n}")
    elif dim is None:
        raise ValueError("dim is required when there are no generators")
    else:
        n = dim
    elements, capped = _closure_rows([m.rows for m in mats], n, cap)
    return MonoidClosure(
        elements=frozenset(BoolMatrix(n, rows) for rows in elements),
        generator_symbols=tuple(symbols),
        generators=tuple(mats),
        capped=capped,
        cap=cap,
    )


def monoid_bound(a: Fsa, cap: int = DEFAULT_MONOID_CAP) -> int | None:
    """Size of the full transition monoid, an upper bound on the subset
    automaton size; None when enumeration hit the cap."""
    mats = transition_matrices(a)
    closure = monoid_closure(
        [mats[sym] for sym in a.alphabet], cap, symbols=a.alphabet, dim=a.n
    )
    return None if closure.capped else closure.size


def range_bound(a: Fsa, range_cap: int = DEFAULT_RANGE_CAP) -> int:
    """1 plus the sum of the per-symbol range sizes, an upper bound on the
    subset automaton size: every non-initial subset state is in the image of
    the matrix for the last symbol read."""
    mats = transition_matrices(a)
    return 1 + sum(len(matrix_range(mats[sym], range_cap)) for sym in a.alphabet)


def _split_preference(alphabet: tuple[str, ...]) -> list[tuple[str, ...]]:
    """All symbol subsets, ordered by cardinality then lexicographically; the
    returned tuples keep alphabet order."""
    splits: list[tuple[str, ...]] = []
    for size in range(len(alphabet) + 1):
        group = [tuple(c) for c in combinations(alphabet, size)]
        group.sort(key=lambda js: tuple(sorted(js)))
        splits.extend(group)
    return splits


def subset_complexity(
    a: Fsa,
    monoid_cap: int = DEFAULT_MONOID_CAP,
    range_cap: int = DEFAULT_RANGE_CAP,
) -> tuple[int, tuple[str, ...]]:
    """Minimum over alphabet splits J of
    (1 + sum of range sizes outside J) * (size of the monoid generated inside J),
    an upper bound on the subset automaton size.

    All 2**|alphabet| splits are enumerated; a split whose monoid enumeration
    caps is excluded from the minimum (the empty split never caps, so a value
    always exists). Returns the bound and the minimizing split, ties broken by
    smaller split then lexicographic symbol order.
    """
    if len(a.alphabet) > 16:
        raise ValueError("alphabet too large for exhaustive split enumeration")
    mats = transition_matrices(a)
    range_sizes = {sym: len(matrix_range(mats[sym], range_cap)) for sym in a.alphabet}

    best: int | None = None
    witness: tuple[str, ...] = ()
    for split in _split_preference(a.alphabet):
        inside = set(split)
        factor = 1 + sum(range_sizes[sym] for sym in a.alphabet if sym not in inside)
        if best is not None:
            # the closure only matters while factor * size can still beat best
            needed = (best - 1) // factor
            if needed < 1:
                continue
            cap = min(monoid_cap, needed)
        else:
            cap = monoid_cap
        closure = monoid_closure([mats[sym] for sym in split], cap, symbols=split, dim=a.n)
        if closure.capped:
            continue
        value = factor * closure.size
        if best is None or value < best:
            best = value
            witness = split
    assert best is not None
    return best, witness


def unary_monoid_bounds(a: Fsa) -> tuple[int, int, int]:
    """(lower, upper, exact) for a one-symbol automaton: the cyclicity of the
    transition matrix's support graph sandwiches the monoid size as
    c <= size <= c + n**2 - 2n + 2; ``exact`` is the enumerated size."""
    if len(a.alphabet) != 1:
        raise ValueError("unary bounds require a one-symbol alphabet")
    mat = transition_matrices(a)[a.alphabet[0]]
    lower = cyclicity(mat)
    upper = lower + a.n * a.n - 2 * a.n + 2
    closure = monoid_closure([mat], cap=upper + 1, symbols=a.alphabet, dim=a.n)
    if closure.capped:
        raise RuntimeError("unary monoid exceeded its theoretical bound")
    exact = closure.size
    if not lower <= exact <= upper:
        raise RuntimeError(
            f"unary monoid sandwich violated: {lower} <= {exact} <= {upper} fails"
        )
    return lower, upper, exact


def all_but_one_bound(
    a: Fsa,
    target: str,
    monoid_cap: int = DEFAULT_MONOID_CAP,
    range_cap: int = DEFAULT_RANGE_CAP,
    estimate_constant: int = DEFAULT_ESTIMATE_CONSTANT,
) -> tuple[int, int]:
    """(certified, estimate) bounds that single out one target symbol.

    certified: (1 + sum of range sizes over the other symbols) times the
    target's monoid size, itself replaced by its cyclicity-based ceiling
    c + n**2 - 2n + 2 when enumeration caps. This instantiates the subset
    complexity at the split {target}, so it soundly bounds the subset
    automaton size.

    estimate: |alphabet| * (c + n**2) * max over other symbols of
    2**(ceil(rank**2 / 4) + C * rank), the asymptotic shape of the bound with
    an explicit constant C. It is reported for guidance and never asserted.
    """
    if target not in a.alphabet:
        raise ValueError(f"unknown target symbol {target!r}")
    mats = transition_matrices(a)
    others = [sym for sym in a.alphabet if sym != target]
    factor = 1 + sum(len(matrix_range(mats[sym], range_cap)) for sym in others)

    n = a.n
    cyc = cyclicity(mats[target])
    ceiling = cyc + n * n - 2 * n + 2
    closure = monoid_closure([mats[target]], min(monoid_cap, ceiling + 1), symbols=(target,), dim=n)
    monoid_term = ceiling if closure.capped else min(closure.size, ceiling)
    certified = factor * monoid_term

    worst = 1
    for sym in others:
        r = rank_gf2(mats[sym])
        worst = max(worst, 2 ** (-(-r * r // 4) + estimate_constant * r))
    estimate = len(a.alphabet) * (cyc + n * n) * worst
    return certified, estimate


@dataclass(frozen=True)
class SymbolStats:
    symbol: str
    rank: int
    range_size: int | None
    cyclicity: int


@dataclass(frozen=True)
class BoundReport:
    """Every computed bound for one automaton; None values mark quantities
    whose enumeration was refused or aborted at the recorded cap."""

    n: int
    alphabet: tuple[str, ...]
    subset_size: int | None
    subset_cap: int
    monoid_bound: int | None
    monoid_cap: int
    range_bound: int | None
    range_cap: int
    subset_complexity: int | None
    subset_split: tuple[str, ...] | None
    all_but_one_certified: int | None
    all_but_one_target: str | None
    all_but_one_estimate: int | None
    all_but_one_constant: int
    per_symbol: tuple[SymbolStats, ...]


def full_report(
    a: Fsa,
    monoid_cap: int = DEFAULT_MONOID_CAP,
    range_cap: int = DEFAULT_RANGE_CAP,
    max_states: int = DEFAULT_MAX_STATES,
    estimate_constant: int = DEFAULT_ESTIMATE_CONSTANT,
) -> BoundReport:
    """Populate every bound for ``a``, running the subset construction under
    its cap to record the actual size when feasible. Individual quantities
    that hit a cap are reported as None instead of raising."""
    mats = transition_matrices(a)
    ranges_ok = a.n <= range_cap

    per_symbol = []
    for sym in a.alphabet:
        m = mats[sym]
        per_symbol.append(
            SymbolStats(
                symbol=sym,
                rank=rank_gf2(m),
                range_size=len(matrix_range(m, range_cap)) if ranges_ok else None,
                cyclicity=cyclicity(m),
            )
        )

    try:
        subset_size = subset_construct(a, max_states).n
    except BlowUpError:
        subset_size = None

    mbound = monoid_bound(a, monoid_cap)
    rbound = range_bound(a, range_cap) if ranges_ok else None

    if ranges_ok:
        sc_value, sc_split = subset_complexity(a, monoid_cap, range_cap)
    else:
        sc_value, sc_split = None, None

    certified = target = estimate = None
    if ranges_ok and a.alphabet:
        for sym in a.alphabet:
            c, e = all_but_one_bound(a, sym, monoid_cap, range_cap, estimate_constant)
            if certified is None or c < certified:
                certified, target, estimate = c, sym, e

    return BoundReport(
        n=a.n,
        alphabet=a.alphabet,
        subset_size=subset_size,
        subset_cap=max_states,
        monoid_bound=mbound,
        monoid_cap=monoid_cap,
        range_bound=rbound,
        range_cap=range_cap,
        subset_complexity=sc_value,
        subset_split=sc_split,
        all_but_one_certified=certified,
        all_but_one_target=target,
        all_but_one_estimate=estimate,
        all_but_one_constant=estimate_constant,
        per_symbol=tuple(per_symbol),
    )


def report_to_dict(report: BoundReport) -> dict:
    """Machine-readable tree form of a report; inverse of report_from_dict."""
    return {
        "n": report.n,
        "alphabet": list(report.alphabet),
        "subset_size": {"value": report.subset_size, "cap": report.subset_cap},
        "monoid_bound": {"value": report.monoid_bound, "cap": report.monoid_cap},
        "range_bound": {"value": report.range_bound, "cap": report.range_cap},
        "subset_complexity": {
            "value": report.subset_complexity,
            "split": None if report.subset_split is None else list(report.subset_split),
        },
        "all_but_one_certified": {
            "value": report.all_but_one_certified,
            "target": report.all_but_one_target,
        },
        "all_but_one_estimate": {
            "value": report.all_but_one_estimate,
            "constant": report.all_but_one_constant,
        },
        "per_symbol": [
            {
                "symbol": s.symbol,
                "rank": s.rank,
                "range_size": s.range_size,
                "cyclicity": s.cyclicity,
            }
            for s in report.per_symbol
        ],
    }


def report_from_dict(data: dict) -> BoundReport:
    split = data["subset_complexity"]["split"]
    return BoundReport(
        n=data["n"],
        alphabet=tuple(data["alphabet"]),
        subset_size=data["subset_size"]["value"],
        subset_cap=data["subset_size"]["cap"],
        monoid_bound=data["monoid_bound"]["value"],
        monoid_cap=data["monoid_bound"]["cap"],
        range_bound=data["range_bound"]["value"],
        range_cap=data["range_bound"]["cap"],
        subset_complexity=data["subset_complexity"]["value"],
        subset_split=None if split is None else tuple(split),
        all_but_one_certified=data["all_but_one_certified"]["value"],
        all_but_one_target=data["all_but_one_certified"]["target"],
        all_but_one_estimate=data["all_but_one_estimate"]["value"],
        all_but_one_constant=data["all_but_one_estimate"]["constant"],
        per_symbol=tuple(
            SymbolStats(s["symbol"], s["rank"], s["range_size"], s["cyclicity"])
            for s in data["per_symbol"]
        ),
    )


def report_to_json(report: BoundReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_from_json(text: str) -> BoundReport:
    return report_from_dict(json.loads(text))


def _fmt(value: int | None, cap_note: str) -> str:
    return cap_note if value is None else str(value)


def render_report_text(report: BoundReport) -> str:
    """Key-value text form, one field per line; when the subset construction
    completed, each bound gets a PASS/FAIL soundness line."""
    lines = [
        f"n: {report.n}",
        f"alphabet: {' '.join(report.alphabet)}",
        f"subset_size: {_fmt(report.subset_size, f'aborted at cap {report.subset_cap}')}",
        f"monoid_bound: {_fmt(report.monoid_bound, f'capped at {report.monoid_cap}')}",
        f"range_bound: {_fmt(report.range_bound, f'range cap exceeded (n={report.n} > {report.range_cap})')}",
        f"subset_complexity: {_fmt(report.subset_complexity, f'range cap exceeded (n={report.n} > {report.range_cap})')}",
        f"subset_complexity_split: {'-' if report.subset_split is None else '{' + ','.join(report.subset_split) + '}'}",
        f"all_but_one_certified: {_fmt(report.all_but_one_certified, 'unavailable')}",
        f"all_but_one_target: {report.all_but_one_target or '-'}",
        f"all_but_one_estimate: {_fmt(report.all_but_one_estimate, 'unavailable')}",
        f"all_but_one_constant: {report.all_but_one_constant}",
    ]
    for s in report.per_symbol:
        rng = "range cap exceeded" if s.range_size is None else str(s.range_size)
        lines.append(
            f"symbol {s.symbol}: rank={s.rank} range_size={rng} cyclicity={s.cyclicity}"
        )
    if report.subset_size is not None:
        for name, bound in (
            ("monoid_bound", report.monoid_bound),
            ("range_bound", report.range_bound),
            ("subset_complexity", report.subset_complexity),
            ("all_but_one_certified", report.all_but_one_certified),
        ):
            if bound is None:
                continue
            verdict = "PASS" if report.subset_size <= bound else "FAIL"
            lines.append(f"soundness {name}: {verdict} ({report.subset_size} <= {bound})")
    return "".join(line + "\n" for line in lines)
