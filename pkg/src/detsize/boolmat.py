"""Bit-packed Boolean matrices: products, vector application, range enumeration,
rank over GF(2), and precedence-graph cyclicity.

A matrix row is a Python int used as a bitset: bit j of ``rows[i]`` is the
(i, j) entry, i.e. row i lists the successors of state i under one symbol.
Subset characteristic vectors are plain ints with the same bit convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .fsa import Fsa

DEFAULT_RANGE_CAP = 20

# full 2**n image tables are only worth building below this dimension
_TABLE_LIMIT = 16

__all__ = [
    "DEFAULT_RANGE_CAP",
    "RangeCapExceeded",
    "BoolMatrix",
    "transition_matrices",
    "image_table",
    "matrix_range",
    "rank_gf2",
    "strongly_connected_components",
    "cyclicity",
]


class RangeCapExceeded(ValueError):
    """Exact range enumeration takes 2**n steps and is refused above the cap."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"range cap exceeded: dimension n={n} is above the cap {cap}")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BoolMatrix:
    """Square matrix over the Boolean semifield ({0,1}, or, and)."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        mask = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row bits outside matrix dimension")

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "BoolMatrix":
        rows = [0] * n
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def multiply(self, other: "BoolMatrix") -> "BoolMatrix":
        """Boolean matrix product: (a.b)(i,k) = OR_j a(i,j) and b(j,k)."""
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        rows = []
        for r in self.rows:
            acc = 0
            for j in _bits(r):
                acc |= other.rows[j]
            rows.append(acc)
        return BoolMatrix(self.n, tuple(rows))

    def apply(self, v: int) -> int:
        """Row-vector application v.self; equals the subset-construction
        successor of the subset encoded by v."""
        if v < 0 or v >> self.n:
            raise ValueError("vector bits outside matrix dimension")
        acc = 0
        for i in _bits(v):
            acc |= self.rows[i]
        return acc

    def power(self, k: int) -> "BoolMatrix":
        result = BoolMatrix.identity(self.n)
        for _ in range(k):
            result = result.multiply(self)
        return result

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows
        )


def transition_matrices(a: Fsa) -> dict[str, BoolMatrix]:
    """One Boolean matrix per symbol; entry (i, j) is set iff state i steps to
    state j on that symbol. The automaton must be epsilon-free."""
    if a.has_epsilon:
        raise ValueError("automaton has epsilon transitions; remove them first")
    idx = a.state_index
    rows = {sym: [0] * a.n for sym in a.alphabet}
    for src, sym, dst in a.transitions:
        rows[sym][idx[src]] |= 1 << idx[dst]
    return {sym: BoolMatrix(a.n, tuple(r)) for sym, r in rows.items()}


def image_table(m: BoolMatrix) -> list[int]:
    """tbl[v] = v.m for every subset bitmask v, computed in O(2**n)."""
    tbl = [0] * (1 << m.n)
    rows = m.rows
    for v in range(1, 1 << m.n):
        low = v & -v
        tbl[v] = tbl[v ^ low] | rows[low.bit_length() - 1]
    return tbl


def matrix_range(m: BoolMatrix, cap: int = DEFAULT_RANGE_CAP) -> frozenset[int]:
    """The exact range {v.m : v any subset vector}, by enumerating all 2**n
    inputs. Contains the zero vector (image of the empty subset). Raises
    RangeCapExceeded when n is above ``cap``."""
    if m.n > cap:
        raise RangeCapExceeded(m.n, cap)
    return frozenset(image_table(m))


def rank_gf2(m: BoolMatrix) -> int:
    """Row rank over GF(2) by Gaussian elimination on bit-packed rows."""
    work = [r for r in m.rows if r]
    rank = 0
    for col in range(m.n):
        pivot = None
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def strongly_connected_components(m: BoolMatrix) -> list[list[int]]:
    """Maximal strongly connected components of the matrix support graph
    (iterative Tarjan); components are returned in a deterministic order."""
    n, rows = m.n, m.rows
    order = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, _bits(rows[root]))]
        order[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, _bits(rows[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], order[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == order[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.reverse()
                sccs.append(comp)
    return sccs


def cyclicity(m: BoolMatrix) -> int:
    """Least common multiple, over strongly connected components, of the gcd of
    the cycle lengths inside each component.

    Per component the gcd is computed from breadth-first levels: every
    intra-component edge u -> v contributes level(u) - level(v) + 1.
    Components without any cycle (single vertices lacking a self-loop)
    contribute nothing, so an acyclic graph has cyclicity 1.
    """
    result = 1
    for comp in strongly_connected_components(m):
        if len(comp) == 1:
            q = comp[0]
            if not (m.rows[q] >> q) & 1:
                continue
        members = set(comp)
        level = {comp[0]: 0}
        queue = [comp[0]]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for v in _bits(m.rows[u]):
                    if v in members and v not in level:
                        level[v] = level[u] + 1
                        nxt.append(v)
            queue = nxt
        g = 0
        for u in comp:
            for v in _bits(m.rows[u]):
                if v in members:
                    g = math.gcd(g, level[u] + 1 - level[v])
        result = math.lcm(result, g)
    return result
