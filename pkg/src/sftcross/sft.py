"""One-sided subshifts of finite type.

Words are tuples of symbol indices ``0..n-1``.  A :class:`TransitionMatrix`
validates that every symbol has a successor (no zero rows) and a predecessor
(no zero columns, so the shift is onto).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "Word",
    "InvalidMatrixError",
    "InvalidWordError",
    "TransitionMatrix",
    "EvPerPoint",
    "AnalysisReport",
    "admissible_words",
    "analyze",
    "topfree_bruteforce",
    "shift_point",
    "points_equal",
    "trajectory_equivalent",
    "point_ops",
]

Word = tuple


class InvalidMatrixError(ValueError):
    pass


class InvalidWordError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionMatrix:
    entries: tuple

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        n = len(rows)
        if n == 0:
            raise InvalidMatrixError("matrix has no symbols")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidMatrixError(f"row {i} has length {len(row)}, expected {n}")
            if any(v not in (0, 1) for v in row):
                raise InvalidMatrixError(f"row {i} has entries outside {{0,1}}")
        for i, row in enumerate(rows):
            if not any(row):
                raise InvalidMatrixError(f"zero row {i}: symbol {i} is dead (no admissible successor)")
        for j in range(n):
            if not any(rows[i][j] for i in range(n)):
                raise InvalidMatrixError(
                    f"zero column {j}: shift not surjective (symbol {j} has no predecessor)"
                )
        object.__setattr__(self, "entries", rows)

    @property
    def n_symbols(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def __repr__(self):
        return f"TransitionMatrix({[list(r) for r in self.entries]})"

    @cached_property
    def successors(self) -> tuple:
        return tuple(tuple(j for j, v in enumerate(row) if v) for row in self.entries)

    @cached_property
    def predecessors(self) -> tuple:
        n = self.n_symbols
        return tuple(tuple(i for i in range(n) if self.entries[i][j]) for j in range(n))

    @cached_property
    def column_sums(self) -> tuple:
        return tuple(len(p) for p in self.predecessors)

    @cached_property
    def constant_p(self) -> Optional[int]:
        s = set(self.column_sums)
        return s.pop() if len(s) == 1 else None

    def succ(self, w: Word) -> tuple:
        """Symbols that may follow ``w`` (every symbol if ``w`` is empty)."""
        return self.successors[w[-1]] if w else tuple(range(self.n_symbols))

    def is_admissible(self, w: Iterable[int]) -> bool:
        w = tuple(w)
        if any(not (0 <= s < self.n_symbols) for s in w):
            return False
        return all(self.entries[a][b] for a, b in zip(w, w[1:]))

    def check_word(self, w: Iterable[int]) -> Word:
        w = tuple(w)
        if not self.is_admissible(w):
            raise InvalidWordError(f"word {w} is not admissible")
        return w

    def words(self, k: int) -> tuple:
        return _words(self, k)

    def extensions(self, w: Word, k: int) -> list:
        """All admissible words of length ``len(w) + k`` starting with ``w``."""
        out = [w]
        for _ in range(k):
            out = [v + (b,) for v in out for b in self.succ(v)]
        return out

    def restrict(self, keep: Iterable[int]) -> tuple[TransitionMatrix, dict]:
        """Sub-matrix on ``keep``; returns it with the old->new index map."""
        keep = sorted(set(keep))
        index = {s: i for i, s in enumerate(keep)}
        sub = [[self.entries[a][b] for b in keep] for a in keep]
        return TransitionMatrix(sub), index


_WORD_CACHE: dict = {}


def _words(A: TransitionMatrix, k: int) -> tuple:
    key = (A.entries, k)
    hit = _WORD_CACHE.get(key)
    if hit is None:
        hit = tuple(A.extensions((), k))
        _WORD_CACHE[key] = hit
    return hit


def admissible_words(A: TransitionMatrix, k: int) -> list:
    """Admissible words of length ``k`` in lexicographic order; ``k == 0`` gives ``[()]``."""
    if k < 0:
        raise ValueError("negative word length")
    return list(_words(A, k))


# -- analyzers ---------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    column_sums: tuple
    constant_p: Optional[int]
    strongly_connected: bool
    # (frozenset of symbols, sub-SFT valid) for each nontrivial predecessor-closed set
    predecessor_closed: tuple
    every_cycle_has_exit: bool
    exitless_cycles: tuple = field(default=())

    @property
    def topologically_free(self) -> bool:
        return self.every_cycle_has_exit

    @property
    def irreducible_symbol_level(self) -> bool:
        return not self.predecessor_closed


def _sccs(A: TransitionMatrix) -> list:
    """Strongly connected components (Tarjan), each as a sorted tuple."""
    n = A.n_symbols
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = itertools.count()

    def visit(v):
        index[v] = low[v] = next(counter)
        stack.append(v)
        on.add(v)
        for w in A.successors[v]:
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(tuple(sorted(comp)))

    for v in range(n):
        if v not in index:
            visit(v)
    return sorted(out)


def _predecessor_closed_sets(A: TransitionMatrix) -> list:
    comps = _sccs(A)
    n = A.n_symbols
    found = []
    for r in range(1, len(comps) + 1):
        for chosen in itertools.combinations(comps, r):
            s = frozenset(itertools.chain.from_iterable(chosen))
            if len(s) == n:
                continue
            if all(b in s for c in s for b in A.predecessors[c]):
                found.append(s)
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def _sub_sft_valid(A: TransitionMatrix, keep: frozenset) -> bool:
    return all(any(A(a, b) for b in keep) for a in keep) and all(
        any(A(a, b) for a in keep) for b in keep
    )


def _exitless_cycles(A: TransitionMatrix) -> list:
    # A cycle has no exit iff all its vertices have out-degree 1; following the
    # unique successor inside the out-degree-1 subgraph finds every such cycle.
    single = {v: A.successors[v][0] for v in range(A.n_symbols) if len(A.successors[v]) == 1}
    cycles = set()
    for start in single:
        path, v = [], start
        seen = {}
        while v in single and v not in seen:
            seen[v] = len(path)
            path.append(v)
            v = single[v]
        if v in seen:
            cyc = path[seen[v]:]
            k = cyc.index(min(cyc))
            cycles.add(tuple(cyc[k:] + cyc[:k]))
    return sorted(cycles)


def analyze(A: TransitionMatrix) -> AnalysisReport:
    """Graph analysis of the dynamical hypotheses.

    Topological freeness of the shift is decided by "every cycle has an exit":
    the set ``{x : s^n x = s^m x}`` is finite, so it has interior exactly when
    one of its points is isolated, and an eventually periodic point is isolated
    exactly when its cycle runs through out-degree-1 vertices only (then the
    cylinder of the prefix reaching the cycle is that single point).

    Irreducibility is reported at symbol level only: predecessor-closed symbol
    sets give closed sets ``F`` with ``s^-1(F) = F``.
    """
    closed = _predecessor_closed_sets(A)
    cycles = _exitless_cycles(A)
    return AnalysisReport(
        column_sums=A.column_sums,
        constant_p=A.constant_p,
        strongly_connected=len(_sccs(A)) == 1,
        predecessor_closed=tuple((s, _sub_sft_valid(A, s)) for s in closed),
        every_cycle_has_exit=not cycles,
        exitless_cycles=tuple(cycles),
    )


def topfree_bruteforce(A: TransitionMatrix, n: int, m: int, max_depth: int) -> Optional[Word]:
    """Search for a cylinder inside ``{x : s^n x = s^m x}``.

    Returns the first word ``w`` (by length, then lexicographically) such that
    every point of ``[w]`` satisfies ``x[n+i] == x[m+i]`` for all ``i``, or
    ``None`` if no such word has length ``<= max_depth``.

    Every admissible extension of ``w`` up to length ``max(|w|, n) + (n-m) + 1``
    is checked.  That horizon suffices: a first violation further out sits
    after a branching vertex which, by periodicity, already occurs inside the
    horizon where the other branch gives a shorter violating word.
    """
    if n == m:
        raise ValueError("n and m must differ")
    if n < m:
        n, m = m, n
    p = n - m
    for d in range(max_depth + 1):
        horizon = max(d, n) + p + 1
        for w in A.words(d):
            if all(
                all(x[j] == x[j - p] for j in range(n, horizon))
                for x in A.extensions(w, horizon - d)
            ):
                return w
    return None


# -- eventually periodic points ---------------------------------------------


def _primitive(cycle: tuple) -> tuple:
    k = len(cycle)
    for d in range(1, k + 1):
        if k % d == 0 and cycle == cycle[:d] * (k // d):
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class EvPerPoint:
    """The point ``preperiod + cycle + cycle + ...``, stored in canonical form.

    Canonical form: primitive cycle and shortest preperiod (the cycle rotation
    is then determined by the point), so ``==`` is point equality.
    """

    preperiod: tuple
    cycle: tuple

    def __init__(self, preperiod: Iterable[int], cycle: Iterable[int]):
        pre = tuple(preperiod)
        cyc = tuple(cycle)
        if not cyc:
            raise InvalidWordError("cycle must be nonempty")
        cyc = _primitive(cyc)
        while pre and pre[-1] == cyc[-1]:
            pre = pre[:-1]
            cyc = cyc[-1:] + cyc[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "cycle", cyc)

    def prefix(self, k: int) -> Word:
        out = list(self.preperiod[:k])
        i = 0
        while len(out) < k:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return tuple(out)

    def check(self, A: TransitionMatrix) -> EvPerPoint:
        w = self.preperiod + self.cycle + self.cycle[:1]
        if not A.is_admissible(w):
            raise InvalidWordError(f"point {self} is not in the shift space")
        return self

    @property
    def tail_class(self) -> tuple:
        """Lexicographically least rotation of the cycle."""
        c = self.cycle
        return min(c[i:] + c[:i] for i in range(len(c)))

    def __str__(self):
        pre = "".join(map(str, self.preperiod))
        return f"{pre}({''.join(map(str, self.cycle))})^inf"


def shift_point(x: EvPerPoint, k: int = 1) -> EvPerPoint:
    pre, cyc = x.preperiod, x.cycle
    if k <= len(pre):
        return EvPerPoint(pre[k:], cyc)
    r = (k - len(pre)) % len(cyc)
    return EvPerPoint((), cyc[r:] + cyc[:r])


def points_equal(x: EvPerPoint, y: EvPerPoint) -> bool:
    return x == y


def trajectory_equivalent(x: EvPerPoint, y: EvPerPoint) -> bool:
    """Whether ``s^n x == s^m y`` for some ``n, m``: same cycle up to rotation."""
    return x.tail_class == y.tail_class


def point_ops(x: EvPerPoint, y: EvPerPoint, k: int) -> tuple:
    return shift_point(x, k), points_equal(x, y), trajectory_equivalent(x, y)
