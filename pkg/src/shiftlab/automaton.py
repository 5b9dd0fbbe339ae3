"""Labelled graphs presenting one-dimensional shifts.

A ``LabeledGraph`` presents the set of bi-infinite label sequences of its
bi-infinite paths.  After trimming to the essential part (states with a
predecessor and a successor) every finite path extends to a bi-infinite
one, so a finite word with holes is allowed exactly when some path reads
it.  That gives exact window counts, enumeration and membership by a
subset dynamic programme over the positions of the window.
"""
from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Block = tuple  # (offsets, symbols) with min offset 0


class LabeledGraph:
    """Essential labelled graph over ``alphabet``.

    Parameters
    ----------
    alphabet : sequence of str
        Symbol order used for enumeration.
    edges : iterable of (src, symbol, dst)
        Edges of the graph before trimming.
    """

    def __init__(self, alphabet: Sequence[str], edges: Iterable[tuple]):
        self.alphabet = tuple(alphabet)
        edges = set(edges)
        while True:
            has_in = {d for _, _, d in edges}
            has_out = {s for s, _, _ in edges}
            kept = {e for e in edges if e[0] in has_in and e[2] in has_out}
            if kept == edges:
                break
            edges = kept
        self.states = tuple(sorted({s for s, _, _ in edges} | {d for _, _, d in edges}, key=repr))
        self._index = {s: i for i, s in enumerate(self.states)}
        succ: dict = {}
        for s, a, d in edges:
            succ.setdefault(self._index[s], {}).setdefault(a, set()).add(self._index[d])
        self._succ = {s: {a: frozenset(ds) for a, ds in m.items()} for s, m in succ.items()}
        self.edges = tuple(sorted(edges, key=repr))
        self.right_resolving = all(len(ds) == 1 for m in self._succ.values() for ds in m.values())
        self._step_cache: dict = {}

    @classmethod
    def from_blocks(cls, alphabet: Sequence[str], blocks: Iterable[Block]) -> "LabeledGraph":
        """Higher-block presentation of the shift avoiding ``blocks``.

        States are words of length ``L - 1`` where ``L`` is the largest
        block span; an edge appends one symbol when the resulting window
        of length ``L`` contains no block.
        """
        blocks = list(blocks)
        alphabet = tuple(alphabet)
        if any(not off for off, _ in blocks):
            return cls(alphabet, [])
        span = max((max(off) + 1 for off, _ in blocks if off), default=1)
        if span <= 1:
            bad = {syms[0] for off, syms in blocks if off}
            return cls(alphabet, [((), a, ()) for a in alphabet if a not in bad])
        edges = []
        for window in itertools.product(alphabet, repeat=span):
            if not any(_occurs(window, b) for b in blocks):
                edges.append((window[:-1], window[-1], window[1:]))
        return cls(alphabet, edges)

    # -- subset dynamics ---------------------------------------------------
    @property
    def empty(self) -> bool:
        return not self.states

    def full(self) -> frozenset:
        return frozenset(range(len(self.states)))

    def step(self, S: frozenset, symbol: str | None) -> frozenset:
        """States reachable from ``S`` by one edge labelled ``symbol``
        (any label when ``symbol`` is None)."""
        key = (S, symbol)
        hit = self._step_cache.get(key)
        if hit is None:
            out: set = set()
            for s in S:
                m = self._succ.get(s, {})
                if symbol is None:
                    for ds in m.values():
                        out |= ds
                else:
                    out |= m.get(symbol, frozenset())
            hit = frozenset(out)
            if len(self._step_cache) > 200_000:
                self._step_cache.clear()
            self._step_cache[key] = hit
        return hit

    def count(self, mask: Sequence[bool]) -> int:
        """Number of distinct patterns on the marked positions of a window.

        ``mask[i]`` is True for positions belonging to the domain and False
        for holes in between.
        """
        if self.empty:
            return 0
        layer = {self.full(): 1}
        for marked in mask:
            nxt: dict = {}
            for S, n in layer.items():
                if marked:
                    for a in self.alphabet:
                        T = self.step(S, a)
                        if T:
                            nxt[T] = nxt.get(T, 0) + n
                else:
                    T = self.step(S, None)
                    if T:
                        nxt[T] = nxt.get(T, 0) + n
            layer = nxt
        return sum(layer.values())

    def words(self, mask: Sequence[bool]) -> Iterator[tuple]:
        """Allowed patterns on the marked positions in lexicographic order."""
        if self.empty:
            return
        alive = self._alive(mask)
        n = len(mask)

        def rec(i: int, S: frozenset, acc: list):
            if i == n:
                yield tuple(acc)
                return
            if mask[i]:
                for a in self.alphabet:
                    T = self.step(S, a) & alive[i + 1]
                    if T:
                        acc.append(a)
                        yield from rec(i + 1, T, acc)
                        acc.pop()
            else:
                T = self.step(S, None) & alive[i + 1]
                if T:
                    yield from rec(i + 1, T, acc)

        yield from rec(0, self.full(), [])

    def _alive(self, slots: Sequence) -> list[frozenset]:
        """``alive[i]``: states from which positions ``i..`` can be read.

        ``slots[i]`` is a symbol (fixed), True (any symbol, branching) or
        False/None (any symbol).
        """
        n = len(slots)
        alive = [frozenset()] * (n + 1)
        alive[n] = self.full()
        for i in range(n - 1, -1, -1):
            slot = slots[i]
            keep = set()
            for s in range(len(self.states)):
                m = self._succ.get(s, {})
                if isinstance(slot, str):
                    if m.get(slot, frozenset()) & alive[i + 1]:
                        keep.add(s)
                elif any(ds & alive[i + 1] for ds in m.values()):
                    keep.add(s)
            alive[i] = frozenset(keep)
        return alive

    def accepts(self, slots: Sequence[str | None]) -> bool:
        """Whether a word with holes (None) is read by some path."""
        if self.empty:
            return False
        S = self.full()
        for slot in slots:
            S = self.step(S, slot)
            if not S:
                return False
        return True

    def sample(self, slots: Sequence[str | None], rng: random.Random) -> tuple | None:
        """A random allowed word agreeing with the fixed symbols of ``slots``."""
        if self.empty:
            return None
        alive = self._alive(slots)
        S = alive[0]
        if not S:
            return None
        out = []
        for i, slot in enumerate(slots):
            choices = [slot] if isinstance(slot, str) else list(self.alphabet)
            options = [(a, self.step(S, a) & alive[i + 1]) for a in choices]
            options = [(a, T) for a, T in options if T]
            a, S = rng.choice(options)
            out.append(a)
        return tuple(out)

    def has_periodic_point(self, word: Sequence[str]) -> bool:
        """Whether the periodic sequence ``...www...`` is presented."""
        if self.empty or not word:
            return False
        S = self.full()
        for _ in range(len(self.states) + 1):
            for a in word:
                S = self.step(S, a)
            if not S:
                return False
        return True

    # -- entropy -----------------------------------------------------------
    def adjacency(self) -> np.ndarray:
        n = len(self.states)
        A = np.zeros((n, n))
        for s, m in self._succ.items():
            for ds in m.values():
                for d in ds:
                    A[s, d] += 1
        return A

    def components(self) -> list[list[int]]:
        """Strongly connected components (Tarjan, iterative)."""
        index: dict = {}
        low: dict = {}
        stack: list = []
        on_stack: set = set()
        out: list = []
        counter = 0
        succ = {s: sorted({d for ds in m.values() for d in ds}) for s, m in self._succ.items()}
        for root in range(len(self.states)):
            if root in index:
                continue
            work = [(root, iter(succ.get(root, ())))]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                nxt = next(it, None)
                if nxt is not None:
                    if nxt not in index:
                        index[nxt] = low[nxt] = counter
                        counter += 1
                        stack.append(nxt)
                        on_stack.add(nxt)
                        work.append((nxt, iter(succ.get(nxt, ()))))
                    elif nxt in on_stack:
                        low[v] = min(low[v], index[nxt])
                    continue
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(sorted(comp))
        return out

    def perron_root(self, tol: float = 1e-12, max_iter: int = 1_000_000) -> float:
        """Spectral radius of the adjacency matrix by power iteration.

        The radius is the largest one over the strongly connected
        components.  On each component the iteration runs on ``A + I``,
        which is primitive, so periodic components converge too.
        """
        if not self.right_resolving:
            raise ValueError("entropy needs a right-resolving presentation")
        if self.empty:
            return 0.0
        A = self.adjacency()
        best = 0.0
        for comp in self.components():
            block = A[np.ix_(comp, comp)]
            if len(comp) == 1 and block[0, 0] == 0:
                continue
            best = max(best, _power_iteration(block, tol, max_iter))
        return best


def _power_iteration(A: np.ndarray, tol: float, max_iter: int) -> float:
    """Perron root of an irreducible non-negative matrix."""
    B = A + np.eye(len(A))
    v = np.full(len(A), 1.0 / len(A))
    lam = 0.0
    for _ in range(max_iter):
        w = B @ v
        new = float(w.sum())
        w = w / new
        # stop only once both the ratio and the direction have settled;
        # equal successive ratios alone can happen by coincidence
        moved = float(np.abs(w - v).sum())
        v = w
        if abs(new - lam) < tol and moved < tol:
            lam = new
            break
        lam = new
    return lam - 1.0


def _occurs(window: Sequence[str], block: Block) -> bool:
    offsets, symbols = block
    if not offsets:
        return True
    top = max(offsets)
    for start in range(len(window) - top):
        if all(window[start + o] == s for o, s in zip(offsets, symbols)):
            return True
    return False


def normalise_block(cells: Sequence[int], symbols: Sequence[str]) -> Block:
    """Shift a 1-D block so its leftmost cell is 0 and sort by position."""
    if not cells:
        return ((), ())
    lo = min(cells)
    pairs = sorted(zip((c - lo for c in cells), symbols))
    return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def window_slots(values: Mapping[int, str]) -> tuple[int, list]:
    """Lay a 1-D pattern over its hull: (start, slots with None for holes)."""
    if not values:
        return 0, []
    lo, hi = min(values), max(values)
    return lo, [values.get(i) for i in range(lo, hi + 1)]


def log_base(x: float, base: float) -> float:
    return math.log(x) / math.log(base)
