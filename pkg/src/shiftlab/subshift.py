"""Patterns, forbidden-block subshifts and window enumeration.

Window pattern sets carry an exactness flag.  ``exact`` sets come from the
one-dimensional automaton oracle and equal the true ``X_F``.  Elsewhere
``certified(r)`` means "restriction to ``F`` of a pattern that is locally
admissible on ``F^{+r}``"; these sets contain ``X_F`` and shrink as ``r``
grows.

Examples
--------
>>> gm = golden_mean()
>>> [p.word() for p in enumerate_patterns(gm, interval(3))]
['000', '001', '010', '100', '101']
"""
from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .automaton import LabeledGraph, normalise_block, window_slots
from .cellspace import Cell, CellSet, CellSpace, closure, get_space, interior
from .errors import GluingPreconditionError, SpecError, UnsupportedError

#: certification radius used when a non-1-D membership query gives none
DEFAULT_CERT_RADIUS = 2


# -- exactness -----------------------------------------------------------------

@dataclass(frozen=True, order=False)
class Exactness:
    """``exact`` or ``certified(radius)``."""

    radius: int | None = None  # None means exact

    @property
    def exact(self) -> bool:
        return self.radius is None

    def __str__(self) -> str:
        return "exact" if self.radius is None else f"certified({self.radius})"

    def weakest(self, other: "Exactness") -> "Exactness":
        if self.exact:
            return other
        if other.exact:
            return self
        return Exactness(min(self.radius, other.radius))


EXACT = Exactness()


def certified(r: int) -> Exactness:
    return Exactness(r)


# -- patterns ------------------------------------------------------------------

class Pattern:
    """A finite pattern ``p ∈ Q^A`` over a cell space.

    Iteration, ``items`` and ``word`` follow the canonical cell order.
    """

    __slots__ = ("space", "_values", "_domain", "_hash")

    def __init__(self, space: CellSpace, values: Mapping[Cell, str] | Iterable[tuple] = ()):
        self.space = space
        self._values = dict(values)
        self._domain = None
        self._hash = None

    @classmethod
    def from_word(
        cls, space: CellSpace, word: str | Sequence[str], start: int = 0,
        cells: Sequence[Cell] | None = None,
    ) -> "Pattern":
        """Pattern whose symbols are read off ``word``.

        Cells default to ``start, start + 1, ...`` (integer spaces only).
        """
        symbols = list(word)
        if cells is None:
            cells = range(start, start + len(symbols))
        cells = list(cells)
        if len(cells) != len(symbols):
            raise SpecError("word length does not match number of cells")
        return cls(space, zip(cells, symbols))

    @property
    def domain(self) -> CellSet:
        if self._domain is None:
            self._domain = CellSet(self.space, self._values)
        return self._domain

    @property
    def values(self) -> dict:
        return dict(self._values)

    def __getitem__(self, m: Cell) -> str:
        return self._values[m]

    def get(self, m: Cell, default=None):
        return self._values.get(m, default)

    def __contains__(self, m: object) -> bool:
        return m in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.domain)

    def items(self) -> list[tuple]:
        return [(m, self._values[m]) for m in self.domain]

    def symbols(self) -> tuple:
        return tuple(self._values[m] for m in self.domain)

    def word(self) -> str:
        syms = self.symbols()
        sep = "" if all(len(s) == 1 for s in syms) else ","
        return sep.join(syms)

    def restrict(self, cells: Iterable[Cell]) -> "Pattern":
        return Pattern(self.space, ((m, self._values[m]) for m in cells if m in self._values))

    def overwrite(self, other: "Pattern") -> "Pattern":
        merged = dict(self._values)
        merged.update(other._values)
        return Pattern(self.space, merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._values == other._values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{self.space.cell_str(m)}:{v}" for m, v in self.items())
        return f"Pattern({{{body}}})"

    def to_json(self) -> dict:
        return {
            "cells": [self.space.cell_json(m) for m in self.domain],
            "word": self.word(),
        }


def interval(n: int, start: int = 0, space: CellSpace | None = None) -> CellSet:
    """The window ``[start, start + n)`` of the integer line."""
    return CellSet(space or get_space("Z"), range(start, start + n))


def shift_pattern(space: CellSpace, m: Cell, p: Pattern) -> Pattern:
    """``m ⊛ p``: the pattern with ``(m ⊛ p)(m ⊳ a) = p(a)``."""
    return Pattern(space, ((space.act(m, a), v) for a, v in p._values.items()))


def stab_pattern(space: CellSpace, h: str, p: Pattern) -> Pattern:
    """``h ⊛ p`` for a stabiliser element ``h``."""
    return Pattern(space, ((space.stab_act(h, a), v) for a, v in p._values.items()))


def _occurs_with(space, p: Pattern, p2: Pattern, m: Cell, hs) -> bool:
    for h in hs:
        ok = True
        for a, v in p._values.items():
            if p2._values.get(space.act(m, space.stab_act(h, a))) != v:
                ok = False
                break
        if ok:
            return True
    return False


def semi_occurs_at(space: CellSpace, p: Pattern, p2: Pattern, m: Cell) -> bool:
    """Whether ``h0 ⊛ p`` occurs at ``m`` in ``p2`` for some ``h0 ∈ H0``."""
    return _occurs_with(space, p, p2, m, space.big_stabiliser)


def occurs_at(space: CellSpace, p: Pattern, p2: Pattern, m: Cell) -> bool:
    """Whether ``m ⊛ p`` is a restriction of ``p2``."""
    return _occurs_with(space, p, p2, m, ("e",))


def _candidate_centres(space: CellSpace, p: Pattern, p2: Pattern) -> CellSet:
    reach = max(space.distance(space.origin, a) for a in p._values)
    return closure(space, p2.domain, reach)


def semi_occurs(space: CellSpace, p: Pattern, p2: Pattern) -> bool:
    if not len(p):
        return True
    return any(semi_occurs_at(space, p, p2, m) for m in _candidate_centres(space, p, p2))


def occurs(space: CellSpace, p: Pattern, p2: Pattern) -> bool:
    if not len(p):
        return True
    return any(occurs_at(space, p, p2, m) for m in _candidate_centres(space, p, p2))


# -- pattern sets ----------------------------------------------------------------

class PatternSet:
    """Canonically ordered patterns on a common domain.

    Rows are tuples of symbols in the canonical order of ``domain``.
    """

    def __init__(self, space: CellSpace, domain: CellSet, rows: Iterable[tuple], exactness: Exactness,
                 alphabet: Sequence[str] | None = None):
        self.space = space
        self.domain = domain
        rows = set(rows)
        if alphabet is not None:
            rank = {a: i for i, a in enumerate(alphabet)}
            self.rows = tuple(sorted(rows, key=lambda r: tuple(rank[s] for s in r)))
        else:
            self.rows = tuple(sorted(rows))
        self._rowset = frozenset(self.rows)
        self.exactness = exactness

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Pattern]:
        cells = self.domain.ordered
        for row in self.rows:
            yield Pattern(self.space, zip(cells, row))

    @property
    def members(self) -> list[Pattern]:
        return list(self)

    def row_of(self, p: Pattern) -> tuple | None:
        try:
            return tuple(p[m] for m in self.domain.ordered)
        except KeyError:
            return None

    def __contains__(self, p: object) -> bool:
        if isinstance(p, Pattern):
            if p.domain != self.domain:
                return False
            return self.row_of(p) in self._rowset
        return p in self._rowset

    def words(self) -> list[str]:
        return [p.word() for p in self]

    def domain_hash(self) -> str:
        text = ";".join(self.space.cell_str(m) for m in self.domain.ordered)
        return hashlib.sha256(f"{self.space.name}|{text}".encode()).hexdigest()[:12]

    def export_lines(self) -> list[str]:
        """``domain-hash, pattern-string, exactness`` records."""
        h, ex = self.domain_hash(), str(self.exactness)
        return [f"{h},{p.word()},{ex}" for p in self]

    def __repr__(self) -> str:
        return f"PatternSet(|F|={len(self.domain)}, {len(self)} members, {self.exactness})"


# -- subshift specifications ---------------------------------------------------------

class SubshiftSpec:
    """A subshift given by forbidden blocks or, in one dimension, by a graph.

    Parameters
    ----------
    space : CellSpace
    alphabet : sequence of str
    forbidden : iterable of Pattern
        Finite forbidden blocks; occurrences are semi-occurrences.
    name : str
    graph : LabeledGraph, optional
        Presentation for shifts without a finite forbidden set (the even
        shift).  Only meaningful over one-dimensional spaces.
    memory : int, optional
        A declared memory, used instead of the derived one when given.
    """

    def __init__(self, space: CellSpace, alphabet: Sequence[str], forbidden: Iterable[Pattern] = (),
                 name: str = "custom", graph: LabeledGraph | None = None, memory: int | None = None,
                 params: Mapping[str, Any] | None = None):
        self.space = space
        self.alphabet = tuple(str(a) for a in alphabet)
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise SpecError("alphabet must be a non-empty list of distinct symbols")
        self.forbidden = tuple(forbidden)
        self.name = name
        self.graph = graph
        self.finite_type = graph is None
        self.params = dict(params or {})
        self._memory = memory
        known = set(self.alphabet)
        for f in self.forbidden:
            if f.space is not space:
                raise SpecError("forbidden block lives on a different space")
            bad = set(f._values.values()) - known
            if bad:
                raise SpecError(f"forbidden block uses symbols outside the alphabet: {sorted(bad)}")
        if graph is not None:
            if not space.one_dimensional:
                raise SpecError("graph-defined shifts are only supported over Z")
            if set(graph.alphabet) != known:
                raise SpecError("graph alphabet differs from the spec alphabet")
        self._placements: dict = {}
        self._oracle = None
        self._allowed_cache: dict = {}

    def __repr__(self) -> str:
        return f"<SubshiftSpec {self.name} over {self.space.name}>"

    # -- oracles ------------------------------------------------------------
    @property
    def has_exact_oracle(self) -> bool:
        return self.space.one_dimensional

    @property
    def oracle(self) -> LabeledGraph:
        """The one-dimensional presentation (exact oracle)."""
        if not self.has_exact_oracle:
            raise UnsupportedError(f"no exact oracle over {self.space.name}")
        if self._oracle is None:
            if self.graph is not None:
                self._oracle = self.graph
            else:
                blocks = set()
                for f in self.forbidden:
                    for h in self.space.big_stabiliser:
                        cells = [self.space.stab_act(h, a) for a in f._values]
                        blocks.add(normalise_block(cells, list(f._values.values())))
                self._oracle = LabeledGraph.from_blocks(self.alphabet, sorted(blocks))
        return self._oracle

    @property
    def derived_memory(self) -> int | None:
        """Smallest κ such that every forbidden block fits in a ball of radius κ."""
        if self._memory is not None:
            return self._memory
        if not self.finite_type:
            return None
        best = 0
        for f in self.forbidden:
            if len(f):
                best = max(best, _radius(self.space, f.domain))
        return best

    # -- local admissibility ------------------------------------------------
    def placements(self, domain: CellSet) -> tuple:
        """All placements of forbidden blocks whose cells lie in ``domain``.

        Each placement is a tuple of ``(cell, symbol)`` pairs.
        """
        key = domain.cells
        hit = self._placements.get(key)
        if hit is not None:
            return hit
        space = self.space
        out = set()
        for f in self.forbidden:
            if not len(f):
                out.add(())
                continue
            reach = max(space.distance(space.origin, a) for a in f._values)
            for m in closure(space, domain, reach):
                for h in space.big_stabiliser:
                    cells = [(space.act(m, space.stab_act(h, a)), v) for a, v in f._values.items()]
                    if all(c in domain for c, _ in cells):
                        out.add(tuple(sorted(cells, key=lambda cv: space.sort_key(cv[0]))))
        hit = tuple(sorted(out, key=lambda pl: [space.sort_key(c) for c, _ in pl]))
        if len(self._placements) > 4096:
            self._placements.clear()
        self._placements[key] = hit
        return hit


def _radius(space: CellSpace, cells: CellSet) -> int:
    """Smallest r such that ``cells`` lies in a ball of radius r about some cell."""
    diam = max(space.distance(a, b) for a in cells for b in cells)
    best = diam
    for c in closure(space, cells, diam):
        r = max(space.distance(c, a) for a in cells)
        best = min(best, r)
    return best


def locally_admissible(spec: SubshiftSpec, p: Pattern) -> bool:
    """True iff no forbidden block semi-occurs in ``p``.

    For graph-defined shifts local admissibility is taken to be membership
    in the language of the graph, since their forbidden set is infinite.
    """
    if not spec.finite_type:
        return _exact_allowed(spec, p)
    values = p._values
    for pl in spec.placements(p.domain):
        if all(values[c] == s for c, s in pl):
            return False
    return True


def _exact_allowed(spec: SubshiftSpec, p: Pattern) -> bool:
    if not len(p):
        return not spec.oracle.empty
    _, slots = window_slots(p._values)
    return spec.oracle.accepts(slots)


def _exactness_for(spec: SubshiftSpec, r) -> Exactness:
    if r == "auto" or r is None:
        if not spec.has_exact_oracle:
            raise UnsupportedError(
                f"no exact oracle over {spec.space.name}; pass an integer certification radius"
            )
        return EXACT
    if not spec.finite_type:
        return EXACT
    if int(r) < 0:
        raise SpecError("certification radius must be non-negative")
    return certified(int(r))


def _order_extension(space: CellSpace, F: CellSet, D: CellSet) -> list:
    """Cells of ``D ∖ F`` ordered by distance to ``F`` then canonically."""
    rest = D - F
    if not rest:
        return []
    dist = {}
    frontier = set(F.cells)
    seen = set(F.cells)
    level = 0
    while frontier and len(dist) < len(rest):
        level += 1
        nxt = set()
        for c in frontier:
            for n in space.ball(c, 1):
                if n in D and n not in seen:
                    seen.add(n)
                    nxt.add(n)
                    dist[n] = level
        frontier = nxt
    leftover = [c for c in rest if c not in dist]
    ordered = sorted(dist, key=lambda c: (dist[c], space.sort_key(c)))
    return ordered + list(leftover)


class _Backtracker:
    """Backtracking over a cell order with forbidden-placement pruning."""

    def __init__(self, spec: SubshiftSpec, order: list, domain: CellSet):
        self.spec = spec
        self.order = order
        pos = {c: i for i, c in enumerate(order)}
        self.checks: list[list] = [[] for _ in order]
        self.impossible = False
        for pl in spec.placements(domain):
            if not pl:
                self.impossible = True
                continue
            idx = [(pos[c], s) for c, s in pl]
            self.checks[max(i for i, _ in idx)].append(idx)
        self.assign: list = [None] * len(order)

    def ok(self, i: int) -> bool:
        a = self.assign
        for pl in self.checks[i]:
            if all(a[j] == s for j, s in pl):
                return False
        return True

    def extendable(self, i: int, fixed: Mapping[int, str] | None = None) -> bool:
        if i == len(self.order):
            return True
        choices = (fixed[i],) if fixed and i in fixed else self.spec.alphabet
        for s in choices:
            self.assign[i] = s
            if self.ok(i) and self.extendable(i + 1, fixed):
                return True
        self.assign[i] = None
        return False

    def enumerate(self, n_free: int) -> Iterator[tuple]:
        if self.impossible:
            return
        alphabet = self.spec.alphabet

        def rec(i):
            if i == n_free:
                if self.extendable(n_free):
                    yield tuple(self.assign[:n_free])
                return
            for s in alphabet:
                self.assign[i] = s
                if self.ok(i):
                    yield from rec(i + 1)
            self.assign[i] = None

        yield from rec(0)


def enumerate_patterns(spec: SubshiftSpec, F: Iterable[Cell], r: int | str = "auto") -> PatternSet:
    """``X_F`` (exact) or its ``certified(r)`` over-approximation."""
    space = spec.space
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    ex = _exactness_for(spec, r)
    if ex.exact:
        rows = _exact_rows(spec, F)
    else:
        D = closure(space, F, ex.radius)
        order = list(F.ordered) + _order_extension(space, F, D)
        rows = list(_Backtracker(spec, order, D).enumerate(len(F)))
    return PatternSet(space, F, rows, ex, spec.alphabet)


def _exact_rows(spec: SubshiftSpec, F: CellSet) -> Iterator[tuple]:
    oracle = spec.oracle
    if not len(F):
        return iter([()] if not oracle.empty else [])
    lo, hi = F.ordered[0], F.ordered[-1]
    mask = [i in F for i in range(lo, hi + 1)]
    return oracle.words(mask)


def count_patterns(spec: SubshiftSpec, F: Iterable[Cell], r: int | str = "auto") -> int:
    """``|X_F|`` without materialising patterns when the exact oracle applies."""
    space = spec.space
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    ex = _exactness_for(spec, r)
    if ex.exact:
        oracle = spec.oracle
        if not len(F):
            return 0 if oracle.empty else 1
        lo, hi = F.ordered[0], F.ordered[-1]
        return oracle.count([i in F for i in range(lo, hi + 1)])
    return len(enumerate_patterns(spec, F, r))


def is_allowed(spec: SubshiftSpec, p: Pattern, r: int | str = "auto") -> bool:
    """Membership of ``p`` in ``X_{dom p}`` (exact in 1-D, certified otherwise)."""
    if spec.has_exact_oracle:
        return _exact_allowed(spec, p)
    radius = DEFAULT_CERT_RADIUS if r in ("auto", None) else int(r)
    space = spec.space
    F = p.domain
    D = closure(space, F, radius)
    order = list(F.ordered) + _order_extension(space, F, D)
    bt = _Backtracker(spec, order, D)
    if bt.impossible:
        return False
    fixed = {i: p[c] for i, c in enumerate(F.ordered)}
    return bt.extendable(0, fixed)


def membership_exactness(spec: SubshiftSpec, r: int | str = "auto") -> Exactness:
    if spec.has_exact_oracle:
        return EXACT
    return certified(DEFAULT_CERT_RADIUS if r in ("auto", None) else int(r))


class _AllowedMemo:
    """Memoised membership with translation normalisation in one dimension."""

    def __init__(self, spec: SubshiftSpec, r):
        self.spec = spec
        self.r = r
        self.cache: dict = {}

    def __call__(self, items: Sequence[tuple]) -> bool:
        if not items:
            return True
        if self.spec.space.one_dimensional:
            lo = min(c for c, _ in items)
            key = tuple(sorted((c - lo, s) for c, s in items))
        else:
            key = tuple(sorted(items, key=lambda cs: self.spec.space.sort_key(cs[0])))
        hit = self.cache.get(key)
        if hit is None:
            hit = is_allowed(self.spec, Pattern(self.spec.space, items), self.r)
            self.cache[key] = hit
        return hit


# -- verdicts ----------------------------------------------------------------

@dataclass
class Verdict:
    """Outcome of a bounded semi-decision procedure.

    ``holds`` is True when no counterexample was found within ``bound``.
    """

    check: str
    holds: bool
    bound: int | None
    exactness: Exactness
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    @property
    def status(self) -> str:
        if self.holds:
            return f"holds-up-to({self.bound})"
        return "counterexample"

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "bound": self.bound,
            "exactness": str(self.exactness),
        }
        if self.witness is not None:
            out["witness"] = _witness_json(self.witness)
        if self.details:
            out["details"] = self.details
        return out


def _witness_json(w):
    if isinstance(w, Pattern):
        return w.to_json()
    if isinstance(w, (tuple, list)):
        return [_witness_json(x) for x in w]
    return w


# -- structural checkers --------------------------------------------------------

def check_kappa_step(spec: SubshiftSpec, kappa: int, R: int, r: int | str = "auto") -> Verdict:
    """Look for ``c`` on ``ball(R)`` whose κ-ball windows are allowed but ``c`` is not.

    Candidates are visited in lexicographic order of the canonical cell
    order, so the reported counterexample is the first one.
    """
    if kappa > R:
        raise SpecError("κ must not exceed the test radius")
    space = spec.space
    W = space.ball(space.origin, R)
    order = list(W.ordered)
    pos = {c: i for i, c in enumerate(order)}
    allowed = _AllowedMemo(spec, r)
    windows: list[list] = [[] for _ in order]
    seen = set()
    for m in order:
        win = tuple(sorted(pos[c] for c in space.ball(m, kappa) if c in pos))
        if win not in seen:
            seen.add(win)
            windows[win[-1]].append(win)
    assign: list = [None] * len(order)
    ex = membership_exactness(spec, r)

    def rec(i):
        if i == len(order):
            items = list(zip(order, assign))
            if not allowed(items):
                return Pattern(space, items)
            return None
        for s in spec.alphabet:
            assign[i] = s
            if all(allowed([(order[j], assign[j]) for j in win]) for win in windows[i]):
                found = rec(i + 1)
                if found is not None:
                    return found
        assign[i] = None
        return None

    witness = rec(0)
    return Verdict("kappa-step", witness is None, R, ex, witness, {"kappa": kappa})


def default_propagation_windows(spec: SubshiftSpec, rho: int, width: int | None = None,
                                samples: int = 200, seed: int = 0) -> list[CellSet]:
    """Finite windows for the bounded-propagation check.

    Over Z: every subset of ``[0, width)`` containing 0, ordered by its
    largest cell.  Elsewhere: random subsets of ``ball(reach + 2)``
    containing the origin.  ``reach`` is the larger of ρ and the memory,
    so that every forbidden block fits in some window.
    """
    space = spec.space
    reach = max(rho, spec.derived_memory or 0)
    if space.one_dimensional:
        width = width if width is not None else 2 * reach + 2
        out = []
        for top in range(width):
            inner = list(range(1, top))
            for k in range(len(inner) + 1):
                for combo in itertools.combinations(inner, k):
                    cells = {0, top, *combo}
                    out.append(CellSet(space, cells))
        return out
    rng = random.Random(seed)
    pool = [c for c in space.ball(space.origin, reach + 2) if c != space.origin]
    out = []
    for _ in range(samples):
        k = rng.randint(0, min(len(pool), 8))
        out.append(CellSet(space, [space.origin, *rng.sample(pool, k)]))
    return out


def check_bounded_propagation(spec: SubshiftSpec, rho: int, windows: Iterable[Iterable[Cell]] | None = None,
                              r: int | str = "auto") -> Verdict:
    """Search for ``p`` whose ρ-local restrictions are allowed but which is not."""
    space = spec.space
    if windows is None:
        windows = default_propagation_windows(spec, rho)
    allowed = _AllowedMemo(spec, r)
    ex = membership_exactness(spec, r)
    count = 0
    largest = 0
    for F in windows:
        F = F if isinstance(F, CellSet) else CellSet(space, F)
        count += 1
        largest = max(largest, len(F))
        order = list(F.ordered)
        pos = {c: i for i, c in enumerate(order)}
        local: list[list] = [[] for _ in order]
        for f in order:
            win = tuple(sorted(pos[c] for c in space.ball(f, rho) if c in pos))
            local[win[-1]].append(win)
        assign: list = [None] * len(order)

        def rec(i):
            if i == len(order):
                items = list(zip(order, assign))
                return None if allowed(items) else Pattern(space, items)
            for s in spec.alphabet:
                assign[i] = s
                if all(allowed([(order[j], assign[j]) for j in w]) for w in local[i]):
                    found = rec(i + 1)
                    if found is not None:
                        return found
            assign[i] = None
            return None

        witness = rec(0)
        if witness is not None:
            return Verdict("bounded-propagation", False, rho, ex, witness,
                           {"rho": rho, "windows_checked": count})
    return Verdict("bounded-propagation", True, rho, ex, None,
                   {"rho": rho, "windows_checked": count, "largest_window": largest})


def default_irreducibility_samples(spec: SubshiftSpec, r: int | str = "auto") -> list[tuple]:
    """Pairs of allowed patterns on small domains around the origin."""
    space = spec.space
    domains = [space.ball(space.origin, 0)]
    if space.one_dimensional:
        domains.append(interval(2, space=space))
    domains.append(space.ball(space.origin, 1))
    pats = []
    for D in domains:
        pats.extend(enumerate_patterns(spec, D, r if not spec.has_exact_oracle else "auto"))
    return [(p, q) for p in pats for q in pats]


def check_strong_irreducibility(spec: SubshiftSpec, kappa: int, samples: Iterable[tuple] | None = None,
                                R: int | None = None, r: int | str = "auto") -> Verdict:
    """Try to embed pairs ``(p, m ⊛ p′)`` at distance ≥ κ+1 in one allowed pattern.

    ``p′`` is translated to every ``m ∈ ball(R)``; the pair passes when the
    union of the two patterns is allowed.
    """
    space = spec.space
    if samples is None:
        samples = default_irreducibility_samples(spec, r)
    samples = list(samples)
    if R is None:
        spread = max((space.distance(space.origin, c) for p, q in samples for c in (*p, *q)), default=0)
        R = kappa + 2 * spread + 3
    ex = membership_exactness(spec, r)
    centres = space.ball(space.origin, R)
    tried = 0
    for p, q0 in samples:
        if not (is_allowed(spec, p, r) and is_allowed(spec, q0, r)):
            continue
        for m in centres:
            q = shift_pattern(space, m, q0)
            d = space.set_distance(p.domain, q.domain) if len(p) and len(q) else None
            if d is None or d < kappa + 1:
                continue
            tried += 1
            if not is_allowed(spec, p.overwrite(q), r):
                return Verdict("strong-irreducibility", False, R, ex, (p, q),
                               {"kappa": kappa, "distance": d, "pairs_checked": tried})
    return Verdict("strong-irreducibility", True, R, ex, None, {"kappa": kappa, "pairs_checked": tried})


# -- gluing ----------------------------------------------------------------------

def glue(spec: SubshiftSpec, kappa: int, x: Pattern, pieces: Sequence[tuple]) -> Pattern:
    """Overwrite ``x`` by ``x_i`` on each ``A_i``.

    Requires the ``A_i^{+2κ}`` to be pairwise disjoint and inside
    ``W^{-2κ}`` (``W`` the domain of ``x``), and ``x_i = x`` on
    ``A_i^{+2κ} ∖ A_i``.  The result is checked to be locally admissible.
    """
    space = spec.space
    W = x.domain
    inner = interior(space, W, 2 * kappa)
    used: set = set()
    out = dict(x._values)
    for i, (A, xi) in enumerate(pieces):
        A = A if isinstance(A, CellSet) else CellSet(space, A)
        grown = closure(space, A, 2 * kappa)
        if not grown <= inner:
            raise GluingPreconditionError(i, "A^{+2κ} is not inside the 2κ-interior of the window")
        if not grown.isdisjoint(used):
            raise GluingPreconditionError(i, "A^{+2κ} overlaps an earlier piece")
        used |= grown.cells
        for c in grown:
            if c not in xi:
                raise GluingPreconditionError(i, f"piece undefined at {space.cell_str(c)}")
        for c in grown - A:
            if xi[c] != x[c]:
                raise GluingPreconditionError(i, f"piece disagrees with x on the boundary at {space.cell_str(c)}")
        for c in A:
            out[c] = xi[c]
    result = Pattern(space, out)
    if not locally_admissible(spec, result):
        raise GluingPreconditionError(-1, "glued pattern is not locally admissible (is the spec κ-step?)")
    return result


# -- named shifts -------------------------------------------------------------------

def _block(space: CellSpace, cells: Sequence, values: Sequence[str]) -> Pattern:
    return Pattern(space, zip((space.parse_cell(c) for c in cells), (str(v) for v in values)))


def full_shift(alphabet: Sequence[str] = ("0", "1"), space: CellSpace | str = "Z") -> SubshiftSpec:
    space = get_space(space) if isinstance(space, str) else space
    return SubshiftSpec(space, alphabet, (), name="full")


def empty_shift(alphabet: Sequence[str] = ("0", "1"), space: CellSpace | str = "Z") -> SubshiftSpec:
    space = get_space(space) if isinstance(space, str) else space
    return SubshiftSpec(space, alphabet, [Pattern(space, {})], name="empty")


def golden_mean(space: CellSpace | str = "Z") -> SubshiftSpec:
    """Binary configurations without two 1s adjacent along the first generator.

    Over ``Z`` these are the sequences without the factor ``11``.
    """
    space = get_space(space) if isinstance(space, str) else space
    step = space.step(space.origin, space.generators[0])
    return SubshiftSpec(space, "01", [Pattern(space, {space.origin: "1", step: "1"})], name="golden_mean")


def even_shift() -> SubshiftSpec:
    """Binary sequences with an even number of 0s between any two 1s.

    Not of finite type; backed by its two-state presentation.
    """
    g = LabeledGraph("01", [("A", "1", "A"), ("A", "0", "B"), ("B", "0", "A")])
    return SubshiftSpec(get_space("Z"), "01", (), name="even", graph=g)


def alt_00_11() -> SubshiftSpec:
    """No two equal adjacent symbols: the two alternating sequences."""
    Z = get_space("Z")
    return SubshiftSpec(Z, "01", [_block(Z, [0, 1], "00"), _block(Z, [0, 1], "11")], name="alt_00_11")


def f010_111() -> SubshiftSpec:
    """The shift avoiding 010 and 111."""
    Z = get_space("Z")
    return SubshiftSpec(Z, "01", [_block(Z, [0, 1, 2], "010"), _block(Z, [0, 1, 2], "111")], name="f010_111")


def gg_mean(q: int = 1, sets: Sequence[Sequence] = ((0, 1),), space: CellSpace | str = "Z") -> SubshiftSpec:
    """Generalised golden mean shift over ``{0, ..., q}``.

    Each set ``F_i`` (containing the origin) must, after every translation
    and stabiliser move, contain a cell with value 0.  The declared memory
    is the least ρ with every ``F_i ⊆ ball(ρ)``.
    """
    space = get_space(space) if isinstance(space, str) else space
    if q < 1 or not sets:
        raise SpecError("gg_mean needs q ≥ 1 and at least one set")
    alphabet = [str(i) for i in range(q + 1)]
    forbidden = []
    rho = 0
    for F in sets:
        cells = [space.parse_cell(c) for c in F]
        if space.origin not in cells:
            raise SpecError("every set of a generalised golden mean shift must contain the origin")
        rho = max(rho, max(space.distance(space.origin, c) for c in cells))
        for values in itertools.product(alphabet[1:], repeat=len(cells)):
            forbidden.append(Pattern(space, zip(cells, values)))
    return SubshiftSpec(space, alphabet, forbidden, name="gg_mean", memory=rho,
                        params={"q": q, "sets": [[space.cell_str(space.parse_cell(c)) for c in F] for F in sets]})


def parse_gg_mean(selector: str) -> SubshiftSpec:
    """``gg_mean:<q>:<F_1>/<F_2>/...`` with cells comma-separated."""
    parts = selector.split(":")
    if len(parts) == 1:
        return gg_mean()
    if len(parts) != 3:
        raise SpecError(f"bad gg_mean selector {selector!r}")
    try:
        q = int(parts[1])
    except ValueError:
        raise SpecError(f"bad gg_mean selector {selector!r}") from None
    sets = [[c for c in F.split(",") if c] for F in parts[2].split("/")]
    return gg_mean(q, sets)


NAMED_SHIFTS = {
    "golden_mean": golden_mean,
    "even": even_shift,
    "alt_00_11": alt_00_11,
    "gg_mean": gg_mean,
    "f010_111": f010_111,
    "full": full_shift,
}


def named_shift(name: str) -> SubshiftSpec:
    if name.startswith("gg_mean"):
        return parse_gg_mean(name)
    try:
        return NAMED_SHIFTS[name]()
    except KeyError:
        raise SpecError(f"unknown named shift {name!r}") from None


def random_allowed(spec: SubshiftSpec, F: Iterable[Cell], rng: random.Random) -> Pattern | None:
    """A random member of ``X_F`` (one-dimensional specs)."""
    space = spec.space
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    if not len(F):
        return Pattern(space, {})
    lo, hi = F.ordered[0], F.ordered[-1]
    word = spec.oracle.sample([None] * (hi - lo + 1), rng)
    if word is None:
        return None
    return Pattern(space, ((c, word[c - lo]) for c in F))
