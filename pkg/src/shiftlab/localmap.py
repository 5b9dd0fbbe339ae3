"""Local maps between subshifts, applied to finite windows.

A ``LocalRule`` is a neighbourhood ``N ⊆ ball(κ)`` together with a table
``δ: X_N → Q``.  The windowed global map sends a pattern ``p`` on ``A`` to
the pattern on ``A^{-κ}`` with value ``δ(n ↦ p(m ⊳ n))`` at ``m``.

Examples
--------
>>> from .subshift import golden_mean, even_shift, Pattern
>>> gm = golden_mean()
>>> rule = LocalRule.from_words(gm.space, ["0", "+1"], {"00": "1", "01": "0", "10": "0"})
>>> f = LocalMap(rule, gm, even_shift())
>>> apply_windowed(f, Pattern.from_word(gm.space, "000")).word()
'11'
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .cellspace import CellSet, CellSpace, interior, stabiliser_orbit
from .errors import DomainError, InvalidNeighbourhoodError, SpecError
from .subshift import (
    EXACT,
    Exactness,
    Pattern,
    PatternSet,
    SubshiftSpec,
    Verdict,
    enumerate_patterns,
    locally_admissible,
)


@dataclass(frozen=True)
class LocalRule:
    """Neighbourhood and local table of a κ-local map.

    ``table`` maps tuples of symbols (in the canonical order of
    ``neighbourhood``) to output symbols.  ``default`` is used for inputs
    missing from the table, if given.
    """

    space: CellSpace
    neighbourhood: tuple
    table: Mapping[tuple, str]
    kappa: int | None = None
    default: str | None = None

    def __post_init__(self):
        ordered = CellSet(self.space, self.neighbourhood).ordered
        object.__setattr__(self, "neighbourhood", ordered)
        natural = max((self.space.distance(self.space.origin, n) for n in ordered), default=0)
        if self.kappa is None:
            object.__setattr__(self, "kappa", natural)
        object.__setattr__(self, "table", dict(self.table))

    @classmethod
    def from_words(cls, space: CellSpace, neighbourhood: Sequence, table: Mapping[str, str],
                   kappa: int | None = None, default: str | None = None) -> "LocalRule":
        """Build a rule whose table keys are words read in neighbourhood order."""
        cells = [space.parse_cell(c) for c in neighbourhood]
        ordered = CellSet(space, cells).ordered
        if len(ordered) != len(cells):
            raise SpecError("neighbourhood has repeated cells")
        perm = [cells.index(c) for c in ordered]
        out = {}
        for key, value in table.items():
            symbols = _split_word(key, len(cells))
            out[tuple(symbols[i] for i in perm)] = str(value)
        return cls(space, tuple(ordered), out, kappa, default)

    @classmethod
    def from_function(cls, spec: SubshiftSpec, neighbourhood: Sequence, func: Callable[[dict], str],
                      kappa: int | None = None, r: int | str = "auto") -> "LocalRule":
        """Tabulate ``func`` (called with ``{cell: symbol}``) on ``X_N``."""
        space = spec.space
        N = CellSet(space, [space.parse_cell(c) if isinstance(c, str) else c for c in neighbourhood])
        table = {}
        for row in enumerate_patterns(spec, N, r).rows:
            table[row] = str(func(dict(zip(N.ordered, row))))
        return cls(space, N.ordered, table, kappa)

    def __call__(self, local: Sequence[str]) -> str:
        key = tuple(local)
        try:
            return self.table[key]
        except KeyError:
            if self.default is not None:
                return self.default
            raise DomainError(f"no table entry for {''.join(key)}") from None


def _split_word(word: str | Sequence[str], n: int) -> list[str]:
    if not isinstance(word, str):
        return [str(s) for s in word]
    parts = word.split(",") if "," in word else list(word)
    if len(parts) != n:
        raise SpecError(f"table key {word!r} does not have {n} symbols")
    return parts


@dataclass(frozen=True)
class LocalMap:
    """A local rule viewed as a map between two subshifts."""

    rule: LocalRule
    domain: SubshiftSpec
    codomain: SubshiftSpec
    name: str = "map"

    @property
    def kappa(self) -> int:
        return self.rule.kappa

    @property
    def space(self) -> CellSpace:
        return self.domain.space


def identity_rule(space: CellSpace, alphabet: Sequence[str]) -> LocalRule:
    return LocalRule(space, (space.origin,), {(a,): a for a in alphabet}, 0)


def constant_rule(space: CellSpace, alphabet: Sequence[str], value: str) -> LocalRule:
    return LocalRule(space, (space.origin,), {(a,): value for a in alphabet}, 0)


def relabel_rule(space: CellSpace, mapping: Mapping[str, str]) -> LocalRule:
    """Symbol-wise recoding, e.g. the bit flip ``{0: 1, 1: 0}``."""
    return LocalRule(space, (space.origin,), {(a,): b for a, b in mapping.items()}, 0)


# -- validation -------------------------------------------------------------------

def validate_rule(space: CellSpace, rule: LocalRule, spec: SubshiftSpec | None = None,
                  r: int | str = "auto") -> Verdict:
    """Check ``N ⊆ ball(κ)``, ``G0``-closure of ``N``, totality on ``X_N`` and ``H0``-invariance.

    Without ``spec`` the table is checked on ``Q^N`` for the alphabet of
    its own outputs and inputs.
    """
    problems: list[str] = []
    violations: list[dict] = []
    N = rule.neighbourhood
    for n in N:
        if space.distance(space.origin, n) > rule.kappa:
            problems.append(f"{space.cell_str(n)} is outside ball({rule.kappa})")
    try:
        perms = stabiliser_orbit(space, N)
    except InvalidNeighbourhoodError as exc:
        problems.append(str(exc))
        perms = []
    if spec is not None:
        inputs = list(enumerate_patterns(spec, CellSet(space, N), r).rows)
        ex = enumerate_patterns(spec, CellSet(space, N), r).exactness if len(N) else EXACT
    else:
        alphabet = sorted({s for key in rule.table for s in key})
        inputs = list(itertools.product(alphabet, repeat=len(N)))
        ex = EXACT
    missing = [row for row in inputs if row not in rule.table and rule.default is None]
    for row in missing[:10]:
        problems.append(f"no table entry for {''.join(row)}")
    labels = space.big_stabiliser
    for h, perm in zip(labels, perms):
        for row in inputs:
            moved = [None] * len(row)
            for i, s in enumerate(row):
                moved[perm[i]] = s
            moved = tuple(moved)
            try:
                a, b = rule(row), rule(moved)
            except DomainError:
                continue
            if a != b:
                violations.append({"h0": h, "input": "".join(row), "moved": "".join(moved)})
    holds = not problems and not violations
    details: dict[str, Any] = {}
    if problems:
        details["problems"] = problems
    if violations:
        details["invariance_violations"] = violations
    witness = violations[0] if violations else None
    return Verdict("rule", holds, rule.kappa, ex, witness, details)


# -- application ------------------------------------------------------------------

def apply_windowed(lmap: LocalMap, p: Pattern, check: bool = True) -> Pattern:
    """``Δ⁻_A(p)`` on ``A^{-κ}``."""
    rule = lmap.rule
    space = lmap.space
    if check and not locally_admissible(lmap.domain, p):
        raise DomainError("input pattern is not admissible in the domain shift")
    out = {}
    values = p._values
    for m in interior(space, p.domain, rule.kappa):
        local = []
        for n in rule.neighbourhood:
            c = space.act(m, n)
            if c not in values:
                raise DomainError(f"pattern undefined at {space.cell_str(c)}")
            local.append(values[c])
        out[m] = rule(local)
    return Pattern(space, out)


def image_patterns(lmap: LocalMap, F: Iterable, r: int | str = "auto") -> PatternSet:
    """``{Δ⁻(p)↾F : p ∈ X_{F^{+κ}}}``."""
    from .cellspace import closure

    space = lmap.space
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    source = enumerate_patterns(lmap.domain, closure(space, F, lmap.kappa), r)
    rows = set()
    for p in source:
        img = apply_windowed(lmap, p, check=False)
        rows.add(tuple(img[c] for c in F.ordered))
    return PatternSet(space, F, rows, source.exactness, lmap.codomain.alphabet)


def compose(outer: LocalMap, inner: LocalMap, r: int | str = "auto") -> LocalMap:
    """``outer ∘ inner`` as a (κ₁+κ₂)-local map on ``ball(κ₁+κ₂)``."""
    space = inner.space
    k = outer.kappa + inner.kappa
    N = space.ball(space.origin, k)
    table = {}
    for p in enumerate_patterns(inner.domain, N, r):
        mid = apply_windowed(inner, p, check=False)
        local = [mid[space.act(space.origin, n)] for n in outer.rule.neighbourhood]
        table[p.symbols()] = outer.rule(local)
    rule = LocalRule(space, N.ordered, table, k)
    return LocalMap(rule, inner.domain, outer.codomain, f"{outer.name}∘{inner.name}")


def check_conjugacy_pair(lmap: LocalMap, inverse: LocalMap, bound: int = 4, r: int | str = "auto") -> Verdict:
    """Check both composites act as the identity on windows up to ``bound``.

    For each radius ``b ≤ bound`` and each allowed pattern on the ball of
    radius ``b + κ₁ + κ₂``, the composite must reproduce the pattern on
    the interior.
    """
    space = lmap.space
    k = lmap.kappa + inverse.kappa
    ex: Exactness = EXACT
    for b in range(bound + 1):
        W = space.ball(space.origin, b + k)
        for first, second, label in ((lmap, inverse, "inverse∘map"), (inverse, lmap, "map∘inverse")):
            src = enumerate_patterns(first.domain, W, r)
            ex = ex.weakest(src.exactness)
            for p in src:
                out = apply_windowed(second, apply_windowed(first, p, check=False), check=False)
                if any(out[c] != p[c] for c in out.domain):
                    return Verdict("conjugacy", False, b, ex, p, {"composite": label})
    return Verdict("conjugacy", True, bound, ex)
