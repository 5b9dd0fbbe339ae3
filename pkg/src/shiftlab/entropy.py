"""Entropy along finite prefixes of Følner nets and the exact 1-D value.

Estimates are ``log|X_{F_i}| / |F_i|`` in a configurable base (2 by
default).  The empty shift has no finite entropy; it is represented by the
``EMPTY`` sentinel, which compares below every number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable

from .cellspace import CellSet, CellSpace, boundary
from .errors import SpecError, UnsupportedError
from .subshift import EXACT, Exactness, SubshiftSpec, count_patterns, enumerate_patterns


@total_ordering
class _Empty:
    """Entropy of the empty shift; strictly below every real number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("empty-shift")

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "empty"


EMPTY = _Empty()


def parse_base(base) -> float:
    if base in ("e", "E"):
        return math.e
    value = float(base)
    if value <= 1:
        raise SpecError("log base must exceed 1")
    return value


def _log(x: float, base) -> float:
    return math.log(x) / math.log(parse_base(base))


def entropy_value(count: int, size: int, base=2):
    """``log|X_F| / |F|`` or ``EMPTY`` when the window set is empty."""
    if count == 0:
        return EMPTY
    if size == 0:
        return 0.0
    return _log(count, base) / size


@dataclass
class FolnerPrefix:
    """Increasing finite windows standing for a prefix of a Følner net."""

    space: CellSpace
    windows: list

    def __post_init__(self):
        self.windows = [w if isinstance(w, CellSet) else CellSet(self.space, w) for w in self.windows]
        if not self.windows:
            raise SpecError("a Følner prefix needs at least one window")
        for a, b in zip(self.windows, self.windows[1:]):
            if not a <= b:
                raise SpecError("Følner windows must be increasing")
        if not len(self.windows[0]):
            raise SpecError("Følner windows must be non-empty")

    @classmethod
    def intervals(cls, space: CellSpace, ns: Iterable[int]) -> "FolnerPrefix":
        """Windows ``[0, n)`` of an integer space."""
        if not space.one_dimensional:
            raise UnsupportedError("interval windows need an integer space")
        return cls(space, [CellSet(space, range(n)) for n in ns])

    @classmethod
    def balls(cls, space: CellSpace, radii: Iterable[int]) -> "FolnerPrefix":
        return cls(space, [space.ball(space.origin, r) for r in radii])

    def boundary_ratios(self, rho: int) -> list[float]:
        return [len(boundary(self.space, F, rho)) / len(F) for F in self.windows]


def parse_windows(text: str) -> list[int]:
    """``"a..b"`` or a comma list of integers."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise SpecError(f"bad window range {text!r}") from None


@dataclass
class EntropyEstimate:
    sizes: list[int]
    counts: list[int]
    values: list
    exactness: Exactness
    oracle_value: object = None
    base: object = 2

    def records(self) -> list[dict]:
        out = []
        for i, (n, c, v) in enumerate(zip(self.sizes, self.counts, self.values), start=1):
            out.append({
                "i": i,
                "size": n,
                "count": c,
                "estimate": v if v is not EMPTY else "empty",
                "exactness": str(self.exactness),
            })
        return out


def _require_amenable(space: CellSpace) -> None:
    if not space.amenable:
        raise UnsupportedError(f"{space.name} is not amenable; entropy along Følner nets is undefined")


def entropy_estimate(spec: SubshiftSpec, prefix: FolnerPrefix, r: int | str = "auto", base=2) -> EntropyEstimate:
    _require_amenable(spec.space)
    counts, sizes, values = [], [], []
    ex = EXACT
    for F in prefix.windows:
        if r in ("auto", None):
            c = count_patterns(spec, F, r)
        else:
            ps = enumerate_patterns(spec, F, r)
            c = len(ps)
            ex = ex.weakest(ps.exactness)
        counts.append(c)
        sizes.append(len(F))
        values.append(entropy_value(c, len(F), base))
    oracle = exact_entropy_1d(spec, base) if spec.has_exact_oracle else None
    return EntropyEstimate(sizes, counts, values, ex, oracle, base)


def exact_entropy_1d(spec: SubshiftSpec, base=2):
    """Log of the Perron root of the 1-D presentation."""
    if not spec.has_exact_oracle:
        raise UnsupportedError("exact entropy needs a one-dimensional spec")
    graph = spec.oracle
    if graph.empty:
        return EMPTY
    lam = graph.perron_root()
    return _log(lam, base)


@dataclass
class EntropyComparison:
    first: EntropyEstimate
    second: EntropyEstimate
    labels: tuple = ("X", "Y")
    tolerance: float = 1e-9
    notes: list = field(default_factory=list)

    @property
    def oracles_equal(self) -> bool | None:
        a, b = self.first.oracle_value, self.second.oracle_value
        if a is None or b is None:
            return None
        if a is EMPTY or b is EMPTY:
            return a is b
        return abs(a - b) <= self.tolerance

    def to_json(self) -> dict:
        def fmt(v):
            return "empty" if v is EMPTY else v

        return {
            "labels": list(self.labels),
            "sizes": self.first.sizes,
            "first": [fmt(v) for v in self.first.values],
            "second": [fmt(v) for v in self.second.values],
            "first_oracle": fmt(self.first.oracle_value),
            "second_oracle": fmt(self.second.oracle_value),
            "oracles_equal": self.oracles_equal,
            "tolerance": self.tolerance,
            "exactness": str(self.first.exactness.weakest(self.second.exactness)),
        }


def entropy_compare(first: SubshiftSpec, second: SubshiftSpec | None = None, prefix: FolnerPrefix | None = None,
                    lmap=None, r: int | str = "auto", base=2, tolerance: float = 1e-9) -> EntropyComparison:
    """Side-by-side estimates of two shifts, or of a map's domain and image."""
    from .localmap import image_patterns

    if prefix is None:
        prefix = FolnerPrefix.intervals(first.space, range(1, 21)) if first.space.one_dimensional \
            else FolnerPrefix.balls(first.space, range(0, 4))
    a = entropy_estimate(first, prefix, r, base)
    if lmap is not None:
        counts, values = [], []
        ex = a.exactness
        for F in prefix.windows:
            img = image_patterns(lmap, F, r)
            ex = ex.weakest(img.exactness)
            counts.append(len(img))
            values.append(entropy_value(len(img), len(F), base))
        b = EntropyEstimate(list(a.sizes), counts, values, ex, None, base)
        labels = (first.name, f"image of {lmap.name}")
    else:
        if second is None:
            raise SpecError("entropy_compare needs a second shift or a map")
        if second.space is not first.space:
            raise SpecError("compared shifts must share a space")
        b = entropy_estimate(second, prefix, r, base)
        labels = (first.name, second.name)
    return EntropyComparison(a, b, labels, tolerance)


@dataclass
class FiniteCount:
    count: int
    entropy: object
    cells: int
    identity_holds: bool


def finite_space_count(spec: SubshiftSpec, base=2) -> FiniteCount:
    """``|X|`` on a finite space, checked against ``|X| = base^(|M|·ent)``."""
    space = spec.space
    if not space.finite:
        raise UnsupportedError("finite_space_count needs a finite space")
    M = space.cells
    count = len(enumerate_patterns(spec, M, 0))
    ent = entropy_value(count, len(M), base)
    if ent is EMPTY:
        holds = count == 0
    else:
        holds = round(parse_base(base) ** (len(M) * ent)) == count
    return FiniteCount(count, ent, len(M), holds)
