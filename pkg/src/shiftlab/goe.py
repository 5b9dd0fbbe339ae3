"""Garden-of-Eden experiments: surjectivity versus pre-injectivity at desk scale.

Every search is bounded and its verdict says so (``surjective-up-to(ρ)``,
``pre-injective-up-to(r)``).  Witnesses are patterns that can be checked
independently by applying the rule table.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .cellspace import CellSet, closure, interior, translate
from .entropy import FolnerPrefix, entropy_compare
from .errors import ExchangePreconditionError, UnsupportedError
from .localmap import LocalMap, apply_windowed, image_patterns
from .subshift import (
    EXACT,
    Exactness,
    Pattern,
    SubshiftSpec,
    Verdict,
    check_strong_irreducibility,
    count_patterns,
    enumerate_patterns,
    is_allowed,
    occurs_at,
    shift_pattern,
)


@dataclass(frozen=True)
class Difference:
    """Cells where two patterns on a common domain differ."""

    cells: CellSet

    @classmethod
    def of(cls, p: Pattern, q: Pattern) -> "Difference":
        if p.domain != q.domain:
            raise ValueError("patterns must share a domain")
        return cls(CellSet(p.space, (c for c in p.domain if p[c] != q[c])))

    def __len__(self) -> int:
        return len(self.cells)


def _step_kappa(lmap: LocalMap, kappa: int | None) -> int:
    if kappa is not None:
        return kappa
    memory = lmap.domain.derived_memory
    return max(lmap.kappa, memory or 0)


def find_goe_pattern(lmap: LocalMap, rho_max: int, r: int | str = "auto") -> Verdict:
    """First codomain pattern on some ``ball(ρ)`` outside the image, ρ ≤ ρ_max."""
    space = lmap.space
    ex: Exactness = EXACT
    for rho in range(rho_max + 1):
        F = space.ball(space.origin, rho)
        target = enumerate_patterns(lmap.codomain, F, r)
        img = image_patterns(lmap, F, r)
        ex = ex.weakest(target.exactness).weakest(img.exactness)
        for p in target:
            if p not in img:
                v = Verdict("surjectivity", False, rho, ex, p, {"rho": rho})
                return v
    return Verdict("surjectivity", True, rho_max, ex)


def surjectivity_status(v: Verdict) -> str:
    return f"surjective-up-to({v.bound})" if v.holds else "goe-pattern"


def find_mutually_erasable(lmap: LocalMap, r_max: int, kappa: int | None = None,
                           r: int | str = "auto") -> Verdict:
    """Distinct ``p, p′ ∈ X_{F^{+3κ}}`` equal on ``F^{+3κ} ∖ F^{+κ}`` with equal images.

    ``F`` runs over ``ball(0), ..., ball(r_max)``.
    """
    space = lmap.space
    k = _step_kappa(lmap, kappa)
    ex: Exactness = EXACT
    for radius in range(r_max + 1):
        F = space.ball(space.origin, radius)
        core = closure(space, F, k)
        D = closure(space, F, 3 * k)
        rim = (D - core).ordered
        groups: dict = defaultdict(list)
        src = enumerate_patterns(lmap.domain, D, r)
        ex = ex.weakest(src.exactness)
        for p in src:
            img = apply_windowed(lmap, p, check=False)
            key = (tuple(p[c] for c in rim), img.symbols())
            bucket = groups[key]
            bucket.append(p)
            if len(bucket) == 2:
                return Verdict("pre-injectivity", False, radius, ex, (bucket[0], bucket[1]),
                               {"r": radius, "kappa": k})
    return Verdict("pre-injectivity", True, r_max, ex, None, {"kappa": k})


def preinjectivity_status(v: Verdict) -> str:
    return f"pre-injective-up-to({v.bound})" if v.holds else "erasable-pair"


def find_injectivity_witness(lmap: LocalMap, r_max: int, window: int = 8, r: int | str = "auto") -> Verdict:
    """Two distinct configurations with the same image.

    Over one-dimensional specs the search runs over periodic points with
    period at most ``r_max`` (true points, exact); the witness is shown on
    ``[0, window)``.  Elsewhere it compares allowed patterns on balls and
    reports window-level witnesses.
    """
    space = lmap.space
    rule = lmap.rule
    if lmap.domain.has_exact_oracle:
        oracle = lmap.domain.oracle
        offsets = list(rule.neighbourhood)
        for n in range(1, r_max + 1):
            seen: dict = {}
            for word in itertools.product(lmap.domain.alphabet, repeat=n):
                if not oracle.has_periodic_point(word):
                    continue
                image = tuple(rule([word[(i + o) % n] for o in offsets]) for i in range(n))
                if image in seen and seen[image] != word:
                    other = seen[image]
                    length = max(window, n + 2 * lmap.kappa)
                    p = Pattern(space, ((i, other[i % n]) for i in range(length)))
                    q = Pattern(space, ((i, word[i % n]) for i in range(length)))
                    img = apply_windowed(lmap, p, check=False)
                    return Verdict("injectivity", False, n, EXACT, (p, q, img),
                                   {"kind": "periodic", "period": n})
                seen.setdefault(image, word)
        return Verdict("injectivity", True, r_max, EXACT, None, {"kind": "periodic"})
    ex: Exactness = EXACT
    for radius in range(r_max + 1):
        W = space.ball(space.origin, radius + lmap.kappa)
        src = enumerate_patterns(lmap.domain, W, r)
        ex = ex.weakest(src.exactness)
        seen2: dict = {}
        for p in src:
            img = apply_windowed(lmap, p, check=False)
            key = img.symbols()
            if key in seen2:
                return Verdict("injectivity", False, radius, ex, (seen2[key], p, img), {"kind": "window"})
            seen2[key] = p
    return Verdict("injectivity", True, r_max, ex, None, {"kind": "window"})


def exchange_occurrences(lmap: LocalMap, c: Pattern, p: Pattern, p2: Pattern, T: Iterable,
                         A: Iterable | None = None, kappa: int | None = None) -> Pattern:
    """Replace the occurrence of ``p`` at every ``t ∈ T`` in ``c`` by ``p′``.

    ``p`` and ``p′`` live on ``D = A^{+2κ}`` (``A`` defaults to ``D^{-2κ}``),
    agree on ``D ∖ A`` and have equal images under the windowed map.
    Postconditions (admissibility, equal images on ``W^{-κ}``, ``p`` no
    longer occurring when ``p ≠ p′``) are checked before returning.
    """
    space = lmap.space
    k = _step_kappa(lmap, kappa)
    D = p.domain
    if p2.domain != D:
        raise ExchangePreconditionError("p and p′ must share a domain")
    A = interior(space, D, 2 * k) if A is None else CellSet(space, A)
    if closure(space, A, 2 * k) != D:
        raise ExchangePreconditionError("the patterns must be defined on A^{+2κ}")
    dom = lmap.domain
    if not (is_allowed(dom, p) and is_allowed(dom, p2)):
        raise ExchangePreconditionError("p and p′ must be allowed")
    if any(p[x] != p2[x] for x in D - A):
        raise ExchangePreconditionError("p and p′ differ on the 2κ-boundary of A")
    if apply_windowed(lmap, p, check=False) != apply_windowed(lmap, p2, check=False):
        raise ExchangePreconditionError("p and p′ have different images")
    W = c.domain
    inner = interior(space, W, k)
    used: set = set()
    out = dict(c._values)
    T = T if isinstance(T, CellSet) else CellSet(space, T)
    for t in T:
        region = translate(space, t, D)
        if not region <= inner:
            raise ExchangePreconditionError(f"t ⊳ A^{{+2κ}} leaves W^{{-κ}} at t = {space.cell_str(t)}")
        if not region.isdisjoint(used):
            raise ExchangePreconditionError(f"overlapping exchange regions at t = {space.cell_str(t)}")
        used |= region.cells
        if not occurs_at(space, p, c, t):
            raise ExchangePreconditionError(f"p does not occur at t = {space.cell_str(t)}")
        out.update(shift_pattern(space, t, p2)._values)
    result = Pattern(space, out)
    if not is_allowed(dom, result):
        raise ExchangePreconditionError("exchanged pattern is not allowed (is the domain κ-step?)")
    before, after = apply_windowed(lmap, c, check=False), apply_windowed(lmap, result, check=False)
    if before != after:
        raise ExchangePreconditionError("images differ after the exchange")
    if p != p2 and any(occurs_at(space, p, result, t) for t in T):
        raise ExchangePreconditionError("p still occurs after the exchange")
    return result


# -- counting inequality ---------------------------------------------------------

@dataclass
class CountingReport:
    lhs: int
    rhs: float
    xi: int
    x_f: int
    s: list
    hypotheses: dict
    exactness: Exactness

    @property
    def applicable(self) -> bool:
        return all(v is True for v in self.hypotheses.values())

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-12)

    def to_json(self, space) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "xi": self.xi,
            "x_f": self.x_f,
            "S": [space.cell_json(s) for s in self.s],
            "hypotheses": self.hypotheses,
            "holds": self.holds,
            "exactness": str(self.exactness),
        }


def counting_inequality_check(spec: SubshiftSpec, F: Iterable, theta: int, kappa: int, T: Iterable,
                              pinned: Mapping[Any, Pattern], r: int | str = "auto",
                              check_si: bool = True) -> CountingReport:
    """Both sides of ``|X_F ∖ ⋃_s π_s⁻¹(p_s)| ≤ (1 − ξ⁻¹)^{|S|}·|X_F|``.

    ``pinned[t]`` is a pattern on ``ball(t, θ)``; ``S = T ∩ F^{-(θ+κ)}`` and
    ``ξ = |X_{ball(θ)^{+κ}}|``.
    """
    space = spec.space
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    T = T if isinstance(T, CellSet) else CellSet(space, T)
    S = [t for t in interior(space, F, theta + kappa) if t in T]
    hyp: dict = {}
    hyp["apart"] = all(
        space.distance(t, u) >= 2 * theta + kappa + 1 for t, u in itertools.combinations(T.ordered, 2)
    )
    hyp["pinned_allowed"] = all(
        t in pinned and pinned[t].domain == space.ball(t, theta) and is_allowed(spec, pinned[t], r) for t in T
    )
    if check_si:
        hyp["strongly_irreducible"] = check_strong_irreducibility(spec, kappa, r=r).holds
    members = enumerate_patterns(spec, F, r)
    lhs = 0
    for p in members:
        if all(any(p[c] != pinned[s][c] for c in pinned[s].domain) for s in S):
            lhs += 1
    xi = count_patterns(spec, space.ball(space.origin, theta + kappa), r)
    rhs = (1 - 1 / xi) ** len(S) * len(members) if xi else 0.0
    return CountingReport(lhs, rhs, xi, len(members), S, hyp, members.exactness)


# -- the experiment ----------------------------------------------------------------

@dataclass
class GoeReport:
    map_id: str
    surjectivity: Verdict
    pre_injectivity: Verdict
    injectivity: Verdict
    bounds: tuple
    hypotheses: dict
    entropy: dict | None
    status: str
    derivable_r: int | None = None
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"consistent": 0, "out-of-hypothesis": 2, "violation": 3}[self.status]

    def to_json(self) -> dict:
        return {
            "map_id": self.map_id,
            "status": self.status,
            "surjectivity": {"verdict": surjectivity_status(self.surjectivity), **self.surjectivity.to_json()},
            "pre_injectivity": {"verdict": preinjectivity_status(self.pre_injectivity),
                                **self.pre_injectivity.to_json()},
            "injectivity": {"verdict": "injective-up-to" if self.injectivity.holds else "not-injective",
                            **self.injectivity.to_json()},
            "bounds": {"rho_max": self.bounds[0], "r_max": self.bounds[1]},
            "hypotheses": self.hypotheses,
            "entropy": self.entropy,
            "derivable_r": self.derivable_r,
            "notes": self.notes,
        }


def derivable_bound(lmap: LocalMap, r_max: int, kappa: int | None = None, r: int | str = "auto") -> int | None:
    """Smallest ``r ≤ r_max`` with ``|Δ(X)_{F^{+2κ}}| < |X_F|`` for ``F = ball(r)``."""
    space = lmap.space
    k = _step_kappa(lmap, kappa)
    for radius in range(r_max + 1):
        F = space.ball(space.origin, radius)
        if len(image_patterns(lmap, closure(space, F, 2 * k), r)) < count_patterns(lmap.domain, F, r):
            return radius
    return None


def goe_experiment(lmap: LocalMap, rho_max: int = 8, r_max: int = 6, si_kappa: int | None = None,
                   r: int | str = "auto", tolerance: float = 1e-9, prefix: FolnerPrefix | None = None) -> GoeReport:
    """Run the three searches and cross-check the surjective ⇔ pre-injective biconditional.

    The biconditional is only asserted when the domain is non-empty, of
    finite type and strongly irreducible (checked at ``si_kappa``) and the
    domain and codomain have equal entropy within ``tolerance``.
    """
    dom, cod = lmap.domain, lmap.codomain
    space = lmap.space
    if not space.amenable:
        raise UnsupportedError("Garden-of-Eden experiments need an amenable space")
    k = _step_kappa(lmap, None)
    notes: list[str] = []
    hyp: dict = {}
    hyp["finite_type"] = dom.finite_type
    nonempty = count_patterns(dom, space.ball(space.origin, 0), r) > 0
    hyp["non_empty"] = nonempty
    si_k = si_kappa if si_kappa is not None else k
    si = check_strong_irreducibility(dom, si_k, r=r)
    hyp["strongly_irreducible"] = si.holds
    hyp["si_kappa"] = si_k
    entropy = None
    if dom.has_exact_oracle and cod.has_exact_oracle:
        cmp = entropy_compare(dom, cod, prefix, r=r, tolerance=tolerance)
        entropy = cmp.to_json()
        hyp["entropy_parity"] = bool(cmp.oracles_equal)
    else:
        hyp["entropy_parity"] = None
        notes.append("entropy parity cannot be certified without exact oracles")
    surj = find_goe_pattern(lmap, rho_max, r)
    pre = find_mutually_erasable(lmap, r_max, r=r)
    inj = find_injectivity_witness(lmap, max(r_max, 2), r=r)
    derivable = None
    hyp_ok = all(hyp[key] is True for key in ("finite_type", "non_empty", "strongly_irreducible", "entropy_parity"))
    violation = False
    if surj.holds and not pre.holds:
        violation = True
        notes.append("surjective up to the bound although an erasable pair exists")
    if not surj.holds and pre.holds:
        derivable = derivable_bound(lmap, r_max, r=r)
        if derivable is not None:
            violation = True
            notes.append("a Garden-of-Eden pattern exists but no erasable pair was found by the derivable bound")
        else:
            notes.append("Garden-of-Eden pattern found; erasable pairs may need a larger radius")
    if not hyp_ok:
        status = "out-of-hypothesis"
        if violation:
            notes.append("biconditional fails, but the theorem's hypotheses are not met")
    else:
        status = "violation" if violation else "consistent"
    return GoeReport(lmap.name, surj, pre, inj, (rho_max, r_max), hyp, entropy, status, derivable, notes)
