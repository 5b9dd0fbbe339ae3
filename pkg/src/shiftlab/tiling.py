"""Constructive ⟨θ, κ, θ′⟩-tilings and their finite-region verification.

A ⟨θ, κ, θ′⟩-tiling is a set ``T`` of cells whose θ-balls are pairwise at
least κ+1 apart and whose θ′-balls cover the space.  The construction picks,
on every sphere of radius ``i·(2θ+κ+1)``, a maximal set of points that are
pairwise at least ``2θ+κ+1`` apart, scanning the sphere in canonical order.
The result is a tiling with ``θ′ = 4θ + 2κ``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cellspace import CellSet, CellSpace, internal_boundary, interior
from .errors import UnsupportedError
from .subshift import EXACT, Verdict


@dataclass(frozen=True)
class Tiling:
    points: CellSet
    theta: int
    kappa: int
    theta_prime: int
    working_radius: int

    @property
    def spacing(self) -> int:
        return 2 * self.theta + self.kappa + 1


def greedy_tiling(space: CellSpace, theta: int, kappa: int, R: int) -> Tiling:
    """Tiling points inside ``ball(R)``.

    Raises ``UnsupportedError`` on finite spaces and ``ResourceLimitError``
    when ``ball(R)`` is too large to materialise.
    """
    if space.finite:
        raise UnsupportedError("tilings are constructed on infinite spaces only")
    if min(theta, kappa, R) < 0:
        raise ValueError("θ, κ and R must be non-negative")
    spacing = 2 * theta + kappa + 1
    space.ball(space.origin, R)  # resource guard
    chosen: list = []
    i = 0
    while i * spacing <= R:
        picked: list = []
        for m in space.sphere(space.origin, i * spacing):
            if all(space.distance(m, t) >= spacing for t in picked):
                picked.append(m)
        chosen.extend(picked)
        i += 1
    return Tiling(CellSet(space, chosen), theta, kappa, 4 * theta + 2 * kappa, R)


def verify_tiling(space: CellSpace, T: Iterable, theta: int, kappa: int, theta_prime: int, R: int,
                  max_report: int = 20) -> Verdict:
    """Check apartness of the θ-balls and covering of ``ball(R - θ′)``.

    In the built-in spaces the metric is a path metric, so
    ``d(ball(t, θ), ball(t′, θ)) = max(0, d(t, t′) - 2θ)`` and apartness
    reduces to ``d(t, t′) ≥ 2θ + κ + 1``.
    """
    T = T if isinstance(T, CellSet) else CellSet(space, T)
    tset = T.cells
    need = 2 * theta + kappa + 1
    close_pairs = []
    for t in T:
        for u in space.ball(t, need - 1):
            if u != t and u in tset and space.sort_key(t) < space.sort_key(u):
                close_pairs.append((space.cell_json(t), space.cell_json(u)))
    region = space.ball(space.origin, R - theta_prime) if R >= theta_prime else CellSet(space, ())
    covered: set = set()
    for t in T:
        if space.distance(space.origin, t) <= R:
            covered |= space.ball(t, theta_prime).cells & region.cells
    uncovered = [space.cell_json(m) for m in region if m not in covered]
    holds = not close_pairs and not uncovered
    details = {
        "points": len(T),
        "region_cells": len(region),
        "close_pairs": close_pairs[:max_report],
        "uncovered": uncovered[:max_report],
        "n_close_pairs": len(close_pairs),
        "n_uncovered": len(uncovered),
    }
    return Verdict("tiling", holds, R, EXACT, None, details)


@dataclass
class FolnerDensity:
    ratios: list[Fraction]
    epsilon: Fraction
    i0: int | None
    sizes: list[int]
    warnings: list[str] = field(default_factory=list)

    def holds_beyond_i0(self) -> bool:
        return self.i0 is not None and all(r >= self.epsilon for r in self.ratios[self.i0:])


def folner_density(space: CellSpace, tiling: Tiling, windows: Sequence[Iterable]) -> FolnerDensity:
    """Ratios ``|T ∩ F_i^{-(θ+κ)}| / |F_i|`` and the bound ``ε = 1/(2|ball(θ′)|)``.

    ``i0`` is the first index from which every ratio is at least ε
    (None when the last ratio is still below ε).
    """
    depth = tiling.theta + tiling.kappa
    ratios, sizes, notes = [], [], []
    for i, F in enumerate(windows):
        F = F if isinstance(F, CellSet) else CellSet(space, F)
        if any(space.distance(space.origin, c) > tiling.working_radius - tiling.theta_prime for c in F):
            notes.append(f"window {i} leaves the region covered by the materialised tiling")
        inner = interior(space, F, depth)
        ratios.append(Fraction(len(inner.cells & tiling.points.cells), len(F)))
        sizes.append(len(F))
    eps = Fraction(1, 2 * space.ball_size(tiling.theta_prime))
    i0 = None
    for i in range(len(ratios) - 1, -1, -1):
        if ratios[i] >= eps:
            i0 = i
        else:
            break
    for note in notes[:1]:
        warnings.warn(f"bound inapplicable: {note}", stacklevel=2)
    return FolnerDensity(ratios, eps, i0, sizes, notes)


def covering_inequality(space: CellSpace, F: Iterable, tiling: Tiling) -> dict:
    """Both sides of ``|F| ≤ |S|·|ball(θ′)| + |∂⁻_{θ+κ+θ′} F|`` with ``S = T ∩ F^{-(θ+κ)}``."""
    F = F if isinstance(F, CellSet) else CellSet(space, F)
    depth = tiling.theta + tiling.kappa
    S = interior(space, F, depth).cells & tiling.points.cells
    rim = internal_boundary(space, F, depth + tiling.theta_prime)
    rhs = len(S) * space.ball_size(tiling.theta_prime) + len(rim)
    return {"lhs": len(F), "rhs": rhs, "S": len(S), "boundary": len(rim), "holds": len(F) <= rhs}
