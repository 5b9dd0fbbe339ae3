"""Cell spaces: cells, the right semi-action, the S-metric and the stabiliser.

A cell space is presented by its cells (hashable normal forms), a finite
symmetric set of generator labels ``S``, the origin ``m0`` and the finite
stabiliser ``G0``.  Each cell ``a`` doubles as the name of the coset of
``g_{m0,a}``, so ``act(m, a)`` is ``m ⊳ g_{m0,a}G0``.

Built-in spaces
---------------
``Z``        integers, generators ``+1``/``-1``, trivial stabiliser.
``Z2``       the square lattice, generators ``+x -x +y -y``.
``free:k``   the free group on ``k`` letters acting on itself (non-amenable).
``Dinf``     the infinite dihedral group acting on the integers; the
             stabiliser of ``0`` is ``{e, r}`` with ``r`` the reflection.
``cycle:n``  a finite cycle, only used for finite toy computations.

Examples
--------
>>> Z = get_space("Z")
>>> semi_act(Z, 3, "+1")
4
>>> sorted(ball(Z, 0, 2))
[-2, -1, 0, 1, 2]
"""
from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import InvalidNeighbourhoodError, MalformedInputError, ResourceLimitError

Cell = Hashable

#: Largest ball the library is willing to materialise.
MAX_BALL_CELLS = 2_000_000


class CellSet:
    """Immutable finite set of cells iterating in the space's canonical order."""

    __slots__ = ("space", "_cells", "_order")

    def __init__(self, space: "CellSpace", cells: Iterable[Cell] = ()):
        self.space = space
        self._cells = frozenset(cells)
        self._order = tuple(sorted(self._cells, key=space.sort_key))

    @property
    def cells(self) -> frozenset:
        return self._cells

    @property
    def ordered(self) -> tuple:
        return self._order

    def __iter__(self) -> Iterator[Cell]:
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._cells)

    def __contains__(self, m: object) -> bool:
        return m in self._cells

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CellSet):
            return self._cells == other._cells
        if isinstance(other, (set, frozenset)):
            return self._cells == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._cells)

    def _cells_of(self, other) -> frozenset:
        return other._cells if isinstance(other, CellSet) else frozenset(other)

    def __or__(self, other) -> "CellSet":
        return CellSet(self.space, self._cells | self._cells_of(other))

    def __and__(self, other) -> "CellSet":
        return CellSet(self.space, self._cells & self._cells_of(other))

    def __sub__(self, other) -> "CellSet":
        return CellSet(self.space, self._cells - self._cells_of(other))

    def __le__(self, other) -> bool:
        return self._cells <= self._cells_of(other)

    def issubset(self, other) -> bool:
        return self <= other

    def isdisjoint(self, other) -> bool:
        return self._cells.isdisjoint(self._cells_of(other))

    def __repr__(self) -> str:
        shown = ", ".join(self.space.cell_str(m) for m in self._order[:12])
        more = ", ..." if len(self._order) > 12 else ""
        return f"CellSet({self.space.name}: {{{shown}{more}}})"


class CellSpace:
    """Base class of cell spaces.

    Subclasses provide ``step``, ``act``, ``stab_act``, ``sort_key``,
    ``parse_cell`` and ``cell_str``.  Balls and distances default to
    breadth-first search over ``step``.
    """

    name: str = "space"
    generators: tuple = ()
    origin: Cell = None
    amenable: bool = True
    finite: bool = False
    #: True when cells are integers and the 1-D automaton oracle applies.
    one_dimensional: bool = False
    #: labels of the stabiliser G0 of the origin (identity first)
    stabiliser: tuple = ("e",)
    #: labels of H0, the part of G0 inside the chosen big subgroup
    big_stabiliser: tuple = ("e",)

    def __init__(self):
        self._ball_cache: dict = {}

    # -- to be provided by subclasses -------------------------------------
    def step(self, m: Cell, label: str) -> Cell:
        raise NotImplementedError

    def act(self, m: Cell, a: Cell) -> Cell:
        """``m ⊳ g_{m0,a}G0``."""
        raise NotImplementedError

    def stab_act(self, h: str, m: Cell) -> Cell:
        """Left action of a stabiliser element on a cell."""
        if h == "e":
            return m
        raise MalformedInputError(f"unknown stabiliser element {h!r}")

    def stab_inverse(self, h: str) -> str:
        return h

    def sort_key(self, m: Cell):
        raise NotImplementedError

    def parse_cell(self, text) -> Cell:
        raise NotImplementedError

    def cell_str(self, m: Cell) -> str:
        return str(m)

    def cell_json(self, m: Cell):
        return self.cell_str(m)

    def ball_size(self, rho: int) -> int:
        """Number of cells in a ball of radius ``rho`` (closed form)."""
        return len(self.ball(self.origin, rho))

    # -- generic machinery -------------------------------------------------
    def check_label(self, label: str) -> None:
        if label not in self.generators:
            raise MalformedInputError(f"unknown generator {label!r} for {self.name}")

    def parse_word(self, word: str | Sequence[str]) -> tuple:
        if isinstance(word, str):
            labels = tuple(w for w in word.split(".") if w) if word not in ("", "e") else ()
        else:
            labels = tuple(word)
        for label in labels:
            self.check_label(label)
        return labels

    def semi_act(self, m: Cell, word: str | Sequence[str]) -> Cell:
        for label in self.parse_word(word):
            m = self.step(m, label)
        return m

    def bfs_ball(self, m: Cell, rho: int) -> dict:
        """Distances from ``m`` to all cells within ``rho`` by BFS."""
        dist = {m: 0}
        queue = deque([m])
        while queue:
            c = queue.popleft()
            d = dist[c]
            if d == rho:
                continue
            for label in self.generators:
                n = self.step(c, label)
                if n not in dist:
                    dist[n] = d + 1
                    queue.append(n)
        return dist

    def _guard(self, rho: int) -> None:
        if not self.finite and self.ball_size(rho) > MAX_BALL_CELLS:
            raise ResourceLimitError(
                f"ball of radius {rho} in {self.name} has {self.ball_size(rho)} cells "
                f"(limit {MAX_BALL_CELLS})"
            )

    def _ball_cells(self, m: Cell, rho: int) -> frozenset:
        return frozenset(self.bfs_ball(m, rho))

    def ball(self, m: Cell, rho: int) -> CellSet:
        if rho < 0:
            return CellSet(self, ())
        key = (m, rho)
        hit = self._ball_cache.get(key)
        if hit is None:
            self._guard(rho)
            hit = CellSet(self, self._ball_cells(m, rho))
            if len(self._ball_cache) > 50_000:
                self._ball_cache.clear()
            self._ball_cache[key] = hit
        return hit

    def sphere(self, m: Cell, rho: int) -> CellSet:
        return CellSet(self, (c for c in self.ball(m, rho) if self.distance(m, c) == rho))

    def distance(self, m: Cell, m2: Cell) -> int:
        if m == m2:
            return 0
        dist = {m: 0}
        queue = deque([m])
        while queue:
            c = queue.popleft()
            for label in self.generators:
                n = self.step(c, label)
                if n not in dist:
                    dist[n] = dist[c] + 1
                    if n == m2:
                        return dist[n]
                    queue.append(n)
        raise MalformedInputError(f"{m2!r} is not reachable from {m!r}")

    def set_distance(self, A: Iterable[Cell], B: Iterable[Cell]) -> int | None:
        """Smallest distance between a cell of ``A`` and one of ``B``."""
        B = list(B)
        best = None
        for a in A:
            for b in B:
                d = self.distance(a, b)
                if best is None or d < best:
                    best = d
        return best

    def cellset(self, cells: Iterable[Cell]) -> CellSet:
        return CellSet(self, cells)

    def __repr__(self) -> str:
        return f"<CellSpace {self.name}>"


class IntegerLine(CellSpace):
    """The integers with generators ``+1`` and ``-1``."""

    name = "Z"
    generators = ("+1", "-1")
    origin = 0
    one_dimensional = True

    def step(self, m, label):
        if label == "+1":
            return m + 1
        if label == "-1":
            return m - 1
        raise MalformedInputError(f"unknown generator {label!r} for {self.name}")

    def act(self, m, a):
        return m + a

    def sort_key(self, m):
        return m

    def parse_cell(self, text):
        if isinstance(text, bool):
            raise MalformedInputError(f"not a cell: {text!r}")
        if isinstance(text, int):
            return text
        try:
            return int(str(text))
        except ValueError:
            return self.semi_act(0, str(text))

    def cell_json(self, m):
        return m

    def ball_size(self, rho):
        return 2 * rho + 1 if rho >= 0 else 0

    def _ball_cells(self, m, rho):
        return frozenset(range(m - rho, m + rho + 1))

    def distance(self, m, m2):
        return abs(m - m2)

    def interval(self, start: int, stop: int) -> CellSet:
        return CellSet(self, range(start, stop))


class DihedralLine(IntegerLine):
    """The infinite dihedral group acting on the integers.

    Cosets of the stabiliser are represented by translations, so the
    semi-action is addition as on ``Z``; the stabiliser of ``0`` is
    ``{e, r}`` with ``r ▷ m = -m``.  With ``reflections=False`` the big
    subgroup is the translation subgroup and ``H0`` is trivial.
    """

    name = "Dinf"
    stabiliser = ("e", "r")

    def __init__(self, reflections: bool = True):
        super().__init__()
        self.big_stabiliser = ("e", "r") if reflections else ("e",)

    def stab_act(self, h, m):
        if h == "e":
            return m
        if h == "r":
            return -m
        raise MalformedInputError(f"unknown stabiliser element {h!r}")


class SquareLattice(CellSpace):
    """``Z^2`` with the four unit generators."""

    name = "Z2"
    generators = ("+x", "-x", "+y", "-y")
    origin = (0, 0)
    _moves = {"+x": (1, 0), "-x": (-1, 0), "+y": (0, 1), "-y": (0, -1)}

    def step(self, m, label):
        try:
            dx, dy = self._moves[label]
        except KeyError:
            raise MalformedInputError(f"unknown generator {label!r} for Z2") from None
        return (m[0] + dx, m[1] + dy)

    def act(self, m, a):
        return (m[0] + a[0], m[1] + a[1])

    def sort_key(self, m):
        return m

    def parse_cell(self, text):
        if isinstance(text, (list, tuple)) and len(text) == 2:
            return (int(text[0]), int(text[1]))
        s = str(text).strip().strip("()[]")
        if "," in s:
            try:
                x, y = (int(t) for t in s.split(","))
            except ValueError:
                raise MalformedInputError(f"not a Z2 cell: {text!r}") from None
            return (x, y)
        return self.semi_act((0, 0), s)

    def cell_str(self, m):
        return f"{m[0]},{m[1]}"

    def cell_json(self, m):
        return [m[0], m[1]]

    def ball_size(self, rho):
        return 2 * rho * rho + 2 * rho + 1 if rho >= 0 else 0

    def _ball_cells(self, m, rho):
        x0, y0 = m
        return frozenset(
            (x0 + dx, y0 + dy)
            for dx in range(-rho, rho + 1)
            for dy in range(-(rho - abs(dx)), rho - abs(dx) + 1)
        )

    def distance(self, m, m2):
        return abs(m[0] - m2[0]) + abs(m[1] - m2[1])


class FreeGroup(CellSpace):
    """The free group on ``k`` letters acting on itself by left multiplication.

    Cells are reduced words stored as tuples of non-zero integers: ``i``
    for the ``i``-th letter and ``-i`` for its inverse.  Labels are
    ``a, b, ...`` for letters and ``A, B, ...`` for inverses.
    """

    amenable = False
    origin = ()

    def __init__(self, k: int):
        super().__init__()
        if not 1 <= k <= 26:
            raise MalformedInputError("free group rank must be between 1 and 26")
        self.k = k
        self.name = f"free:{k}"
        labels = []
        self._letter = {}
        for i in range(1, k + 1):
            lo, up = chr(ord("a") + i - 1), chr(ord("A") + i - 1)
            labels += [lo, up]
            self._letter[lo], self._letter[up] = i, -i
        self.generators = tuple(labels)
        self._label = {v: s for s, v in self._letter.items()}

    @staticmethod
    def _mul(u: tuple, v: tuple) -> tuple:
        i = 0
        while i < len(u) and i < len(v) and u[-1 - i] == -v[i]:
            i += 1
        return u[: len(u) - i] + v[i:]

    def step(self, m, label):
        try:
            return self._mul(m, (self._letter[label],))
        except KeyError:
            raise MalformedInputError(f"unknown generator {label!r} for {self.name}") from None

    def act(self, m, a):
        return self._mul(m, a)

    def _rank(self, g: int) -> int:
        return 2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1

    def sort_key(self, m):
        return (len(m), tuple(self._rank(g) for g in m))

    def parse_cell(self, text):
        if isinstance(text, (list, tuple)):
            word = tuple(text)
            if all(isinstance(g, int) and 0 < abs(g) <= self.k for g in word):
                return self._mul((), word)
            raise MalformedInputError(f"not a {self.name} cell: {text!r}")
        s = str(text).strip()
        if s in ("", "e"):
            return ()
        labels = s.split(".") if "." in s else list(s)
        return self.semi_act((), labels)

    def cell_str(self, m):
        return ".".join(self._label[g] for g in m) if m else "e"

    def ball_size(self, rho):
        if rho < 0:
            return 0
        if self.k == 1:
            return 2 * rho + 1
        q = 2 * self.k - 1
        return 1 + 2 * self.k * (q**rho - 1) // (q - 1)

    def distance(self, m, m2):
        inv = tuple(-g for g in reversed(m))
        return len(self._mul(inv, m2))


class CycleSpace(CellSpace):
    """A finite cycle of ``n`` cells; used for finite toy spaces."""

    finite = True
    origin = 0
    generators = ("+1", "-1")

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise MalformedInputError("cycle length must be positive")
        self.n = n
        self.name = f"cycle:{n}"

    def step(self, m, label):
        if label == "+1":
            return (m + 1) % self.n
        if label == "-1":
            return (m - 1) % self.n
        raise MalformedInputError(f"unknown generator {label!r} for {self.name}")

    def act(self, m, a):
        return (m + a) % self.n

    def sort_key(self, m):
        return m

    def parse_cell(self, text):
        try:
            return int(str(text)) % self.n
        except ValueError:
            return self.semi_act(0, str(text))

    def cell_json(self, m):
        return m

    def distance(self, m, m2):
        d = (m2 - m) % self.n
        return min(d, self.n - d)

    @property
    def cells(self) -> CellSet:
        return CellSet(self, range(self.n))


_SPACES: dict = {}


def get_space(selector: str) -> CellSpace:
    """Return the built-in space named by ``selector``.

    Accepted selectors: ``Z``, ``Z2``, ``free:<k>``, ``Dinf``,
    ``Dinf:translations`` and ``cycle:<n>``.
    """
    if selector in _SPACES:
        return _SPACES[selector]
    if selector == "Z":
        space = IntegerLine()
    elif selector == "Z2":
        space = SquareLattice()
    elif selector == "Dinf":
        space = DihedralLine()
    elif selector == "Dinf:translations":
        space = DihedralLine(reflections=False)
    elif selector.startswith("free:"):
        space = FreeGroup(_parse_positive(selector))
    elif selector.startswith("cycle:"):
        space = CycleSpace(_parse_positive(selector))
    else:
        raise MalformedInputError(f"unknown space {selector!r}")
    _SPACES[selector] = space
    return space


def _parse_positive(selector: str) -> int:
    try:
        value = int(selector.split(":", 1)[1])
    except ValueError:
        raise MalformedInputError(f"bad space selector {selector!r}") from None
    if value < 1:
        raise MalformedInputError(f"bad space selector {selector!r}")
    return value


# -- functional interface -----------------------------------------------------

def semi_act(space: CellSpace, m: Cell, g: str | Sequence[str]) -> Cell:
    """``m ⊳ g`` for a word ``g`` over the generator labels."""
    return space.semi_act(m, g)


def distance(space: CellSpace, m: Cell, m2: Cell) -> int:
    return space.distance(m, m2)


def ball(space: CellSpace, m: Cell, rho: int) -> CellSet:
    return space.ball(m, rho)


def sphere(space: CellSpace, m: Cell, rho: int) -> CellSet:
    return space.sphere(m, rho)


def translate(space: CellSpace, m: Cell, A: Iterable[Cell]) -> CellSet:
    """``m ⊳ A``."""
    return CellSet(space, (space.act(m, a) for a in A))


def interior(space: CellSpace, A: Iterable[Cell], theta: int) -> CellSet:
    """``A^{-θ}``: cells of ``A`` whose θ-ball lies inside ``A``."""
    cells = A.cells if isinstance(A, CellSet) else frozenset(A)
    if theta == 0:
        return CellSet(space, cells)
    return CellSet(space, (m for m in cells if space.ball(m, theta).cells <= cells))


def closure(space: CellSpace, A: Iterable[Cell], theta: int) -> CellSet:
    """``A^{+θ}``: cells within distance θ of ``A``."""
    cells = A.cells if isinstance(A, CellSet) else frozenset(A)
    if theta == 0:
        return CellSet(space, cells)
    out: set = set()
    for a in cells:
        out |= space.ball(a, theta).cells
    return CellSet(space, out)


def boundary(space: CellSpace, A: Iterable[Cell], theta: int) -> CellSet:
    return closure(space, A, theta) - interior(space, A, theta)


def internal_boundary(space: CellSpace, A: Iterable[Cell], theta: int) -> CellSet:
    return CellSet(space, A) - interior(space, A, theta)


def external_boundary(space: CellSpace, A: Iterable[Cell], theta: int) -> CellSet:
    return closure(space, A, theta) - CellSet(space, A)


def stabiliser_orbit(space: CellSpace, n_set: Iterable[Cell]) -> list[tuple[int, ...]]:
    """Permutations of ``n_set`` induced by the elements of ``H0``.

    Entry ``i`` of each permutation is the index (in canonical order) of
    the image of the ``i``-th cell.  Raises ``InvalidNeighbourhoodError``
    when ``n_set`` is not closed under ``G0``.
    """
    cells = n_set.ordered if isinstance(n_set, CellSet) else CellSet(space, n_set).ordered
    index = {c: i for i, c in enumerate(cells)}
    for g in space.stabiliser:
        for c in cells:
            if space.stab_act(g, c) not in index:
                raise InvalidNeighbourhoodError(
                    f"{space.cell_str(c)} is mapped outside the neighbourhood by {g}"
                )
    return [tuple(index[space.stab_act(h, c)] for c in cells) for h in space.big_stabiliser]
