"""Exact integer geometry of the Z^2 bond lattice, its dual, paths, and cones.

Every value here is immutable and every operation is pure integer
arithmetic; no floats enter the geometric core.  Conventions:

* A horizontal bond ``H(x, y)`` joins the vertices ``(x, y)`` and
  ``(x+1, y)``; a vertical bond ``V(x, y)`` joins ``(x, y)`` and
  ``(x, y+1)``.
* The plaquette ``(x, y)`` is the unit square ``[x, x+1] x [y, y+1]``;
  its dual-lattice vertex sits at the center but is stored as the
  integer pair ``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

Vertex = tuple[int, int]
Plaquette = tuple[int, int]
IntVec = tuple[int, int]

HORIZONTAL = "H"
VERTICAL = "V"

#: Axis ray directions usable as semi-infinite path tails.
DIRECTIONS: dict[str, IntVec] = {
    "+x": (1, 0),
    "-x": (-1, 0),
    "+y": (0, 1),
    "-y": (0, -1),
}


def cross(u: IntVec, v: IntVec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: IntVec, v: IntVec) -> int:
    return u[0] * v[0] + u[1] * v[1]


def vec_add(u: IntVec, v: IntVec) -> IntVec:
    return (u[0] + v[0], u[1] + v[1])


def vec_sub(u: IntVec, v: IntVec) -> IntVec:
    return (u[0] - v[0], u[1] - v[1])


@dataclass(frozen=True, order=True)
class Bond:
    """One edge of the Z^2 lattice, carrying a single spin-1/2."""

    x: int
    y: int
    orientation: str  # HORIZONTAL or VERTICAL

    def __post_init__(self) -> None:
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"bad bond orientation {self.orientation!r}")

    @property
    def origin(self) -> Vertex:
        return (self.x, self.y)

    def endpoints(self) -> tuple[Vertex, Vertex]:
        if self.orientation == HORIZONTAL:
            return ((self.x, self.y), (self.x + 1, self.y))
        return ((self.x, self.y), (self.x, self.y + 1))

    def plaquettes(self) -> tuple[Plaquette, Plaquette]:
        """The two unit squares having this bond on their boundary."""
        if self.orientation == HORIZONTAL:
            return ((self.x, self.y - 1), (self.x, self.y))
        return ((self.x - 1, self.y), (self.x, self.y))

    def translated(self, delta: IntVec) -> "Bond":
        return Bond(self.x + delta[0], self.y + delta[1], self.orientation)

    def __repr__(self) -> str:
        return f"{self.orientation}({self.x},{self.y})"


def hbond(x: int, y: int) -> Bond:
    return Bond(x, y, HORIZONTAL)


def vbond(x: int, y: int) -> Bond:
    return Bond(x, y, VERTICAL)


def star(v: Vertex) -> frozenset[Bond]:
    """The 4 bonds incident to the vertex ``v``."""
    x, y = v
    return frozenset({hbond(x - 1, y), hbond(x, y), vbond(x, y - 1), vbond(x, y)})


def plaq(p: Plaquette) -> frozenset[Bond]:
    """The 4 bonds bounding the unit square at ``p``."""
    x, y = p
    return frozenset({hbond(x, y), hbond(x, y + 1), vbond(x, y), vbond(x + 1, y)})


def dual_step_bond(a: Plaquette, b: Plaquette) -> Bond:
    """The primal bond crossed when stepping between adjacent plaquettes."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if (dx, dy) == (1, 0):
        return vbond(a[0] + 1, a[1])
    if (dx, dy) == (-1, 0):
        return vbond(a[0], a[1])
    if (dx, dy) == (0, 1):
        return hbond(a[0], a[1] + 1)
    if (dx, dy) == (0, -1):
        return hbond(a[0], a[1])
    raise ValueError(f"plaquettes {a} and {b} are not adjacent")


class SiteKind(Enum):
    VERTEX = "vertex"
    PLAQUETTE = "plaquette"
    COMBINED = "combined"


@dataclass(frozen=True)
class SiteSpec:
    """A place where an excitation can sit: a vertex, a plaquette, or both."""

    kind: SiteKind
    vertex: Vertex | None = None
    plaquette: Plaquette | None = None

    def __post_init__(self) -> None:
        if self.kind is SiteKind.VERTEX and (self.vertex is None or self.plaquette is not None):
            raise ValueError("vertex site needs exactly a vertex")
        if self.kind is SiteKind.PLAQUETTE and (self.plaquette is None or self.vertex is not None):
            raise ValueError("plaquette site needs exactly a plaquette")
        if self.kind is SiteKind.COMBINED:
            if self.vertex is None or self.plaquette is None:
                raise ValueError("combined site needs a vertex and a plaquette")
            px, py = self.plaquette
            corners = {(px, py), (px + 1, py), (px, py + 1), (px + 1, py + 1)}
            if self.vertex not in corners:
                raise ValueError(f"vertex {self.vertex} is not a corner of plaquette {self.plaquette}")

    def translated(self, delta: IntVec) -> "SiteSpec":
        return SiteSpec(
            self.kind,
            vec_add(self.vertex, delta) if self.vertex is not None else None,
            vec_add(self.plaquette, delta) if self.plaquette is not None else None,
        )


def vertex_site(v: Vertex) -> SiteSpec:
    return SiteSpec(SiteKind.VERTEX, vertex=v)


def plaquette_site(p: Plaquette) -> SiteSpec:
    return SiteSpec(SiteKind.PLAQUETTE, plaquette=p)


def combined_site(v: Vertex, p: Plaquette) -> SiteSpec:
    return SiteSpec(SiteKind.COMBINED, vertex=v, plaquette=p)


class PathKind(Enum):
    PRIMAL = "primal"
    DUAL = "dual"
    RIBBON = "ribbon"


@dataclass(frozen=True)
class FinitePath:
    """A finite walk on the lattice (primal), the dual lattice, or both.

    Primal paths store their ordered bonds; dual paths store the visited
    plaquettes together with the crossed primal bonds; a ribbon pairs one
    primal and one dual path.
    """

    kind: PathKind
    bonds: tuple[Bond, ...] = ()
    cells: tuple[Plaquette, ...] = ()
    crossed: tuple[Bond, ...] = ()
    endpoints: tuple[SiteSpec, SiteSpec] = ()
    primal_part: "FinitePath | None" = None
    dual_part: "FinitePath | None" = None

    def __post_init__(self) -> None:
        if self.kind is PathKind.PRIMAL:
            a, b = self.endpoints
            if a.kind is not SiteKind.VERTEX or b.kind is not SiteKind.VERTEX:
                raise ValueError("primal path endpoints must be vertices")
            self._check_primal_chain()
        elif self.kind is PathKind.DUAL:
            a, b = self.endpoints
            if a.kind is not SiteKind.PLAQUETTE or b.kind is not SiteKind.PLAQUETTE:
                raise ValueError("dual path endpoints must be plaquettes")
            self._check_dual_chain()
        else:
            if self.primal_part is None or self.dual_part is None:
                raise ValueError("ribbon needs a primal and a dual part")

    def _check_primal_chain(self) -> None:
        at = self.endpoints[0].vertex
        for b in self.bonds:
            u, w = b.endpoints()
            if at == u:
                at = w
            elif at == w:
                at = u
            else:
                raise ValueError(f"bond {b} does not continue the path at {at}")
        if at != self.endpoints[1].vertex:
            raise ValueError("primal path does not reach its stated endpoint")

    def _check_dual_chain(self) -> None:
        if len(self.crossed) != max(len(self.cells) - 1, 0):
            raise ValueError("dual path needs one crossed bond per step")
        if self.cells:
            if self.cells[0] != self.endpoints[0].plaquette or self.cells[-1] != self.endpoints[1].plaquette:
                raise ValueError("dual path does not match its endpoints")
        for a, b, c in zip(self.cells, self.cells[1:], self.crossed):
            if dual_step_bond(a, b) != c:
                raise ValueError(f"crossed bond {c} is not the shared edge of {a},{b}")

    def support(self) -> frozenset[Bond]:
        """Bonds carrying the path's letters, with doubled bonds cancelled mod 2."""
        if self.kind is PathKind.PRIMAL:
            raw: Iterable[Bond] = self.bonds
        elif self.kind is PathKind.DUAL:
            raw = self.crossed
        else:
            return self.primal_part.support() | self.dual_part.support()
        out: set[Bond] = set()
        for b in raw:
            out.symmetric_difference_update({b})
        return frozenset(out)

    def __len__(self) -> int:
        if self.kind is PathKind.PRIMAL:
            return len(self.bonds)
        if self.kind is PathKind.DUAL:
            return len(self.crossed)
        return max(len(self.primal_part), len(self.dual_part))

    def reversed(self) -> "FinitePath":
        if self.kind is PathKind.PRIMAL:
            return FinitePath(self.kind, bonds=tuple(reversed(self.bonds)),
                              endpoints=(self.endpoints[1], self.endpoints[0]))
        if self.kind is PathKind.DUAL:
            return FinitePath(self.kind, cells=tuple(reversed(self.cells)),
                              crossed=tuple(reversed(self.crossed)),
                              endpoints=(self.endpoints[1], self.endpoints[0]))
        return FinitePath(self.kind, primal_part=self.primal_part.reversed(),
                          dual_part=self.dual_part.reversed())

    def concat(self, other: "FinitePath") -> "FinitePath":
        if self.kind is not other.kind or self.kind is PathKind.RIBBON:
            raise ValueError("can only concatenate primal with primal or dual with dual")
        if self.endpoints[1] != other.endpoints[0]:
            raise ValueError("paths do not share the junction site")
        if self.kind is PathKind.PRIMAL:
            return FinitePath(self.kind, bonds=self.bonds + other.bonds,
                              endpoints=(self.endpoints[0], other.endpoints[1]))
        return FinitePath(self.kind, cells=self.cells + other.cells[1:],
                          crossed=self.crossed + other.crossed,
                          endpoints=(self.endpoints[0], other.endpoints[1]))

    def translated(self, delta: IntVec) -> "FinitePath":
        if self.kind is PathKind.RIBBON:
            return FinitePath(self.kind, primal_part=self.primal_part.translated(delta),
                              dual_part=self.dual_part.translated(delta))
        return FinitePath(
            self.kind,
            bonds=tuple(b.translated(delta) for b in self.bonds),
            cells=tuple(vec_add(c, delta) for c in self.cells),
            crossed=tuple(b.translated(delta) for b in self.crossed),
            endpoints=(self.endpoints[0].translated(delta), self.endpoints[1].translated(delta)),
        )


def primal_path(vertices: Sequence[Vertex]) -> FinitePath:
    """Build a primal path from a vertex walk (consecutive vertices adjacent)."""
    if not vertices:
        raise ValueError("need at least one vertex")
    bonds = []
    for a, b in zip(vertices, vertices[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        if (dx, dy) == (1, 0):
            bonds.append(hbond(a[0], a[1]))
        elif (dx, dy) == (-1, 0):
            bonds.append(hbond(b[0], b[1]))
        elif (dx, dy) == (0, 1):
            bonds.append(vbond(a[0], a[1]))
        elif (dx, dy) == (0, -1):
            bonds.append(vbond(b[0], b[1]))
        else:
            raise ValueError(f"vertices {a} and {b} are not adjacent")
    return FinitePath(PathKind.PRIMAL, bonds=tuple(bonds),
                      endpoints=(vertex_site(vertices[0]), vertex_site(vertices[-1])))


def dual_path(cells: Sequence[Plaquette]) -> FinitePath:
    """Build a dual path from a plaquette walk (consecutive cells adjacent)."""
    if not cells:
        raise ValueError("need at least one plaquette")
    crossed = tuple(dual_step_bond(a, b) for a, b in zip(cells, cells[1:]))
    return FinitePath(PathKind.DUAL, cells=tuple(cells), crossed=crossed,
                      endpoints=(plaquette_site(cells[0]), plaquette_site(cells[-1])))


def ribbon_path(primal: FinitePath, dual: FinitePath) -> FinitePath:
    if primal.kind is not PathKind.PRIMAL or dual.kind is not PathKind.DUAL:
        raise ValueError("ribbon needs one primal and one dual path")
    return FinitePath(PathKind.RIBBON, primal_part=primal, dual_part=dual)


def empty_primal_path(v: Vertex) -> FinitePath:
    return primal_path([v])


def empty_dual_path(p: Plaquette) -> FinitePath:
    return dual_path([p])


def thread_primal(bonds: Iterable[Bond], start: Vertex, end: Vertex) -> FinitePath:
    """Order a bond set into a primal trail from ``start`` to ``end``.

    Hierholzer walk; requires every vertex except the endpoints to have even
    degree in the bond set (which deformation moves guarantee).
    """
    remaining: dict[Vertex, list[Bond]] = {}
    bond_list = sorted(set(bonds))
    for b in bond_list:
        for v in b.endpoints():
            remaining.setdefault(v, []).append(b)
    used: set[Bond] = set()

    def walk_from(v: Vertex) -> list[Vertex]:
        trail = [v]
        while True:
            nxt = None
            for b in remaining.get(trail[-1], ()):
                if b not in used:
                    nxt = b
                    break
            if nxt is None:
                return trail
            used.add(nxt)
            u, w = nxt.endpoints()
            trail.append(w if trail[-1] == u else u)

    trail = walk_from(start)
    # splice in detour loops left at already-visited vertices
    i = 0
    while len(used) < len(bond_list):
        progressed = False
        while i < len(trail):
            sub = walk_from(trail[i])
            if len(sub) > 1:
                trail = trail[: i + 1] + sub[1:] + trail[i + 1:]
                progressed = True
                break
            i += 1
        if not progressed:
            raise ValueError("bond set is not a single trail between the endpoints")
    if trail[-1] != end:
        raise ValueError("bond set does not form a trail to the requested endpoint")
    return primal_path(trail)


def thread_dual(crossed: Iterable[Bond], start: Plaquette, end: Plaquette) -> FinitePath:
    """Order a crossed-bond set into a dual trail from ``start`` to ``end``."""
    remaining: dict[Plaquette, list[Bond]] = {}
    bond_list = sorted(set(crossed))
    for b in bond_list:
        for c in b.plaquettes():
            remaining.setdefault(c, []).append(b)
    used: set[Bond] = set()

    def walk_from(c: Plaquette) -> list[Plaquette]:
        trail = [c]
        while True:
            nxt = None
            for b in remaining.get(trail[-1], ()):
                if b not in used:
                    nxt = b
                    break
            if nxt is None:
                return trail
            used.add(nxt)
            u, w = nxt.plaquettes()
            trail.append(w if trail[-1] == u else u)

    trail = walk_from(start)
    i = 0
    while len(used) < len(bond_list):
        progressed = False
        while i < len(trail):
            sub = walk_from(trail[i])
            if len(sub) > 1:
                trail = trail[: i + 1] + sub[1:] + trail[i + 1:]
                progressed = True
                break
            i += 1
        if not progressed:
            raise ValueError("crossed-bond set is not a single dual trail")
    if trail[-1] != end:
        raise ValueError("crossed-bond set does not form a trail to the requested plaquette")
    return dual_path(trail)


@dataclass(frozen=True)
class SemiInfinitePath:
    """A finite prefix followed by an infinite straight axis ray.

    ``truncate(n)`` yields the first ``n`` bonds (prefix first, then ray
    bonds); for any finite bond set the index beyond which the path never
    returns is computable in closed form (``disjoint_index``).
    """

    kind: PathKind  # PRIMAL or DUAL
    start: SiteSpec
    prefix: FinitePath
    direction: str  # key of DIRECTIONS

    def __post_init__(self) -> None:
        if self.kind is PathKind.RIBBON:
            raise ValueError("use SemiInfiniteRibbon for ribbons")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown ray direction {self.direction!r}")
        if self.prefix.kind is not self.kind:
            raise ValueError("prefix kind does not match path kind")
        if self.prefix.endpoints[0] != self.start:
            raise ValueError("prefix must begin at the start site")

    @property
    def ray_base(self) -> IntVec:
        site = self.prefix.endpoints[1]
        return site.vertex if self.kind is PathKind.PRIMAL else site.plaquette

    def ray_bond(self, k: int) -> Bond:
        """The k-th bond of the ray (0-based)."""
        ax, ay = self.ray_base
        d = self.direction
        if self.kind is PathKind.PRIMAL:
            if d == "+x":
                return hbond(ax + k, ay)
            if d == "-x":
                return hbond(ax - 1 - k, ay)
            if d == "+y":
                return vbond(ax, ay + k)
            return vbond(ax, ay - 1 - k)
        if d == "+x":
            return vbond(ax + 1 + k, ay)
        if d == "-x":
            return vbond(ax - k, ay)
        if d == "+y":
            return hbond(ax, ay + 1 + k)
        return hbond(ax, ay - k)

    def bond_at(self, i: int) -> Bond:
        n_pre = len(self.prefix)
        if i < n_pre:
            if self.kind is PathKind.PRIMAL:
                return self.prefix.bonds[i]
            return self.prefix.crossed[i]
        return self.ray_bond(i - n_pre)

    def truncate(self, n: int) -> FinitePath:
        if n < 0:
            raise ValueError("truncation length must be non-negative")
        n_pre = len(self.prefix)
        if self.kind is PathKind.PRIMAL:
            vs = [self.start.vertex]
            for i in range(n):
                b = self.bond_at(i)
                u, w = b.endpoints()
                vs.append(w if vs[-1] == u else u)
            return primal_path(vs)
        cells = [self.start.plaquette]
        for i in range(n):
            b = self.bond_at(i)
            u, w = b.plaquettes()
            cells.append(w if cells[-1] == u else u)
        return dual_path(cells)

    def disjoint_index(self, bonds: Iterable[Bond]) -> int:
        """Smallest n such that every path bond of index >= n avoids ``bonds``."""
        n_pre = len(self.prefix)
        n0 = n_pre
        ax, ay = self.ray_base
        for b in bonds:
            k = self._ray_index_of(b, ax, ay)
            if k is not None:
                n0 = max(n0, n_pre + k + 1)
        return n0

    def _ray_index_of(self, b: Bond, ax: int, ay: int) -> int | None:
        d = self.direction
        if self.kind is PathKind.PRIMAL:
            if b.orientation == HORIZONTAL and b.y == ay:
                if d == "+x" and b.x >= ax:
                    return b.x - ax
                if d == "-x" and b.x <= ax - 1:
                    return ax - 1 - b.x
            if b.orientation == VERTICAL and b.x == ax:
                if d == "+y" and b.y >= ay:
                    return b.y - ay
                if d == "-y" and b.y <= ay - 1:
                    return ay - 1 - b.y
            return None
        if b.orientation == VERTICAL and b.y == ay:
            if d == "+x" and b.x >= ax + 1:
                return b.x - ax - 1
            if d == "-x" and b.x <= ax:
                return ax - b.x
        if b.orientation == HORIZONTAL and b.x == ax:
            if d == "+y" and b.y >= ay + 1:
                return b.y - ay - 1
            if d == "-y" and b.y <= ay:
                return ay - b.y
        return None

    def translated(self, delta: IntVec) -> "SemiInfinitePath":
        return SemiInfinitePath(self.kind, self.start.translated(delta),
                                self.prefix.translated(delta), self.direction)


@dataclass(frozen=True)
class SemiInfiniteRibbon:
    """A semi-infinite ribbon: paired primal and dual semi-infinite paths."""

    primal: SemiInfinitePath
    dual: SemiInfinitePath

    def __post_init__(self) -> None:
        if self.primal.kind is not PathKind.PRIMAL or self.dual.kind is not PathKind.DUAL:
            raise ValueError("ribbon needs one primal and one dual semi-infinite path")
        # start sites must assemble into a combined site
        combined_site(self.primal.start.vertex, self.dual.start.plaquette)

    @property
    def start(self) -> SiteSpec:
        return combined_site(self.primal.start.vertex, self.dual.start.plaquette)

    def truncate(self, n: int) -> FinitePath:
        return ribbon_path(self.primal.truncate(n), self.dual.truncate(n))

    def disjoint_index(self, bonds: Iterable[Bond]) -> int:
        bonds = list(bonds)
        return max(self.primal.disjoint_index(bonds), self.dual.disjoint_index(bonds))

    def translated(self, delta: IntVec) -> "SemiInfiniteRibbon":
        return SemiInfiniteRibbon(self.primal.translated(delta), self.dual.translated(delta))


@dataclass(frozen=True)
class Cone:
    """An infinite wedge of bonds, bounded by two rays from an integer apex.

    The region is swept counter-clockwise from ``ray1`` to ``ray2``; the
    opening angle must be strictly between 0 and pi, which is exactly the
    condition ``cross(ray1, ray2) > 0`` for integer direction vectors.
    A bond belongs to the cone if it lies in the closed wedge or is
    intersected by one of the boundary rays.
    """

    apex: IntVec
    ray1: IntVec
    ray2: IntVec

    def __post_init__(self) -> None:
        if self.ray1 == (0, 0) or self.ray2 == (0, 0):
            raise ValueError("cone rays must be non-zero")
        if cross(self.ray1, self.ray2) <= 0:
            raise ValueError("cone opening angle must be strictly between 0 and pi")

    def contains_point(self, q: IntVec) -> bool:
        r = vec_sub(q, self.apex)
        return cross(self.ray1, r) >= 0 and cross(r, self.ray2) >= 0

    def contains(self, b: Bond) -> bool:
        u, w = b.endpoints()
        if self.contains_point(u) and self.contains_point(w):
            return True
        return self._segment_meets_ray(u, w, self.ray1) or self._segment_meets_ray(u, w, self.ray2)

    def _segment_meets_ray(self, u: Vertex, w: Vertex, d: IntVec) -> bool:
        ru, rw = vec_sub(u, self.apex), vec_sub(w, self.apex)
        c1, c2 = cross(d, ru), cross(d, rw)
        if c1 == 0 and c2 == 0:
            # collinear with the boundary line: overlap with the forward ray?
            return dot(d, ru) >= 0 or dot(d, rw) >= 0
        if (c1 > 0 and c2 > 0) or (c1 < 0 and c2 < 0):
            return False
        # crossing point q = u + s (w - u), s = c1 / (c1 - c2); on the ray iff
        # dot(d, q - apex) >= 0, scaled by (c1 - c2) to stay in integers
        denom = c1 - c2
        num = dot(d, ru) * denom + dot(d, vec_sub(rw, ru)) * c1
        return num >= 0 if denom > 0 else num <= 0

    def contains_ray_bonds(self, first: Bond, step: IntVec) -> bool:
        """Exact check that ``first + k*step`` lies in the wedge for all k >= 0."""
        for corner in first.endpoints():
            r0 = vec_sub(corner, self.apex)
            for form in (lambda q: cross(self.ray1, q), lambda q: cross(q, self.ray2)):
                if form(r0) < 0 or form(step) < 0:
                    return False
        return True

    def contains_semi_infinite(self, path: SemiInfinitePath) -> bool:
        for i in range(len(path.prefix)):
            if not self.contains(path.bond_at(i)):
                return False
        step = DIRECTIONS[path.direction]
        return self.contains_ray_bonds(path.ray_bond(0), step)

    def translated(self, delta: IntVec) -> "Cone":
        return Cone(vec_add(self.apex, delta), self.ray1, self.ray2)


def cone_contains(c: Cone, b: Bond) -> bool:
    return c.contains(b)


def translate(obj, delta: IntVec):
    """Shift any lattice object (or set of them) by an integer vector."""
    if isinstance(obj, tuple) and len(obj) == 2 and all(isinstance(t, int) for t in obj):
        return vec_add(obj, delta)
    if isinstance(obj, (frozenset, set)):
        return type(obj)(translate(o, delta) for o in obj)
    if isinstance(obj, list):
        return [translate(o, delta) for o in obj]
    return obj.translated(delta)


def box_bonds(x0: int, y0: int, x1: int, y1: int) -> frozenset[Bond]:
    """All bonds with both endpoints inside the vertex box [x0,x1] x [y0,y1]."""
    out: set[Bond] = set()
    for x in range(x0, x1):
        for y in range(y0, y1 + 1):
            out.add(hbond(x, y))
    for x in range(x0, x1 + 1):
        for y in range(y0, y1):
            out.add(vbond(x, y))
    return frozenset(out)


def bond_bounds(bonds: Iterable[Bond]) -> tuple[int, int, int, int] | None:
    """Vertex bounding box (xmin, ymin, xmax, ymax) of a bond set."""
    xs: list[int] = []
    ys: list[int] = []
    for b in bonds:
        for (px, py) in b.endpoints():
            xs.append(px)
            ys.append(py)
    if not xs:
        return None
    return (min(xs), min(ys), max(xs), max(ys))
