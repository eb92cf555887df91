"""Deterministic diagrams of lattice objects: ASCII grids and matplotlib figures.

The ASCII renderer draws a vertex window with bonds between; operators
overlay their letters, stabilizer highlights use ':' (star, dashed motif)
and '#' (plaquette, thick motif), syndromes mark 'e' on vertices and 'm'
on cell centers.  The figure renderer draws the same layers with matplotlib
and writes SVG/PNG/PDF files chosen by the output extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .lattice import (  # noqa: E402
    Bond,
    FinitePath,
    HORIZONTAL,
    PathKind,
    Plaquette,
    Vertex,
    bond_bounds,
    plaq,
    star,
)
from .pauli import PauliOperator  # noqa: E402
from .sectors import syndrome as compute_syndrome  # noqa: E402

LETTER_COLORS = {"X": "#c62828", "Z": "#1565c0", "Y": "#6a1b9a"}


@dataclass(frozen=True)
class Viewport:
    """Vertex window [x0, x1] x [y0, y1] (inclusive)."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError("viewport must have positive extent")

    def contains_bond(self, b: Bond) -> bool:
        return all(self.x0 <= px <= self.x1 and self.y0 <= py <= self.y1
                   for px, py in b.endpoints())

    def require(self, bonds: Iterable[Bond]) -> None:
        for b in bonds:
            if not self.contains_bond(b):
                raise ValueError(f"viewport too small: {b!r} falls outside")

    @staticmethod
    def around(bonds: Iterable[Bond], margin: int = 1) -> "Viewport":
        bounds = bond_bounds(bonds)
        if bounds is None:
            return Viewport(-2, -2, 2, 2)
        x0, y0, x1, y1 = bounds
        return Viewport(x0 - margin, y0 - margin, x1 + margin, y1 + margin)


class _CharGrid:
    def __init__(self, view: Viewport) -> None:
        self.view = view
        self.cols = 4 * (view.x1 - view.x0) + 1
        self.rows = 2 * (view.y1 - view.y0) + 1
        self.grid = [[" "] * self.cols for _ in range(self.rows)]

    def _pos(self, x2: int, y2: int) -> tuple[int, int]:
        # doubled lattice coordinates: vertices at even/even
        col = 2 * (x2 - 2 * self.view.x0)
        row = self.rows - 1 - (y2 - 2 * self.view.y0)
        return row, col

    def put(self, x2: int, y2: int, ch: str) -> None:
        row, col = self._pos(x2, y2)
        if 0 <= row < self.rows and 0 <= col < self.cols:
            self.grid[row][col] = ch

    def put_bond(self, b: Bond, ch_h: str, ch_v: str) -> None:
        if b.orientation == HORIZONTAL:
            self.put(2 * b.x + 1, 2 * b.y, ch_h)
        else:
            self.put(2 * b.x, 2 * b.y + 1, ch_v)

    def text(self) -> str:
        return "\n".join("".join(row).rstrip() for row in self.grid)


def _base_grid(view: Viewport) -> _CharGrid:
    g = _CharGrid(view)
    for x in range(view.x0, view.x1 + 1):
        for y in range(view.y0, view.y1 + 1):
            g.put(2 * x, 2 * y, "+")
    for x in range(view.x0, view.x1):
        for y in range(view.y0, view.y1 + 1):
            g.put_bond(Bond(x, y, "H"), "-", "|")
    for x in range(view.x0, view.x1 + 1):
        for y in range(view.y0, view.y1):
            g.put_bond(Bond(x, y, "V"), "-", "|")
    return g


def ascii_lattice(view: Viewport, stars: Sequence[Vertex] = (),
                  plaquettes: Sequence[Plaquette] = ()) -> str:
    for v in stars:
        view.require(star(v))
    for p in plaquettes:
        view.require(plaq(p))
    g = _base_grid(view)
    for v in stars:
        for b in star(v):
            g.put_bond(b, ":", ":")
    for p in plaquettes:
        for b in plaq(p):
            g.put_bond(b, "#", "#")
    return g.text()


def ascii_operator(view: Viewport, op: PauliOperator, mark_syndrome: bool = False) -> str:
    view.require(op.support)
    g = _base_grid(view)
    for b, letter in op.letters:
        g.put_bond(b, letter, letter)
    if mark_syndrome:
        stars_s, cells_s = compute_syndrome(op)
        for v in stars_s:
            g.put(2 * v[0], 2 * v[1], "e")
        for c in cells_s:
            g.put(2 * c[0] + 1, 2 * c[1] + 1, "m")
    return g.text()


def ascii_path(view: Viewport, path: FinitePath) -> str:
    view.require(path.support())
    g = _base_grid(view)
    _overlay_path(g, path)
    return g.text()


def _overlay_path(g: _CharGrid, path: FinitePath) -> None:
    if path.kind is PathKind.PRIMAL:
        for b in path.bonds:
            g.put_bond(b, "=", "‖")  # double lines along the walk
        for site in path.endpoints:
            g.put(2 * site.vertex[0], 2 * site.vertex[1], "o")
    elif path.kind is PathKind.DUAL:
        for c in path.cells:
            g.put(2 * c[0] + 1, 2 * c[1] + 1, "o")
        for b in path.crossed:
            g.put_bond(b, "x", "x")
    else:
        _overlay_path(g, path.primal_part)
        _overlay_path(g, path.dual_part)


def ascii_braid(view: Viewport, string1: PauliOperator, loop: PauliOperator) -> str:
    view.require(string1.support | loop.support)
    g = _base_grid(view)
    for b, letter in loop.letters:
        g.put_bond(b, letter.lower(), letter.lower())
    for b, letter in string1.letters:
        g.put_bond(b, letter, letter)
    for b in sorted(string1.support & loop.support):
        g.put_bond(b, "!", "!")
    return g.text()


# ---------------------------------------------------------------------------
# matplotlib figures

def _segment(b: Bond) -> tuple[tuple[float, float], tuple[float, float]]:
    (x0, y0), (x1, y1) = b.endpoints()
    return (x0, x1), (y0, y1)


def _draw_base(ax, view: Viewport) -> None:
    for x in range(view.x0, view.x1 + 1):
        ax.plot([x, x], [view.y0, view.y1], color="0.85", lw=1, zorder=1)
    for y in range(view.y0, view.y1 + 1):
        ax.plot([view.x0, view.x1], [y, y], color="0.85", lw=1, zorder=1)
    ax.set_aspect("equal")
    ax.set_xlim(view.x0 - 0.5, view.x1 + 0.5)
    ax.set_ylim(view.y0 - 0.5, view.y1 + 0.5)
    ax.set_xticks([])
    ax.set_yticks([])
    for side in ax.spines.values():
        side.set_visible(False)


def _new_figure(view: Viewport):
    w = max(view.x1 - view.x0, 1)
    h = max(view.y1 - view.y0, 1)
    scale = min(0.6, 7.0 / max(w, h))
    return plt.subplots(figsize=(w * scale + 1.2, h * scale + 1.2))


def figure_lattice(view: Viewport, out: str, stars: Sequence[Vertex] = (),
                   plaquettes: Sequence[Plaquette] = ()) -> str:
    for v in stars:
        view.require(star(v))
    for p in plaquettes:
        view.require(plaq(p))
    fig, ax = _new_figure(view)
    _draw_base(ax, view)
    for v in stars:
        for b in star(v):
            xs, ys = _segment(b)
            ax.plot(xs, ys, color="0.2", lw=2.2, ls="--", zorder=3)
        ax.plot([v[0]], [v[1]], "o", color="0.2", ms=4, zorder=4)
    for p in plaquettes:
        for b in plaq(p):
            xs, ys = _segment(b)
            ax.plot(xs, ys, color="black", lw=3.4, zorder=2)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    return out


def figure_operator(view: Viewport, op: PauliOperator, out: str,
                    mark_syndrome: bool = False) -> str:
    view.require(op.support)
    fig, ax = _new_figure(view)
    _draw_base(ax, view)
    for b, letter in op.letters:
        xs, ys = _segment(b)
        ax.plot(xs, ys, color=LETTER_COLORS[letter], lw=3, zorder=3)
        ax.annotate(letter, (sum(xs) / 2, sum(ys) / 2), fontsize=7,
                    ha="center", va="center",
                    color=LETTER_COLORS[letter], zorder=5,
                    bbox=dict(boxstyle="circle,pad=0.08", fc="white", ec="none"))
    if mark_syndrome:
        stars_s, cells_s = compute_syndrome(op)
        for v in stars_s:
            ax.plot([v[0]], [v[1]], "o", color=LETTER_COLORS["X"], ms=9, zorder=6)
        for c in cells_s:
            ax.plot([c[0] + 0.5], [c[1] + 0.5], "s", color=LETTER_COLORS["Z"],
                    ms=9, zorder=6)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    return out


def figure_path(view: Viewport, path: FinitePath, out: str) -> str:
    view.require(path.support())
    fig, ax = _new_figure(view)
    _draw_base(ax, view)
    _figure_path_layer(ax, path)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    return out


def _figure_path_layer(ax, path: FinitePath) -> None:
    if path.kind is PathKind.PRIMAL:
        for b in path.bonds:
            xs, ys = _segment(b)
            ax.plot(xs, ys, color=LETTER_COLORS["Z"], lw=3, zorder=3)
        for site in path.endpoints:
            ax.plot([site.vertex[0]], [site.vertex[1]], "o",
                    color=LETTER_COLORS["Z"], ms=7, zorder=4)
    elif path.kind is PathKind.DUAL:
        centers = [(c[0] + 0.5, c[1] + 0.5) for c in path.cells]
        if len(centers) > 1:
            ax.plot([c[0] for c in centers], [c[1] for c in centers],
                    color=LETTER_COLORS["X"], lw=2, ls="--", zorder=3)
        for c in centers[:1] + centers[-1:]:
            ax.plot([c[0]], [c[1]], "s", color=LETTER_COLORS["X"], ms=7, zorder=4)
    else:
        _figure_path_layer(ax, path.primal_part)
        _figure_path_layer(ax, path.dual_part)


def figure_braid(view: Viewport, string1: PauliOperator, loop: PauliOperator,
                 out: str) -> str:
    view.require(string1.support | loop.support)
    fig, ax = _new_figure(view)
    _draw_base(ax, view)
    for b, letter in loop.letters:
        xs, ys = _segment(b)
        ax.plot(xs, ys, color=LETTER_COLORS[letter], lw=1.8, alpha=0.5, zorder=2)
    for b, letter in string1.letters:
        xs, ys = _segment(b)
        ax.plot(xs, ys, color=LETTER_COLORS[letter], lw=3, zorder=3)
    for b in sorted(string1.support & loop.support):
        xs, ys = _segment(b)
        ax.plot([sum(xs) / 2], [sum(ys) / 2], "x", color="black", ms=11,
                mew=3, zorder=6)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    return out
