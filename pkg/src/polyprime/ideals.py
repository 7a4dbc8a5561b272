"""Inner 2-minor generators and vertex-to-monomial (toric) maps.

The generator ideal of a shape has one binomial per inner interval: the
product of the diagonal-corner variables minus the product of the
anti-diagonal ones.  A toric map sends each vertex to the product of the
variables of its two maximal edge intervals, times an extra variable ``w``
on a marked vertex set; the kernel of that map is what the engine in
:mod:`polyprime.toric` computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .classify import Ladder, LConfiguration, find_l_configurations, find_ladders
from .grid import (
    HORIZONTAL,
    Point,
    Polyomino,
    VERTICAL,
    cell_vertices,
    inner_intervals,
    inverse_transform,
    maximal_edge_intervals,
    transform_cells,
    transform_orientation,
    transform_point,
    vertices,
)

# Variable identifiers.  Vertex variables are ("x", point); target-ring
# variables are ("v", k) / ("h", k) for the k-th maximal vertical/horizontal
# edge interval and ("w",) for the marking variable.
Var = tuple

X = "x"
VEDGE = "v"
HEDGE = "h"
W: Var = ("w",)


def vertex_var(point: Point) -> Var:
    return (X, point)


@dataclass(frozen=True)
class Monomial:
    """Exponent map with positive entries, stored sorted for hashing."""

    exponents: tuple[tuple[Var, int], ...]

    @classmethod
    def from_dict(cls, exps: Mapping[Var, int]) -> "Monomial":
        items = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
        if any(e < 0 for _, e in items):
            raise ValueError("negative exponent")
        return cls(items)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    def as_dict(self) -> dict[Var, int]:
        return dict(self.exponents)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = self.as_dict()
        for v, e in other.exponents:
            exps[v] = exps.get(v, 0) + e
        return Monomial.from_dict(exps)

    def variables(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for v, e in self.exponents:
            name = format_var(v)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def format_var(v: Var) -> str:
    if len(v) == 2 and v[0] == X and isinstance(v[1], tuple):
        x, y = v[1]
        return f"x_{x}_{y}".replace("-", "m")
    if len(v) == 2 and v[0] in (VEDGE, HEDGE):
        return f"{v[0]}{v[1]}"
    if v == W:
        return "w"
    return "_".join(str(part) for part in v)


@dataclass(frozen=True)
class Binomial:
    """Difference of two monomials; ``plus == minus`` encodes zero."""

    plus: Monomial
    minus: Monomial

    @property
    def is_zero(self) -> bool:
        return self.plus == self.minus

    def vertex_support(self, side: str) -> frozenset[Point]:
        mono = self.plus if side == "+" else self.minus
        return frozenset(v[1] for v in mono.variables() if v[0] == X)

    def __str__(self) -> str:
        return f"{self.plus} - {self.minus}"


def inner_minors(p: Polyomino) -> list[Binomial]:
    """One binomial per inner interval, in the deterministic interval order."""
    result = []
    for interval in inner_intervals(p):
        c, d = interval.anti_diagonal_corners
        plus = Monomial.from_dict({vertex_var(interval.a): 1}) * Monomial.from_dict(
            {vertex_var(interval.b): 1}
        )
        minus = Monomial.from_dict({vertex_var(c): 1}) * Monomial.from_dict({vertex_var(d): 1})
        result.append(Binomial(plus, minus))
    return result


@dataclass(frozen=True)
class ToricMap:
    """Vertex-to-monomial assignment over edge-interval variables plus ``w``."""

    assignment: tuple[tuple[Point, Monomial], ...]
    marked: frozenset[Point]
    target_variables: tuple[Var, ...]

    @classmethod
    def build(cls, p: Polyomino, marked: Iterable[Point]) -> "ToricMap":
        marked_set = frozenset(marked)
        verts = vertices(p)
        if not marked_set <= verts:
            raise ValueError(f"marked vertices not in the shape: {sorted(marked_set - verts)}")
        v_intervals = maximal_edge_intervals(p, VERTICAL)
        h_intervals = maximal_edge_intervals(p, HORIZONTAL)
        target: list[Var] = [(VEDGE, i) for i in range(len(v_intervals))]
        target += [(HEDGE, j) for j in range(len(h_intervals))]
        if marked_set:
            target.append(W)
        assignment = []
        for vertex in sorted(verts):
            vi = next(i for i, iv in enumerate(v_intervals) if iv.contains_point(vertex))
            hj = next(j for j, ih in enumerate(h_intervals) if ih.contains_point(vertex))
            exps: dict[Var, int] = {(VEDGE, vi): 1, (HEDGE, hj): 1}
            if vertex in marked_set:
                exps[W] = 1
            assignment.append((vertex, Monomial.from_dict(exps)))
        return cls(tuple(assignment), marked_set, tuple(target))

    def domain(self) -> tuple[Point, ...]:
        return tuple(v for v, _ in self.assignment)

    def image(self, vertex: Point) -> Monomial:
        for v, m in self.assignment:
            if v == vertex:
                return m
        raise KeyError(vertex)

    def as_dict(self) -> dict[Point, Monomial]:
        return dict(self.assignment)


def toric_map_marked(p: Polyomino, marked: Iterable[Point]) -> ToricMap:
    """Generic marked-vertex map; ``marked = ()`` gives the plain edge map."""
    return ToricMap.build(p, marked)


def toric_map_lconfig(p: Polyomino, l: LConfiguration) -> ToricMap:
    """Mark the four vertices of the corner cell of an L-configuration."""
    if l not in find_l_configurations(p):
        raise ValueError("not an L-configuration of this polyomino")
    return ToricMap.build(p, cell_vertices(l.corner_cell))


def _ladder_pose_ok(blocks: list[tuple[tuple[int, int], ...]],
                    shape_cells: frozenset[tuple[int, int]]) -> bool:
    """Blocks listed top to bottom: horizontal rows descending by one, the
    last block attached under the right end of the one above it, and no
    shape cell directly below the last block (it is locally the floor, as
    the reference arrangement requires; otherwise the marked corners meet
    inner intervals hanging below and the containment argument breaks)."""
    rows = []
    for cells in blocks:
        ys = {c[1] for c in cells}
        if len(ys) != 1:
            return False
        rows.append(ys.pop())
    if any(rows[i] - 1 != rows[i + 1] for i in range(len(rows) - 1)):
        return False
    second_last = sorted(blocks[-2])
    rightmost = second_last[-1]
    below = (rightmost[0], rightmost[1] - 1)
    if below not in blocks[-1]:
        return False
    return all((x, y - 1) not in shape_cells for x, y in blocks[-1])


def ladder_marked_set(ladder: Ladder, shape_cells: frozenset[tuple[int, int]]) -> frozenset[Point]:
    """Marked vertices for a ladder map, computed in a canonical pose.

    The host shape is turned so the ladder's blocks are horizontal and
    descend by one row per step, the final block sits under the right end
    of the block above it, and nothing of the shape lies directly below the
    final block.  In that pose the marked set is the lower-left corners of
    the second-to-last block's cells together with the three remaining
    corners of the attached cell; the set is then pulled back to the
    original coordinates.
    """
    if ladder.steps < 3:
        raise ValueError("ladder map needs at least three steps")
    for name in (
        "id", "rot90", "rot180", "rot270", "flipx", "flipy", "transpose", "antitranspose",
    ):
        if transform_orientation(name, ladder.orientation) != HORIZONTAL:
            continue
        posed_shape = transform_cells(name, shape_cells)
        for order in (1, -1):
            blocks = [
                tuple(sorted(transform_cells(name, b.cells)))
                for b in (ladder.blocks if order == 1 else tuple(reversed(ladder.blocks)))
            ]
            if not _ladder_pose_ok(blocks, posed_shape):
                continue
            a_list = list(blocks[-2])
            rightmost = a_list[-1]
            ax, ay = rightmost[0], rightmost[1] - 1
            marked_pose = set(a_list) | {(ax, ay), (ax + 1, ay + 1), (ax + 1, ay)}
            inv = inverse_transform(name)
            return frozenset(transform_point(inv, q) for q in marked_pose)
    raise ValueError("ladder admits no canonical pose")


def toric_map_ladder(p: Polyomino, ladder: Ladder) -> ToricMap:
    """Toric map marking the ladder's reference corners."""
    if ladder not in find_ladders(p, min_steps=2):
        raise ValueError("not a maximal ladder of this polyomino")
    return ToricMap.build(p, ladder_marked_set(ladder, p.cells))


def evaluate(phi: ToricMap, f: Binomial) -> Binomial:
    """Substitute vertex variables through the map, exactly.

    The result is a binomial over the target variables; it is zero exactly
    when the two image monomials coincide, i.e. when ``f`` lies in the
    kernel of the map.
    """
    images = phi.as_dict()

    def push(mono: Monomial) -> Monomial:
        out: dict[Var, int] = {}
        for var, exp in mono.exponents:
            if var[0] != X:
                raise ValueError(f"not a vertex variable: {var}")
            image = images.get(var[1])
            if image is None:
                raise ValueError(f"vertex {var[1]} outside the map's domain")
            for tv, te in image.exponents:
                out[tv] = out.get(tv, 0) + te * exp
        return Monomial.from_dict(out)

    return Binomial(push(f.plus), push(f.minus))


def check_containment(p: Polyomino, phi: ToricMap) -> bool:
    """True iff every inner 2-minor evaluates to zero under the map."""
    return all(evaluate(phi, g).is_zero for g in inner_minors(p))


def export_generators(variables: Iterable[Var], binomials: Iterable[Binomial]) -> str:
    """Plain algebra exchange text: variable list, then one binomial per line."""
    lines = ["ring " + " ".join(format_var(v) for v in variables)]
    lines += [str(b) for b in binomials]
    return "\n".join(lines) + "\n"
