"""Search for and verification of zig-zag walks.

A zig-zag walk is a cyclic sequence of distinct inner intervals whose
consecutive members meet in a single corner, entering and leaving each
interval through adjacent corners, and whose far corners (the z-corners)
are pairwise never contained together in any inner interval.  Existence of
such a walk is the obstruction the primality pipeline reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .grid import Interval, Point, Polyomino, inner_intervals, on_common_edge_interval


@dataclass(frozen=True)
class ZigZagWalk:
    """Witness: intervals I_1..I_l with corner labels v, z, u.

    ``v`` has length l + 1 with v[l] == v[0]; entry corner of interval i is
    v[i], its opposite corner is z[i], and the two remaining corners are
    u[i] and v[i + 1].
    """

    intervals: tuple[Interval, ...]
    v: tuple[Point, ...]
    z: tuple[Point, ...]
    u: tuple[Point, ...]

    @property
    def length(self) -> int:
        return len(self.intervals)

    def to_json(self) -> str:
        payload = {
            "intervals": [{"a": list(i.a), "b": list(i.b)} for i in self.intervals],
            "v": [list(p) for p in self.v],
            "z": [list(p) for p in self.z],
            "u": [list(p) for p in self.u],
        }
        return json.dumps(payload, separators=(",", ":"))


def _opposite_corner(interval: Interval, corner: Point) -> Point:
    a, b = interval.a, interval.b
    x = b[0] if corner[0] == a[0] else a[0]
    y = b[1] if corner[1] == a[1] else a[1]
    return (x, y)


def _other_pair(interval: Interval, corner: Point) -> tuple[Point, Point]:
    """The two corners adjacent to ``corner`` (the complementary pair)."""
    opposite = _opposite_corner(interval, corner)
    return tuple(c for c in interval.corners if c not in (corner, opposite))  # type: ignore[return-value]


def cocontained_in_inner_interval(p: Polyomino, s: Point, t: Point) -> bool:
    """Brute-force scan: does any inner interval contain both points?"""
    return any(i.contains_point(s) and i.contains_point(t) for i in inner_intervals(p))


def _cocontainment_index(p: Polyomino) -> dict[Point, frozenset[Point]]:
    """For each corner point, all points sharing some inner interval with it."""
    index: dict[Point, set[Point]] = {}
    for interval in inner_intervals(p):
        pts = list(interval.points())
        for s in pts:
            index.setdefault(s, set()).update(pts)
    return {s: frozenset(t) for s, t in index.items()}


def verify_zigzag(p: Polyomino, walk: ZigZagWalk) -> bool:
    """Check every defining condition of the walk against the polyomino."""
    intervals = walk.intervals
    n = len(intervals)
    if n < 2 or len(set(intervals)) != n:
        return False
    if len(walk.v) != n + 1 or walk.v[-1] != walk.v[0]:
        return False
    if len(walk.z) != n or len(walk.u) != n:
        return False
    inner = set(inner_intervals(p))
    for i, interval in enumerate(intervals):
        if interval not in inner:
            return False
        corners = set(interval.corners)
        v_in, z, u, v_out = walk.v[i], walk.z[i], walk.u[i], walk.v[i + 1]
        if {v_in, z, u, v_out} != corners or len({v_in, z, u, v_out}) != 4:
            return False
        # {v_in, z} must be the diagonal pair or the anti-diagonal pair.
        if z != _opposite_corner(interval, v_in):
            return False
        # Single-corner meeting with the next interval.
        nxt = intervals[(i + 1) % n]
        if interval.intersection_points(nxt) != frozenset({v_out}):
            return False
        # Entry and exit corners on one maximal edge interval of P.
        if not on_common_edge_interval(p, v_in, v_out):
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if cocontained_in_inner_interval(p, walk.z[i], walk.z[j]):
                return False
    return True


def find_zigzag_walk(p: Polyomino) -> ZigZagWalk | None:
    """Exhaustive backtracking search for a zig-zag walk.

    Intervals are tried in lexicographic order; a walk is always reported
    with its lexicographically least interval first, which cuts the cyclic
    rotations of each witness.  Both corner labelings of every interval are
    branched.  Termination is guaranteed by interval distinctness.
    """
    inner = inner_intervals(p)
    if len(inner) < 2:
        return None
    corner_lookup: dict[Point, list[int]] = {}
    for idx, interval in enumerate(inner):
        for c in interval.corners:
            corner_lookup.setdefault(c, []).append(idx)
    cocontained = _cocontainment_index(p)

    def compatible_z(z: Point, chosen: list[Point]) -> bool:
        block = cocontained.get(z, frozenset())
        return all(prior not in block for prior in chosen)

    for anchor in range(len(inner)):
        first = inner[anchor]
        for v1 in sorted(first.corners):
            z1 = _opposite_corner(first, v1)
            for v2 in sorted(_other_pair(first, v1)):
                u1 = next(c for c in first.corners if c not in (v1, z1, v2))
                state_intervals = [anchor]
                state_v = [v1, v2]
                state_z = [z1]
                state_u = [u1]

                def search() -> ZigZagWalk | None:
                    current = state_v[-1]
                    prev_idx = state_intervals[-1]
                    for idx in corner_lookup.get(current, ()):
                        if idx <= anchor or idx in state_intervals:
                            continue
                        candidate = inner[idx]
                        if inner[prev_idx].intersection_points(candidate) != frozenset({current}):
                            continue
                        z = _opposite_corner(candidate, current)
                        if not compatible_z(z, state_z):
                            continue
                        for v_next in sorted(_other_pair(candidate, current)):
                            u = next(c for c in candidate.corners if c not in (current, z, v_next))
                            state_intervals.append(idx)
                            state_v.append(v_next)
                            state_z.append(z)
                            state_u.append(u)
                            if (
                                v_next == state_v[0]
                                and len(state_intervals) >= 3
                                and candidate.intersection_points(first)
                                == frozenset({state_v[0]})
                            ):
                                walk = ZigZagWalk(
                                    tuple(inner[i] for i in state_intervals),
                                    tuple(state_v),
                                    tuple(state_z),
                                    tuple(state_u),
                                )
                                if verify_zigzag(p, walk):
                                    return walk
                            found = search()
                            if found is not None:
                                return found
                            state_intervals.pop()
                            state_v.pop()
                            state_z.pop()
                            state_u.pop()
                    return None

                result = search()
                if result is not None:
                    return result
    return None
