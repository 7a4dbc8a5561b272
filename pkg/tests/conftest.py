from __future__ import annotations

import pytest

from polyprime.classify import OpenPath, trimino_certificate
from polyprime.families import build_psc, build_rectangle_linked
from polyprime.grid import Polyomino

FRAME3_CELLS = ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1))

# The 22-cell closed path with long staggered arms: no L-configuration,
# one horizontal 3-step ladder, no zig-zag walk.
RING22_CELLS = (
    (1, 0), (2, 0), (3, 0), (4, 0), (5, 0),
    (0, 1), (1, 1), (5, 1), (6, 1),
    (0, 2), (6, 2),
    (0, 3), (1, 3), (6, 3),
    (1, 4), (2, 4), (3, 4), (5, 4), (6, 4),
    (3, 5), (4, 5), (5, 5),
)

# 20-cell ring whose every straight run turns immediately: no
# L-configuration and no 3-step ladder, so a zig-zag walk must exist.
PINWHEEL20_CELLS = (
    (0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (3, 3), (3, 4), (2, 4),
    (2, 5), (1, 5), (0, 5), (-1, 5), (-1, 4), (-2, 4), (-2, 3), (-2, 2),
    (-2, 1), (-1, 1), (-1, 0),
)

# Minimal zig-zag closed path (rank 16, found by exhaustive enumeration).
DIAMOND16_CELLS = (
    (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 3), (1, 4), (2, 0), (2, 4),
    (3, 0), (3, 1), (3, 3), (3, 4), (4, 1), (4, 2), (4, 3),
)


@pytest.fixture(scope="session")
def frame3() -> Polyomino:
    return Polyomino.from_cells(FRAME3_CELLS)


@pytest.fixture(scope="session")
def ring22() -> Polyomino:
    return Polyomino.from_cells(RING22_CELLS)


@pytest.fixture(scope="session")
def pinwheel20() -> Polyomino:
    return Polyomino.from_cells(PINWHEEL20_CELLS)


@pytest.fixture(scope="session")
def diamond16() -> Polyomino:
    return Polyomino.from_cells(DIAMOND16_CELLS)


def rectangle(w: int, h: int) -> Polyomino:
    return Polyomino.from_cells([(x, y) for x in range(w) for y in range(h)])


def psc_parts():
    """A small valid instance: simple domino core, 9-cell path with an
    L-configuration, two corner triminoes closing the loop."""
    s = Polyomino.from_cells([(-1, 0), (-1, 1)])
    c = OpenPath(((1, 2), (1, 3), (1, 4), (0, 4), (-1, 4), (-2, 4), (-3, 4), (-3, 3), (-3, 2)))
    t1 = trimino_certificate(Polyomino.from_cells([(0, 0), (1, 0), (1, 1)]))
    t2 = trimino_certificate(Polyomino.from_cells([(-2, 0), (-3, 0), (-3, 1)]))
    assert t1 is not None and t2 is not None
    return s, c, t1, t2


@pytest.fixture(scope="session")
def psc_instance():
    return build_psc(*psc_parts())


@pytest.fixture(scope="session")
def good_l_instance():
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (1, 3)))
    s = Polyomino.from_cells([(1, 4), (2, 4)])
    p2 = OpenPath(((3, 4), (3, 3), (3, 2)))
    return build_rectangle_linked(r, p1, s, p2, kind="good-l-rectangle")


@pytest.fixture(scope="session")
def ladder_rect_instance():
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (0, 2), (0, 3), (-1, 3)))
    s = Polyomino.from_cells([(-1, 4)])
    p2 = OpenPath(((-1, 5), (0, 5), (1, 5), (2, 5), (3, 5), (3, 4), (3, 3), (3, 2)))
    return build_rectangle_linked(r, p1, s, p2, kind="ladder-rectangle")
