from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from polyprime.classify import find_l_configurations, find_ladders
from polyprime.grid import Polyomino, TRANSFORM_NAMES, cell_vertices, transform_point, transform_polyomino, vertices
from polyprime.ideals import (
    Binomial,
    Monomial,
    W,
    check_containment,
    evaluate,
    export_generators,
    inner_minors,
    ladder_marked_set,
    toric_map_ladder,
    toric_map_lconfig,
    toric_map_marked,
    vertex_var,
)

from conftest import rectangle


# --- monomial algebra -------------------------------------------------------

def test_monomial_basics():
    m = Monomial.from_dict({("a",): 2, ("b",): 1})
    assert m.degree == 3
    assert str(m) == "a^2*b"
    assert Monomial.one().degree == 0
    with pytest.raises(ValueError):
        Monomial.from_dict({("a",): -1})


def test_monomial_drops_zero_exponents():
    assert Monomial.from_dict({("a",): 0}) == Monomial.one()


vars_strategy = st.dictionaries(
    st.sampled_from([("a",), ("b",), ("c",)]), st.integers(0, 4), max_size=3
)


@given(vars_strategy, vars_strategy)
def test_monomial_multiplication_adds_exponents(d1, d2):
    product = Monomial.from_dict(d1) * Monomial.from_dict(d2)
    for v in set(d1) | set(d2):
        assert product.as_dict().get(v, 0) == d1.get(v, 0) + d2.get(v, 0)


# --- inner minors -----------------------------------------------------------

def test_inner_minors_counts(frame3):
    assert len(inner_minors(Polyomino.from_cells([(0, 0), (1, 0)]))) == 3
    assert len(inner_minors(frame3)) == 20


def test_inner_minor_single_cell():
    (minor,) = inner_minors(Polyomino.from_cells([(0, 0)]))
    assert minor.plus == Monomial.from_dict({vertex_var((0, 0)): 1, vertex_var((1, 1)): 1})
    assert minor.minus == Monomial.from_dict({vertex_var((0, 1)): 1, vertex_var((1, 0)): 1})
    assert minor.vertex_support("+") == {(0, 0), (1, 1)}


# --- toric maps -------------------------------------------------------------

def test_lconfig_map_frame3(frame3):
    from polyprime.grid import HORIZONTAL, VERTICAL, maximal_edge_intervals

    lconf = next(l for l in find_l_configurations(frame3) if l.corner_cell == (0, 0))
    phi = toric_map_lconfig(frame3, lconf)
    assert phi.marked == set(cell_vertices((0, 0)))
    assert len(phi.target_variables) == 9  # 4 vertical + 4 horizontal + w
    image = phi.image((1, 1))
    assert image.as_dict()[W] == 1
    assert image.degree == 3
    # (1,1) lies on the x=1 vertical and y=1 horizontal maximal intervals.
    v_idx = next(
        i for i, iv in enumerate(maximal_edge_intervals(frame3, VERTICAL)) if iv.line == 1
    )
    h_idx = next(
        j for j, ih in enumerate(maximal_edge_intervals(frame3, HORIZONTAL)) if ih.line == 1
    )
    assert image.as_dict() == {("v", v_idx): 1, ("h", h_idx): 1, W: 1}


def test_unmarked_vertex_images_have_degree_two(frame3):
    phi = toric_map_marked(frame3, ())
    assert all(m.degree == 2 for _, m in phi.assignment)
    assert W not in phi.target_variables


def test_marked_must_be_vertices(frame3):
    with pytest.raises(ValueError):
        toric_map_marked(frame3, [(99, 99)])


def test_lconfig_must_belong(frame3, ring22):
    lconf = find_l_configurations(frame3)[0]
    with pytest.raises(ValueError):
        toric_map_lconfig(ring22, lconf)


def test_evaluate_kills_marked_cell_minor(frame3):
    lconf = next(l for l in find_l_configurations(frame3) if l.corner_cell == (0, 0))
    phi = toric_map_lconfig(frame3, lconf)
    corner_minor = next(
        g for g in inner_minors(frame3) if g.vertex_support("+") == {(0, 0), (1, 1)}
    )
    assert evaluate(phi, corner_minor).is_zero


def test_evaluate_multiplicative(frame3):
    phi = toric_map_marked(frame3, ())
    pts = sorted(vertices(frame3))[:4]
    m1 = Monomial.from_dict({vertex_var(pts[0]): 1, vertex_var(pts[1]): 2})
    m2 = Monomial.from_dict({vertex_var(pts[2]): 1})
    f = Binomial(m1, m2)
    images = phi.as_dict()

    def push(mono):
        out = Monomial.one()
        for v, e in mono.exponents:
            for _ in range(e):
                out = out * images[v[1]]
        return out

    assert evaluate(phi, f) == Binomial(push(m1), push(m2))


def test_evaluate_rejects_foreign_vertices(frame3):
    phi = toric_map_marked(frame3, ())
    foreign = Binomial(
        Monomial.from_dict({vertex_var((50, 50)): 1}), Monomial.one()
    )
    with pytest.raises(ValueError):
        evaluate(phi, foreign)


def test_containment_frame3_lconfig(frame3):
    phi = toric_map_lconfig(frame3, find_l_configurations(frame3)[0])
    assert check_containment(frame3, phi)


def test_containment_ring22_ladder(ring22):
    phi = toric_map_ladder(ring22, find_ladders(ring22, 3)[0])
    assert check_containment(ring22, phi)


def test_containment_fails_adversarial_marking(frame3):
    # Marking a single corner of the distinguished cell is not enough.
    phi = toric_map_marked(frame3, [(0, 0)])
    assert not check_containment(frame3, phi)


def test_unmarked_map_kills_minors_of_simple_shapes():
    for w, h in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]:
        shape = rectangle(w, h)
        assert check_containment(shape, toric_map_marked(shape, ()))
    l_shape = Polyomino.from_cells([(0, 0), (1, 0), (1, 1)])
    assert check_containment(l_shape, toric_map_marked(l_shape, ()))


# --- ladder map -------------------------------------------------------------

def test_ladder_map_ring22_marks_six_points(ring22):
    ladder = find_ladders(ring22, 3)[0]
    marked = ladder_marked_set(ladder, ring22.cells)
    assert marked == {(1, 5), (2, 5), (3, 5), (3, 6), (4, 5), (4, 6)}
    # Three lower-left corners of the middle reference block plus the three
    # remaining corners of the attached cell, in pose coordinates.
    assert len(marked) == 3 + 3


def test_ladder_map_rejects_short_ladders(ring22):
    two_step = find_ladders(ring22, 2)
    short = next(l for l in two_step if l.steps == 2)
    with pytest.raises(ValueError):
        ladder_marked_set(short, ring22.cells)


def test_ladder_map_rejects_foreign_ladder(frame3, ring22):
    ladder = find_ladders(ring22, 3)[0]
    with pytest.raises(ValueError):
        toric_map_ladder(frame3, ladder)


@pytest.mark.parametrize("name", TRANSFORM_NAMES)
def test_ladder_marked_set_equivariance(name, ring22):
    ladder = find_ladders(ring22, 3)[0]
    marked = ladder_marked_set(ladder, ring22.cells)
    image = transform_polyomino(name, ring22)
    image_ladder = find_ladders(image, 3)[0]
    image_marked = ladder_marked_set(image_ladder, image.cells)
    assert image_marked == {transform_point(name, q) for q in marked}
    assert check_containment(image, toric_map_ladder(image, image_ladder))


# --- export -----------------------------------------------------------------

def test_export_generators_format():
    single = Polyomino.from_cells([(0, 0)])
    phi = toric_map_marked(single, ())
    text = export_generators(
        tuple(vertex_var(v) for v in sorted(vertices(single))), inner_minors(single)
    )
    lines = text.strip().splitlines()
    assert lines[0] == "ring x_0_0 x_0_1 x_1_0 x_1_1"
    assert lines[1] == "x_0_0*x_1_1 - x_0_1*x_1_0"


def test_export_negative_coordinates():
    shape = Polyomino.from_cells([(-1, -1)])
    text = export_generators(
        tuple(vertex_var(v) for v in sorted(vertices(shape))), inner_minors(shape)
    )
    assert "x_m1_m1" in text
