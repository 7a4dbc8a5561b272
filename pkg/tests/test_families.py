from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from polyprime.classify import OpenPath, closed_path_certificate, trimino_certificate
from polyprime.families import (
    ConditionViolated,
    all_polyominoes,
    build_psc,
    build_rectangle_linked,
    canonical_form,
    certify_family,
    check_good_l_rectangle,
    enumerate_closed_paths,
    examine_shape,
    family_marked_set,
    verify_main_theorem,
)
from polyprime.grid import (
    Polyomino,
    TRANSFORM_NAMES,
    holes,
    is_simple,
    transform_polyomino,
    vertices,
)
from polyprime.ideals import check_containment, toric_map_marked
from polyprime.toric import Budget

from conftest import psc_parts, rectangle


# --- canonical forms ---------------------------------------------------------

def test_canonical_form_translation_invariant(frame3):
    assert canonical_form(frame3) == canonical_form(frame3.translate(7, -3))


@pytest.mark.parametrize("name", TRANSFORM_NAMES)
def test_canonical_form_d4_invariant(name, frame3, ring22):
    for shape in (frame3, ring22):
        assert canonical_form(transform_polyomino(name, shape)) == canonical_form(shape)


def test_canonical_form_idempotent(ring22):
    form = canonical_form(ring22)
    assert canonical_form(form.polyomino()) == form


@given(
    st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=8),
    st.sampled_from(TRANSFORM_NAMES),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
)
def test_canonical_form_random_orbit(cells, name, shift):
    from polyprime.grid import is_connected

    if not is_connected(cells):
        return
    shape = Polyomino.from_cells(cells)
    moved = transform_polyomino(name, shape).translate(*shift)
    assert canonical_form(moved) == canonical_form(shape)


def test_distinct_shapes_distinct_forms():
    a = Polyomino.from_cells([(0, 0), (1, 0), (2, 0)])
    b = Polyomino.from_cells([(0, 0), (1, 0), (1, 1)])
    assert canonical_form(a) != canonical_form(b)


# --- enumeration -------------------------------------------------------------

def test_enumeration_rank8_unique(frame3):
    shapes = [s for s in enumerate_closed_paths(8)]
    assert len(shapes) == 1
    assert canonical_form(shapes[0]) == canonical_form(frame3)


def test_enumeration_counts_to_14():
    from collections import Counter

    counts = Counter(s.rank for s in enumerate_closed_paths(14))
    assert counts == {8: 1, 10: 1, 12: 3, 14: 6}


def test_enumeration_emits_closed_paths_once():
    forms = [canonical_form(s) for s in enumerate_closed_paths(12)]
    assert len(forms) == len(set(forms))
    for shape in enumerate_closed_paths(12):
        assert closed_path_certificate(shape) is not None


def test_enumeration_rejects_small_bound():
    with pytest.raises(ValueError):
        list(enumerate_closed_paths(7))


def test_enumeration_odd_ranks_empty():
    # Cell cycles are even; an odd bound adds nothing beyond the even ranks.
    assert sorted(s.rank for s in enumerate_closed_paths(9)) == [8]
    assert sorted(s.rank for s in enumerate_closed_paths(11)) == [8, 10]


def test_enumeration_completeness_against_naive_oracle():
    naive = {
        canonical_form(p).cells
        for p in all_polyominoes(10)
        if closed_path_certificate(p) is not None
    }
    fast = {canonical_form(p).cells for p in enumerate_closed_paths(10)}
    assert fast == naive


def test_all_polyominoes_known_counts():
    from collections import Counter

    counts = Counter(p.rank for p in all_polyominoes(6))
    # Free polyomino counts: 1, 1, 2, 5, 12, 35.
    assert counts == {1: 1, 2: 1, 3: 2, 4: 5, 5: 12, 6: 35}


# --- family constructors -----------------------------------------------------

def test_build_psc_valid(psc_instance):
    shape, spec = psc_instance
    assert shape.rank == 17
    assert len(holes(shape)) == 1
    assert spec.kind == "psc"


def test_build_psc_shifted_hook_fails():
    s, c, t1, t2 = psc_parts()
    bad_t2 = trimino_certificate(
        Polyomino.from_cells([(x + 1, y) for x, y in t2.cells])
    )
    with pytest.raises(ConditionViolated):
        build_psc(s, c, t1, bad_t2)


def test_build_psc_overlapping_core_and_path_fails():
    s, c, t1, t2 = psc_parts()
    overlapping = Polyomino.from_cells([(1, 2), (1, 3)])  # on top of the path start
    with pytest.raises(ConditionViolated) as err:
        build_psc(overlapping, c, t1, t2)
    assert err.value.index == 2


def test_build_psc_requires_simple_core(frame3):
    s, c, t1, t2 = psc_parts()
    with pytest.raises(ConditionViolated) as err:
        build_psc(frame3.translate(20, 20), c, t1, t2)
    assert err.value.index == 1


def test_psc_hole_count_and_simple_after_path_removal(psc_instance):
    shape, spec = psc_instance
    assert len(holes(shape)) == 1
    path_cells = spec.part("c")
    trimmed = Polyomino.from_cells(set(shape.cells) - set(path_cells[2:4]))
    assert is_simple(trimmed)


def test_build_rectangle_linked_valid(good_l_instance):
    shape, spec = good_l_instance
    assert shape.rank == 10
    assert len(holes(shape)) == 1
    assert spec.kind == "good-l-rectangle"


def test_rectangle_too_narrow_rejected():
    r = rectangle(2, 1).translate(1, 1)  # m = 3 < 4
    p1 = OpenPath(((1, 2), (1, 3)))
    s = Polyomino.from_cells([(1, 4), (2, 4)])
    p2 = OpenPath(((3, 4), (3, 3), (3, 2)))
    with pytest.raises(ConditionViolated) as err:
        build_rectangle_linked(r, p1, s, p2)
    assert err.value.index == 1


def test_rectangle_right_edge_landing_allowed_for_l_variant():
    # A right-side landing edge is inside the L-variant's allowed border set.
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (1, 3)))
    s = Polyomino.from_cells([(1, 4), (2, 4)])
    p2 = OpenPath(((3, 4), (4, 4), (4, 3), (4, 2), (4, 1)))
    shape, spec = build_rectangle_linked(r, p1, s, p2, kind="good-l-rectangle")
    assert len(holes(shape)) == 1


def test_rectangle_bad_landing_edge_for_ladder_variant():
    # The ladder variant only allows top-edge landings; a right-side landing
    # must be rejected by the border-set clause.
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (0, 2), (0, 3), (-1, 3)))
    s = Polyomino.from_cells([(-1, 4)])
    p2 = OpenPath(((-1, 5), (0, 5), (1, 5), (2, 5), (3, 5), (4, 5), (4, 4), (4, 3), (4, 2), (4, 1)))
    with pytest.raises(ConditionViolated) as err:
        build_rectangle_linked(r, p1, s, p2, kind="ladder-rectangle")
    assert err.value.index == 6


def test_ladder_rectangle_valid(ladder_rect_instance):
    shape, spec = ladder_rect_instance
    assert shape.rank == 16
    assert len(holes(shape)) == 1


def test_good_l_rectangle_checker(good_l_instance):
    shape, spec = good_l_instance
    assert check_good_l_rectangle(shape, spec)


def test_good_l_rectangle_checker_accepts_taller_column(good_l_instance):
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (1, 3), (1, 4)))
    s = Polyomino.from_cells([(1, 5), (2, 5)])
    p2 = OpenPath(((3, 5), (3, 4), (3, 3), (3, 2)))
    taller, tspec = build_rectangle_linked(r, p1, s, p2, kind="good-l-rectangle")
    assert check_good_l_rectangle(taller, tspec)


def not_good_instance():
    # A U-shaped core extends both vertical reference lines across heights
    # where the first column has no cells, so the fill condition fails.
    r = Polyomino.from_cells([(1, 1), (2, 1), (3, 1)])
    p1 = OpenPath(((1, 2), (1, 3)))
    s = Polyomino.from_cells(
        [(0, 4), (1, 4), (2, 4), (0, 5), (2, 5), (0, 6), (2, 6)]
    )
    p2 = OpenPath(((3, 4), (3, 3), (3, 2)))
    return build_rectangle_linked(r, p1, s, p2, kind="good-l-rectangle")


def test_good_l_rectangle_checker_detects_missing_cells():
    shape, spec = not_good_instance()
    assert not check_good_l_rectangle(shape, spec)


def test_certify_not_good_instance_inconclusive():
    shape, spec = not_good_instance()
    verdict = certify_family(shape, spec, Budget(max_pairs=10))
    assert verdict.kind == "inconclusive"
    assert "not good" in verdict.reason


# --- family certification ----------------------------------------------------

def test_certify_psc_prime(psc_instance):
    shape, spec = psc_instance
    marked, proof = family_marked_set(shape, spec)
    assert proof == "lconfig-toric"
    assert check_containment(shape, toric_map_marked(shape, marked))
    verdict = certify_family(shape, spec, Budget(max_seconds=120))
    assert verdict.kind == "prime"


def test_certify_good_l_prime(good_l_instance):
    shape, spec = good_l_instance
    marked, proof = family_marked_set(shape, spec)
    n = max(y for _, y in spec.part("r")) + 1
    assert marked == {v for v in vertices(Polyomino.from_cells(spec.part("r"))) if v[0] <= 2 and v[1] <= n}
    verdict = certify_family(shape, spec, Budget(max_seconds=120))
    assert verdict.kind == "prime" and verdict.equality == "full"


def test_certify_ladder_rect_prime(ladder_rect_instance):
    shape, spec = ladder_rect_instance
    marked, proof = family_marked_set(shape, spec)
    # The corner square of the rectangle's vertex set plus the lower-left
    # corners of the opening block's later cells.
    assert marked == {(1, 1), (2, 1), (1, 2), (2, 2), (0, 2)}
    verdict = certify_family(shape, spec, Budget(max_seconds=120))
    assert verdict.kind == "prime" and verdict.equality == "full"


def test_certify_psc_without_features_inconclusive():
    # Shorter path with no L-configuration and no 3-step ladder.
    s = Polyomino.from_cells([(-1, 0), (-1, 1)])
    c = OpenPath(((1, 2), (1, 3), (0, 3), (-1, 3), (-2, 3), (-3, 3), (-3, 2)))
    t1 = trimino_certificate(Polyomino.from_cells([(0, 0), (1, 0), (1, 1)]))
    t2 = trimino_certificate(Polyomino.from_cells([(-2, 0), (-3, 0), (-3, 1)]))
    shape, spec = build_psc(s, c, t1, t2)
    verdict = certify_family(shape, spec, Budget(max_pairs=10))
    assert verdict.kind == "inconclusive"
    assert "neither" in verdict.reason


# --- harness ------------------------------------------------------------------

def test_examine_shape_frame3(frame3):
    record = examine_shape(tuple(sorted(frame3.cells)), Budget(), certify=True)
    assert record.rank == 8
    assert record.l_configurations == 4
    assert not record.zigzag
    assert record.block3 and record.hole_count == 1 and not record.simple
    assert record.verdict["kind"] == "prime"


def test_verify_main_theorem_rank10_structural():
    report = verify_main_theorem(10, certify=False)
    assert report.summary()["shapes"] == 2
    assert report.summary()["counterexamples"] == 0
    assert report.per_rank_counts() == {8: 1, 10: 1}
    assert report.minimal_zigzag_rank() is None


def test_verify_main_theorem_rank12_certified():
    report = verify_main_theorem(12, Budget(max_pairs=200_000))
    summary = report.summary()
    assert summary["shapes"] == 5
    assert summary["counterexamples"] == 0
    assert all(r.verdict["kind"] == "prime" for r in report.records)


def test_verify_main_theorem_parallel_matches_serial():
    serial = verify_main_theorem(12, certify=False)
    parallel = verify_main_theorem(12, certify=False, jobs=2)
    assert serial.to_json_lines() == parallel.to_json_lines()


def test_verify_report_json_lines_shape():
    report = verify_main_theorem(10, certify=False)
    lines = report.to_json_lines().strip().splitlines()
    assert len(lines) == 3  # two shapes + summary
    for line in lines[:-1]:
        record = json.loads(line)
        assert set(record) >= {"cells", "rank", "zigzag", "verdict"}
    assert "summary" in json.loads(lines[-1])


def test_verify_cache_round_trip(tmp_path):
    first = verify_main_theorem(10, certify=False, cache_dir=str(tmp_path))
    assert any(tmp_path.iterdir())
    second = verify_main_theorem(10, certify=False, cache_dir=str(tmp_path))
    assert first.to_json_lines() == second.to_json_lines()


def test_verify_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYPRIME_CACHE", str(tmp_path / "envcache"))
    verify_main_theorem(10, certify=False)
    assert any((tmp_path / "envcache").iterdir())


def test_rectangle_linked_removal_leaves_simple(good_l_instance, ladder_rect_instance):
    # Dropping the rectangle's two left cell columns plus a prefix of the
    # first path opens the ring.
    for shape, spec in (good_l_instance, ladder_rect_instance):
        r_cells = spec.part("r")
        n = max(y for _, y in r_cells) + 1
        removed = {(1, k) for k in range(1, n)} | {(2, k) for k in range(1, n)}
        removed |= set(spec.part("p1")[:1])
        trimmed = Polyomino.from_cells(set(shape.cells) - removed)
        assert is_simple(trimmed)


def test_minimal_zigzag_rank_is_16():
    report = verify_main_theorem(16, certify=False)
    assert report.minimal_zigzag_rank() == 16
    zig = [r for r in report.records if r.zigzag]
    assert len(zig) == 1
    assert zig[0].l_configurations == 0 and zig[0].ladders3 == 0
