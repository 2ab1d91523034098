"""Worked-scenario reports checked against closed forms and a replay oracle."""

import json

import pytest

from finlat.bitset import bits
from finlat.verify.scenarios import (
    GRID_SCHEMA,
    INTERO_SCHEMA,
    _grid_faces,
    _swap_even,
    _swap_odd,
    _universe,
    grid_scenario,
    grid_space,
    intero_edges,
    intero_scenario,
)

import oracles


# ---------------------------------------------------------------------------
# interleaving scenario


def test_intero_rejects_shallow_depth():
    with pytest.raises(ValueError):
        intero_scenario(1)


@pytest.mark.parametrize("depth", range(2, 8))
def test_intero_closed_forms(depth):
    report = intero_scenario(depth)
    assert report.ok
    # one point per eventually-constant sequence cut at the depth bound
    assert report.universe == 2 ** depth
    # one dyadic identification per word shorter than the cut
    assert report.edge_counts["plain"] == 2 ** (depth - 1) - 1
    # everything except the two constants collapses together
    assert report.main_class_size == 2 ** depth - 2
    assert report.oracle_merges == report.main_class_size - 1
    assert report.covered_depth == depth - 2
    assert report.missing == ()
    assert report.constant_degrees == (0, 0)
    assert report.extras == report.main_class_size - sum(
        1 for p in _universe(depth)
        if p[0] and len(p[0]) <= depth - 2
    )


def test_intero_small_depth_edge_counts_frozen():
    assert intero_scenario(2).edge_counts == {
        "plain": 1, "even-conj": 0, "odd-conj": 1}
    assert intero_scenario(3).edge_counts == {
        "plain": 3, "even-conj": 3, "odd-conj": 1}
    assert intero_scenario(4).edge_counts == {
        "plain": 7, "even-conj": 3, "odd-conj": 7}


@pytest.mark.parametrize("depth", (3, 5, 8))
def test_intero_union_find_replay(depth):
    points = _universe(depth)
    dsu = oracles.SimpleDSU(points)
    for pairs in intero_edges(depth).values():
        for a, b in pairs:
            dsu.union(a, b)
    report = intero_scenario(depth)
    assert len(dsu.component(((1,), 0))) == report.main_class_size
    for tail in (0, 1):
        assert dsu.component(((), tail)) == {((), tail)}


def test_reindexings_are_involutions():
    for p in _universe(8):
        assert _swap_even(_swap_even(p)) == p
        assert _swap_odd(_swap_odd(p)) == p


def test_swap_odd_fixes_first_coordinate():
    for p in _universe(7):
        q = _swap_odd(p)
        first = p[0][0] if p[0] else p[1]
        assert (q[0][0] if q[0] else q[1]) == first


def test_intero_serialization():
    report = intero_scenario(5)
    blob = report.to_structured()
    assert blob["schema"] == INTERO_SCHEMA
    assert blob["ok"] is True
    json.dumps(blob)  # plain data only
    text = report.to_text()
    assert "scenario: PASS" in text
    assert "depth 5" in text


# ---------------------------------------------------------------------------
# grid scenario


def test_grid_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        grid_scenario(0)


@pytest.mark.parametrize("k", (1, 2, 3))
def test_grid_face_count_closed_form(k):
    # (k+1)^2 vertices, 2k(k+1) edges, k^2-k squares, 3k triangle parts,
    # 2k segment faces
    report = grid_scenario(k)
    assert report.faces == 4 * k * k + 8 * k + 1
    assert report.ok


@pytest.mark.parametrize("k", (2, 3))
def test_grid_block_count_closed_forms(k):
    q = grid_scenario(k).quotients
    assert q["vertical"]["blocks"] == 4 * k + 1
    assert q["horizontal"]["blocks"] == 4 * k + 1
    # every line meets every crossing line, so the join crushes the whole
    # square part to one class and leaves the 2k segment faces alone
    assert q["join"]["blocks"] == 2 * k + 1
    assert q["vertical+diag"]["blocks"] == 2 * k + 1
    assert q["horizontal+diag"]["blocks"] == 2 * k + 1
    # refining the two diagonal-glued collapses pairs V(t,t) with S(t) and
    # the triangle parts with E(t), leaving (2k+1)^2 blocks
    assert q["meet+diag"]["blocks"] == (2 * k + 1) ** 2


FULL = {"weakly_open": True, "almost_open": True, "skeletal": True,
        "strongly_skeletal": True, "quotient_map": True, "closed_map": True}
JOIN = {"weakly_open": False, "almost_open": False, "skeletal": False,
        "strongly_skeletal": False, "quotient_map": True, "closed_map": True}
MEET = dict(FULL, closed_map=False)


@pytest.mark.parametrize("k", (1, 2, 3))
def test_grid_flag_patterns(k):
    q = grid_scenario(k).quotients
    for name in ("vertical", "horizontal", "vertical+diag", "horizontal+diag"):
        assert q[name]["flags"] == FULL, name
    assert q["join"]["flags"] == JOIN
    assert q["meet+diag"]["flags"] == MEET


def test_grid_assertion_table():
    report = grid_scenario(3)
    assert report.assertions == (
        ("vertical skeletal", True, True),
        ("horizontal skeletal", True, True),
        ("join skeletal", False, False),
        ("join almost_open", False, False),
    )
    small = grid_scenario(1)
    assert small.assertions == ()
    assert any("k = 1" in note for note in small.notes)


def test_grid_star_of_corner_vertex():
    space, names = grid_space(1)
    index = {name: i for i, name in enumerate(names)}
    got = {names[j] for j in bits(space.stars[index["V(0,0)"]])}
    assert got == {"V(0,0)", "H(0,0)", "W(0,0)", "D(0)", "TL(0)", "TH(0)",
                   "E(1)"}


def test_grid_opens_are_token_upsets():
    space, names = grid_space(1)
    tokens = [_grid_faces(1)[name] for name in names]
    for u in space.opens:
        for x in bits(u):
            for y in range(space.n):
                if tokens[x] <= tokens[y]:
                    assert u >> y & 1


def test_grid_stars_match_token_inclusion():
    space, names = grid_space(2)
    faces = _grid_faces(2)
    for i, a in enumerate(names):
        expected = {j for j, b in enumerate(names) if faces[a] <= faces[b]}
        assert set(bits(space.stars[i])) == expected


def test_grid_serialization():
    report = grid_scenario(2)
    blob = report.to_structured()
    assert blob["schema"] == GRID_SCHEMA
    json.dumps(blob)
    text = report.to_text()
    assert "scenario: PASS" in text
    assert "assert" in text
