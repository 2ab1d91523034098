from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finlat import (
    ConstraintSystem,
    canonical_form,
    classify_sublattice,
    contains,
    disjoint_complement,
    full_space,
    intersection,
    member,
    solution_basis,
    zero_ideal,
)
from finlat.funclat import (
    dim,
    from_constraints,
    infimum_is_zero,
    zero_space,
)

F = Fraction


def cs(n, zero_mask, rep, ratio, groups):
    return ConstraintSystem(
        n, zero_mask, tuple(rep), tuple(F(r) for r in ratio), tuple(groups)
    )


# --- canonical forms, frozen by hand -----------------------------------------

def test_canonical_form_ties_equal_coordinates():
    got = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    assert got == cs(3, 0, (0, 0, 2), (1, 1, 1), (0b011, 0b100))


def test_canonical_form_ignores_negative_ratios():
    # f(1) = -f(0) is not a lattice tie; the closure is the whole plane
    got = canonical_form(2, [(1, -1)])
    assert got == full_space(2)


def test_canonical_form_keeps_fractional_ratio():
    got = canonical_form(2, [(2, 1)])
    assert got == cs(2, 0, (0, 0), (1, F(1, 2)), (0b11,))


def test_canonical_form_of_nothing_is_zero():
    assert canonical_form(2, []) == zero_space(2)
    assert canonical_form(2, [(0, 0)]) == zero_space(2)


def test_contradictory_ties_zero_the_group():
    got = from_constraints(2, ties=[(1, 0, 2), (1, 0, 3)])
    assert got == cs(2, 0b11, (0, 1), (1, 1), ())
    with pytest.raises(ValueError):
        from_constraints(2, ties=[(1, 0, -1)])


# --- membership and derived systems -------------------------------------------

def test_member_checks_zeros_and_ratios():
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    assert member(sys3, (2, 2, 5))
    assert member(sys3, (0, 0, 0))
    assert not member(sys3, (1, 2, 0))
    half = canonical_form(2, [(2, 1)])
    assert member(half, (4, 2))
    assert not member(half, (4, 3))
    with pytest.raises(ValueError):
        member(half, (1, 2, 3))


def test_zero_ideal_kills_whole_groups():
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    assert zero_ideal(sys3, 0b001) == cs(3, 0b011, (0, 1, 2), (1, 1, 1), (0b100,))
    assert zero_ideal(full_space(3), 0b001) == cs(
        3, 0b001, (0, 1, 2), (1, 1, 1), (0b010, 0b100)
    )


def test_solution_basis_spans_one_vector_per_group():
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    assert solution_basis(sys3) == [(1, 1, 0), (0, 0, 1)]
    assert solution_basis(zero_space(2)) == []


def test_disjoint_complement_is_support_annihilator():
    full3 = full_space(3)
    assert disjoint_complement(full3, [(1, 0, 0)]) == zero_ideal(full3, 0b001)
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    got = disjoint_complement(sys3, [(1, 1, 0)])
    assert got == cs(3, 0b011, (0, 1, 2), (1, 1, 1), (0b100,))
    with pytest.raises(ValueError):
        disjoint_complement(sys3, [(1, 0, 0)])  # not a member


def test_intersection_and_containment():
    full3 = full_space(3)
    a = zero_ideal(full3, 0b001)
    b = zero_ideal(full3, 0b010)
    assert intersection(a, b) == zero_ideal(full3, 0b011)
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    assert contains(full3, sys3)
    assert not contains(sys3, full3)
    assert contains(sys3, zero_space(3))


# --- structure flags, frozen by hand ------------------------------------------

def flags_tuple(f):
    return (
        f.ideal, f.band, f.projection_band, f.order_dense,
        f.urysohn, f.weakly_urysohn, f.regular,
    )


def test_full_lattice_has_every_property():
    f = classify_sublattice(full_space(2), full_space(2))
    assert flags_tuple(f) == (True, True, True, True, True, True, True)


def test_zero_sublattice_is_a_degenerate_band():
    f = classify_sublattice(full_space(2), zero_space(2))
    assert flags_tuple(f) == (True, True, True, False, False, False, True)


def test_diagonal_is_no_ideal():
    diag = canonical_form(2, [(1, 1)])
    f = classify_sublattice(full_space(2), diag)
    assert flags_tuple(f) == (False, False, False, False, False, False, True)


def test_axis_is_a_projection_band():
    axis = canonical_form(2, [(1, 0)])
    f = classify_sublattice(full_space(2), axis)
    assert flags_tuple(f) == (True, True, True, False, False, False, True)


def test_tied_plane_in_three_space():
    sys3 = canonical_form(3, [(1, 1, 0), (0, 0, 2)])
    f = classify_sublattice(full_space(3), sys3)
    assert flags_tuple(f) == (False, False, False, False, False, False, True)


def test_order_density_is_relative_to_the_ambient():
    slice3 = zero_ideal(full_space(3), 0b100)
    f = classify_sublattice(slice3, slice3)
    assert f.order_dense and f.urysohn and f.ideal


def test_classify_requires_containment():
    axis = canonical_form(2, [(1, 0)])
    with pytest.raises(ValueError):
        classify_sublattice(axis, full_space(2))


# --- infimum helper --------------------------------------------------------------

def test_infimum_is_zero():
    assert infimum_is_zero(2, [(1, 0), (0, 1)])
    assert not infimum_is_zero(2, [(1, 1), (2, 1)])
    with pytest.raises(ValueError):
        infimum_is_zero(2, [(-1, 0)])
    with pytest.raises(ValueError):
        infimum_is_zero(2, [])


# --- closure invariance of the canonical system ----------------------------------

small_vec = st.tuples(*([st.integers(-2, 2)] * 3))


@settings(max_examples=150, deadline=None)
@given(st.lists(small_vec, min_size=1, max_size=3))
def test_canonical_form_absorbs_lattice_words(gens):
    base = canonical_form(3, gens)
    joined = [
        tuple(max(a, b) for a, b in zip(gens[0], gens[-1])),
        tuple(x + y for x, y in zip(gens[0], gens[-1])),
        tuple(abs(x) for x in gens[0]),
    ]
    assert canonical_form(3, list(gens) + joined) == base
    doubled = [tuple(2 * x for x in g) for g in gens]
    assert canonical_form(3, doubled + list(gens)) == base


@settings(max_examples=150, deadline=None)
@given(st.lists(small_vec, min_size=0, max_size=3))
def test_generators_are_members(gens):
    sys3 = canonical_form(3, gens)
    for g in gens:
        assert member(sys3, g)
    for v in solution_basis(sys3):
        assert member(sys3, v)
