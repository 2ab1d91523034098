from fractions import Fraction
from itertools import product

import pytest

import oracles
from finlat import (
    CertificateReport,
    HomMatrix,
    NotHomomorphism,
    certify_composition,
    discrete_space,
    full_space,
    hoc_conditions,
    hom_from_map,
    is_homomorphism,
    make_map,
    make_space,
    canonical_form,
    zero_ideal,
)
from finlat.comphom import from_normal_form, image_lattice, kernel, normal_form

F = Fraction


def small_matrices(m, n, entries=(-1, 0, 1)):
    for flat in product(entries, repeat=m * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(m)]


# --- the sign-sweep oracle comes first ---------------------------------------

@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_test_agrees_with_sign_oracle(m, n):
    for rows in small_matrices(m, n):
        frac = oracles.frac_rows(rows)
        want = oracles.hom_by_signs(frac)
        assert oracles.row_monomial_nonneg(frac) == want
        assert is_homomorphism(rows) == want


def test_constructor_verdicts():
    t = HomMatrix([["2", 0, 0], [0, "1/3", 0]])
    assert (t.m, t.n) == (2, 3)
    with pytest.raises(NotHomomorphism) as err:
        HomMatrix([[1, 1]])
    assert err.value.witness is not None
    f = err.value.witness
    # the witness really violates |Tf| = T|f|
    frac = oracles.frac_rows([[1, 1]])
    tf = [sum(r[j] * f[j] for j in range(2)) for r in frac]
    t_abs = [sum(r[j] * abs(f[j]) for j in range(2)) for r in frac]
    assert [abs(v) for v in tf] != t_abs
    with pytest.raises(NotHomomorphism):
        HomMatrix([[-1, 0]])


def test_normal_form_round_trip():
    t = HomMatrix([["2", 0, 0], [0, "1/3", 0], [0, 0, 0]])
    weights, phi = normal_form(t)
    assert weights == (F(2), F(1, 3), F(0))
    assert phi == (0, 1, None)
    assert from_normal_form(weights, phi, 3) == t


def test_composition_operator_of_a_map():
    sierp = make_space(2, [0, 0b10, 0b11])
    ident = make_map(discrete_space(2), sierp, [0, 1])
    assert hom_from_map(ident).entries == ((F(1), F(0)), (F(0), F(1)))
    const = make_map(discrete_space(2), discrete_space(2), [0, 0])
    assert hom_from_map(const).entries == ((F(1), F(0)), (F(1), F(0)))


def test_kernel_and_image_lattice():
    t = HomMatrix([["2", 0, 0], [0, "1/3", 0]])
    assert kernel(t) == zero_ideal(full_space(3), 0b011)
    assert image_lattice(t) == full_space(2)
    dup = HomMatrix([[1, 0], [1, 0]])
    assert image_lattice(dup) == canonical_form(2, [(1, 1)])
    assert kernel(dup) == zero_ideal(full_space(2), 0b01)


def test_conditions_hold_on_certified_operators():
    for rows in ([[2, 0], [0, 3]], [[0, 0], [1, 0]], [[0, 0]]):
        conds = hoc_conditions(HomMatrix(rows))
        assert set(conds) == {
            "chain-continuity", "directed-sups", "kernel-band",
            "band-preimages", "image-dd",
        }
        assert all(conds.values())


# --- certificates vs direct verdicts -------------------------------------------

def test_certify_discrete_cross_check_runs():
    const = make_map(discrete_space(2), discrete_space(2), [0, 0])
    report = certify_composition(const, full_space(2))
    assert report.discrete
    assert set(report.conclusions) == {
        "image_order_dense", "image_weakly_urysohn", "image_urysohn",
        "order_continuous", "image_regular",
    }
    assert report.direct == report.conclusions
    assert report.certificates["skeletal"]
    assert not report.certificates["embedding"]


def test_certify_non_discrete_needs_full_lattice():
    sierp = make_space(2, [0, 0b10, 0b11])
    m = make_map(discrete_space(2), sierp, [0, 1])
    assert not certify_composition(m, full_space(2)).discrete
    with pytest.raises(ValueError):
        certify_composition(m, canonical_form(2, [(1, 0)]))


def test_certify_discrete_needs_dense_urysohn_lattice():
    const = make_map(discrete_space(2), discrete_space(2), [0, 0])
    with pytest.raises(ValueError):
        certify_composition(const, canonical_form(2, [(1, 0)]))
    with pytest.raises(ValueError):
        certify_composition(const, full_space(3))  # dimension mismatch


def test_report_guard_rejects_disagreement():
    with pytest.raises(AssertionError):
        CertificateReport(
            certificates={},
            conclusions={"order_continuous": True},
            direct={"order_continuous": False},
            discrete=True,
        )
