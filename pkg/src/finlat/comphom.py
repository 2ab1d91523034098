"""Lattice homomorphisms between function lattices and composition certificates.

A linear map between finite-dimensional function lattices preserves the
lattice operations exactly when its matrix is nonnegative with at most
one nonzero entry per row.  The constructor checks that structural test
and replays the definitional |Tf| = T|f| oracle on sign vectors, so a
HomMatrix is a certified homomorphism.

certify_composition connects map classification to sublattice structure:
the topological class of a continuous map decides order density,
Urysohn richness, order continuity, and regularity of the pulled-back
sublattice, and on discrete spaces the lattice side is recomputed
directly and compared.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bitset import bit, bits
from .contmap import classify_map
from .funclat import (
    ConstraintSystem,
    canonical_form,
    classify_sublattice,
    contains,
    disjoint_complement,
    full_space,
    solution_basis,
    zero_ideal,
)

SIGN_SWEEP_LIMIT = 8
PROBE_LIMIT = 64


class NotHomomorphism(ValueError):
    """Raised for matrices that fail |Tf| = T|f|; carries a witness f."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _to_rows(matrix):
    rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    if not rows:
        raise ValueError("matrix needs at least one row")
    n = len(rows[0])
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be rectangular and nonempty")
    return rows


def _matvec(rows, f):
    return tuple(sum(c * v for c, v in zip(row, f)) for row in rows)


def _absolute(vec):
    return tuple(abs(v) for v in vec)


def _structural_test(rows):
    for row in rows:
        live = [v for v in row if v != 0]
        if any(v < 0 for v in live) or len(live) > 1:
            return False
    return True


def _probe_vectors(n):
    """Sign vectors sufficient to expose any non-homomorphism.

    A unit vector catches a negative entry; a difference of two units
    catches a row with two nonzero entries once negatives are ruled out.
    """
    for j in range(n):
        vec = [0] * n
        vec[j] = 1
        yield tuple(vec)
    for a in range(n):
        for b in range(a + 1, n):
            vec = [0] * n
            vec[a] = 1
            vec[b] = -1
            yield tuple(vec)


def _definitional_test(rows, exhaustive):
    n = len(rows[0])
    if exhaustive:
        sweep = product((-1, 0, 1), repeat=n)
    else:
        sweep = _probe_vectors(n)
    for f in sweep:
        if _absolute(_matvec(rows, f)) != _matvec(rows, _absolute(f)):
            return False, f
    return True, None


def is_homomorphism(matrix):
    """Structural row-monomial test, cross-checked against |Tf| = T|f|."""
    rows = _to_rows(matrix)
    n = len(rows[0])
    structural = _structural_test(rows)
    definitional, _ = _definitional_test(rows, exhaustive=n <= SIGN_SWEEP_LIMIT)
    assert structural == definitional
    return structural


class HomMatrix:
    """A certified lattice homomorphism from n-space to m-space."""

    __slots__ = ("m", "n", "entries")

    def __init__(self, matrix):
        rows = _to_rows(matrix)
        self.entries = rows
        self.m = len(rows)
        self.n = len(rows[0])
        if not _structural_test(rows):
            ok, witness = self._cheapest_failure(rows)
            raise NotHomomorphism(
                "matrix does not preserve absolute values", witness=witness
            )
        if self.n <= SIGN_SWEEP_LIMIT:
            ok, _ = _definitional_test(rows, exhaustive=True)
            assert ok
        elif self.n <= PROBE_LIMIT:
            ok, _ = _definitional_test(rows, exhaustive=False)
            assert ok

    @staticmethod
    def _cheapest_failure(rows):
        return _definitional_test(rows, exhaustive=False)

    def apply(self, f):
        vec = tuple(Fraction(v) for v in f)
        if len(vec) != self.n:
            raise ValueError("vector dimension mismatch")
        return _matvec(self.entries, vec)

    def __eq__(self, other):
        return isinstance(other, HomMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "HomMatrix(%r)" % (self.entries,)


def normal_form(t):
    """Split T into a weight vector and a partial coordinate map.

    Row i reads T(f)[i] = weights[i] * f(phi[i]); zero rows get weight 0
    and an undefined (None) coordinate.
    """
    weights = []
    phi = []
    for row in t.entries:
        col = next((j for j, v in enumerate(row) if v != 0), None)
        if col is None:
            weights.append(Fraction(0))
            phi.append(None)
        else:
            weights.append(row[col])
            phi.append(col)
    return tuple(weights), tuple(phi)


def from_normal_form(weights, phi, n):
    rows = []
    for w, col in zip(weights, phi):
        row = [Fraction(0)] * n
        if col is not None:
            row[col] = Fraction(w)
        rows.append(row)
    return HomMatrix(rows)


def hom_from_map(m):
    """The composition operator f -> f(map(.)) as a matrix."""
    rows = []
    for x in range(m.domain.n):
        row = [Fraction(0)] * m.codomain.n
        row[m.table[x]] = Fraction(1)
        rows.append(row)
    return HomMatrix(rows)


def kernel(t):
    """Ker T as a constraint system over the domain coordinates."""
    used = 0
    for row in t.entries:
        for j, v in enumerate(row):
            if v != 0:
                used |= bit(j)
    return zero_ideal(full_space(t.n), used)


def image_lattice(t):
    """TF as a constraint system over the codomain coordinates."""
    columns = []
    for j in range(t.n):
        unit = [Fraction(0)] * t.n
        unit[j] = Fraction(1)
        columns.append(t.apply(unit))
    return canonical_form(t.m, columns)


def _probe_positives(t):
    """A few nonnegative domain vectors exercising every coordinate."""
    vecs = [tuple(Fraction(1) for _ in range(t.n))]
    for j in range(t.n):
        unit = [Fraction(0)] * t.n
        unit[j] = Fraction(1)
        vecs.append(tuple(unit))
        ramp = [Fraction(i + 1) for i in range(t.n)]
        ramp[j] = Fraction(0)
        vecs.append(tuple(ramp))
    return vecs


def _chain_continuity(t):
    """Chains v/2^k decrease to zero; their images must do the same.

    The image chain (Tv)/2^k decreases with infimum zero exactly when
    Tv is nonnegative, so the test reduces to positivity on a probe
    family that spans the positive cone.
    """
    for v in _probe_positives(t):
        if any(c < 0 for c in t.apply(v)):
            return False
    return True


def _directed_sup_preservation(t):
    """T must carry sups of upward-directed families to sups of images."""
    probes = _probe_positives(t)
    families = []
    for a in probes:
        for b in probes:
            top = tuple(max(x, y) for x, y in zip(a, b))
            families.append((a, b, top))
    if t.n <= 12:
        # indicators of subsets ordered by inclusion, sup = all-ones
        chain = [
            tuple(Fraction(1 if a >> j & 1 else 0) for j in range(t.n))
            for a in range(1 << t.n)
        ]
        families.append(tuple(chain))
    for family in families:
        sup_dom = tuple(max(vals) for vals in zip(*family))
        images = [t.apply(f) for f in family]
        sup_img = tuple(max(vals) for vals in zip(*images))
        if t.apply(sup_dom) != sup_img:
            return False
    return True


def _kernel_is_band(t):
    dom = full_space(t.n)
    return classify_sublattice(dom, kernel(t)).band


def _band_preimages(t):
    """T^{-1} of every band of the codomain must be a band in the domain.

    The bands of an m-dimensional function lattice are exactly the 2^m
    coordinate subspaces.
    """
    dom = full_space(t.n)
    for a in range(1 << t.m):
        pulled = 0
        for i in bits(a):
            for j, v in enumerate(t.entries[i]):
                if v != 0:
                    pulled |= bit(j)
        pre = zero_ideal(dom, pulled)
        if not classify_sublattice(dom, pre).band:
            return False
    return True


def _image_double_complements(t):
    """T(G^dd) must land inside (TG)^dd for every coordinate ideal G."""
    dom = full_space(t.n)
    cod = full_space(t.m)
    for a in range(1 << t.n):
        g = zero_ideal(dom, a)
        gd = disjoint_complement(dom, solution_basis(g))
        gdd = disjoint_complement(dom, solution_basis(gd))
        tg = canonical_form(t.m, [t.apply(v) for v in solution_basis(g)])
        tgd = disjoint_complement(cod, solution_basis(tg))
        tgdd = disjoint_complement(cod, solution_basis(tgd))
        t_of_gdd = canonical_form(t.m, [t.apply(v) for v in solution_basis(gdd)])
        if not contains(tgdd, t_of_gdd):
            return False
    return True


HOC_CONDITIONS = {
    "chain-continuity": _chain_continuity,
    "directed-sups": _directed_sup_preservation,
    "kernel-band": _kernel_is_band,
    "band-preimages": _band_preimages,
    "image-dd": _image_double_complements,
}


def hoc_conditions(t):
    """Evaluate the five order-continuity conditions independently."""
    return {name: check(t) for name, check in HOC_CONDITIONS.items()}


@dataclass(frozen=True)
class CertificateReport:
    """Topological certificates and the lattice conclusions they license.

    certificates holds the four map-class verdicts; conclusions the
    lattice-side statements they decide.  On discrete spaces direct
    carries independently computed lattice verdicts, and each must
    equal the corresponding certificate.
    """

    certificates: dict
    conclusions: dict
    direct: dict
    discrete: bool

    def __post_init__(self):
        if self.discrete:
            for key, value in self.direct.items():
                assert self.conclusions[key] == value


def _pullback_lattice(phi, e):
    compose = [
        tuple(v[phi.table[x]] for x in range(phi.domain.n))
        for v in solution_basis(e)
    ]
    return canonical_form(phi.domain.n, compose)


def certify_composition(phi, e):
    y = phi.codomain
    x = phi.domain
    if e.n != y.n:
        raise ValueError("lattice dimension must match the codomain points")
    if y.is_discrete():
        eflags = classify_sublattice(full_space(y.n), e)
        if not (eflags.order_dense and eflags.urysohn):
            raise ValueError("lattice must be order dense and Urysohn")
    else:
        if e != full_space(y.n):
            raise ValueError(
                "non-discrete codomain: only the full lattice is supported"
            )
    cls = classify_map(phi)
    certificates = {
        "irreducible": cls.irreducible,
        "embedding": cls.embedding,
        "almost_open": cls.almost_open,
        "skeletal": cls.skeletal,
    }
    conclusions = {
        "image_order_dense": cls.irreducible,
        "image_weakly_urysohn": cls.irreducible,
        "image_urysohn": cls.embedding,
        "order_continuous": cls.almost_open,
        "image_regular": cls.skeletal,
    }
    discrete = x.is_discrete() and y.is_discrete()
    direct = {}
    if discrete:
        pulled = _pullback_lattice(phi, e)
        dflags = classify_sublattice(full_space(x.n), pulled)
        operator_oc = all(hoc_conditions(hom_from_map(phi)).values())
        direct = {
            "image_order_dense": dflags.order_dense,
            "image_weakly_urysohn": dflags.weakly_urysohn,
            "image_urysohn": dflags.urysohn,
            "order_continuous": operator_oc,
            "image_regular": dflags.regular,
        }
    return CertificateReport(
        certificates=certificates,
        conclusions=conclusions,
        direct=direct,
        discrete=discrete,
    )
