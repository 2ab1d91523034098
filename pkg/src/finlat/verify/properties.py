"""Property suite: every decision routine re-checked against plain references.

The suite never trusts the star-based machinery it is auditing.  Each map
class is recomputed here straight from the opens family (interior = union of
open subsets, closure by complement), each relation condition from the block
masks, each lattice identity from a second computation path.  Instances come
from two streams per input kind: an exhaustive stream over all small cases in
a fixed order, then a seeded sampled stream; the first failing instance in
stream order becomes the witness and can be replayed from its record text.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
import math
import random
import time

from ..bitset import bit, bits, full_mask
from .. import comphom
from .. import contmap
from .. import equivrel
from .. import funclat
from .. import latclosure
from .. import records
from ..contmap import ContMap, NotContinuous
from ..finspace import discrete_space, enumerate_topologies, from_stars
from .mutations import MUTATIONS, apply_mutation
from .report import PropertyResult, SuiteReport

MAX_POINTS_LIMIT = 4
MAX_LATTICE_DIM = 5


# ---------------------------------------------------------------------------
# references computed from the opens family only

def _int_in(opens, a):
    out = 0
    for o in opens:
        if not o & ~a:
            out |= o
    return out


def _cl_in(opens, universe, a):
    return universe & ~_int_in(opens, universe & ~a)


def _image_of(table, a):
    out = 0
    for x in bits(a):
        out |= bit(table[x])
    return out


def _preimage_of(table, b):
    out = 0
    for x, y in enumerate(table):
        if b & bit(y):
            out |= bit(x)
    return out


def _fiber_sat(table, n, a):
    hit = set()
    for x in bits(a):
        hit.add(table[x])
    out = 0
    for x in range(n):
        if table[x] in hit:
            out |= bit(x)
    return out


class _MapRefs:
    """Lazy per-map reference values, all derived from the opens families."""

    def __init__(self, m):
        self.m = m
        self.dom_opens = m.domain.opens
        self.cod_opens = m.codomain.opens
        self.img = _image_of(m.table, m.domain.full)
        self.rel_opens = tuple(sorted({o & self.img for o in self.cod_opens}))
        self._cache = {}

    def get(self, name):
        if name not in self._cache:
            self._cache[name] = getattr(self, "_" + name)()
        return self._cache[name]

    def _weakly_open(self):
        t = self.m.table
        return all(
            _int_in(self.cod_opens, _image_of(t, u))
            for u in self.dom_opens if u
        )

    def _almost_open(self):
        t = self.m.table
        cod_full = self.m.codomain.full
        return all(
            _int_in(self.cod_opens, _cl_in(self.cod_opens, cod_full, _image_of(t, u)))
            for u in self.dom_opens if u
        )

    def _strongly_skeletal(self):
        t = self.m.table
        return all(
            _int_in(self.rel_opens, _image_of(t, u))
            for u in self.dom_opens if u
        )

    def _skeletal(self):
        t = self.m.table
        return all(
            _int_in(self.rel_opens, _cl_in(self.rel_opens, self.img, _image_of(t, u)))
            for u in self.dom_opens if u
        )

    def _irreducible(self):
        # no proper closed subset of the domain has a dense image in the image
        m = self.m
        dom_full = m.domain.full
        open_set = frozenset(self.dom_opens)
        for a in range(dom_full + 1):
            if a == dom_full or (dom_full & ~a) not in open_set:
                continue
            if _cl_in(self.rel_opens, self.img, _image_of(m.table, a)) == self.img:
                return False
        return True

    def _weakly_injective(self):
        m = self.m
        n = m.domain.n
        for u in self.dom_opens:
            if not u:
                continue
            if not any(
                w and not w & ~u and _fiber_sat(m.table, n, w) == w
                for w in self.dom_opens
            ):
                return False
        return True

    def _almost_injective(self):
        m = self.m
        counts = {}
        for y in m.table:
            counts[y] = counts.get(y, 0) + 1
        solo = 0
        for x, y in enumerate(m.table):
            if counts[y] == 1:
                solo |= bit(x)
        return all(not u or u & solo for u in self.dom_opens)


# ---------------------------------------------------------------------------
# per-instance checks; each returns (failure details, n/a count)

def _bucket_of(pid):
    if pid.startswith("mirr-"):
        return "P-mirr"
    if pid.startswith("ao-"):
        return "P-ao"
    if pid.startswith(("wo-", "sk-", "ssk-")):
        return "P-wo"
    if pid.startswith("irr-"):
        return "P-irr"
    if pid.startswith(("wi-", "ai-")):
        return "P-wi"
    return None


def _procedure_check(prop_id):
    def check(m):
        refs = _MapRefs(m)
        failures = []
        na = 0
        for pid in sorted(contmap.PROCEDURES):
            if _bucket_of(pid) != prop_id:
                continue
            proc = contmap.PROCEDURES[pid]
            got = contmap.decide_by(m, proc.target, pid)
            if got is None:
                na += 1
                continue
            ref = refs.get(proc.target)
            if proc.kind == "iff":
                ok = got == ref
            elif proc.kind == "necessary":
                ok = got or not ref
            else:  # sufficient
                ok = ref or not got
            if not ok:
                failures.append({
                    "procedure": pid,
                    "target": proc.target,
                    "kind": proc.kind,
                    "procedure_value": got,
                    "reference_value": ref,
                })
        return failures, na

    return check


def _check_saturation(m):
    full = m.domain.full
    n = m.domain.n
    for a in range(full + 1):
        s = contmap.saturation(m, a)
        ref = _fiber_sat(m.table, n, a)
        if s != ref:
            return [{"check": "fiber-scan", "subset": a, "got": s, "expected": ref}], 0
        if a & ~s:
            return [{"check": "extensive", "subset": a, "got": s}], 0
        if contmap.saturation(m, s) != s:
            return [{"check": "idempotent", "subset": a, "got": s}], 0
        c = full & ~a
        if contmap.saturation(m, full) != (s | contmap.saturation(m, c)):
            return [{"check": "union-additive", "subset": a}], 0
    return [], 0


def _check_hierarchy(m):
    try:
        flags = contmap.classify_map(m).flags()
    except AssertionError:
        return [{"check": "classification-consistency"}], 0
    t = m.table
    dom_opens = m.domain.opens
    cod_opens = m.codomain.opens
    open_set = frozenset(cod_opens)
    dom_open_set = frozenset(dom_opens)
    cod_full = m.codomain.full
    ref_open = all(_image_of(t, u) in open_set for u in dom_opens)
    ref_closed = True
    for u in dom_opens:
        img = _image_of(t, m.domain.full & ~u)
        if _cl_in(cod_opens, cod_full, img) != img:
            ref_closed = False
            break
    ref_injective = len(set(t)) == m.domain.n
    ref_surjective = _image_of(t, m.domain.full) == cod_full
    ref_embedding = ref_injective and dom_open_set == {
        _preimage_of(t, o) for o in cod_opens
    }
    ref_quotient = ref_surjective and open_set == {
        v for v in range(cod_full + 1) if _preimage_of(t, v) in dom_open_set
    }
    failures = []
    for name, ref in (
        ("open_map", ref_open),
        ("closed_map", ref_closed),
        ("injective", ref_injective),
        ("surjective", ref_surjective),
        ("embedding", ref_embedding),
        ("quotient_map", ref_quotient),
    ):
        if flags[name] != ref:
            failures.append({"check": name, "flag": flags[name], "reference_value": ref})
    return failures, 0


def _check_relation(rel):
    space = rel.space
    full = space.full
    opens = space.opens
    for a in range(full + 1):
        s = equivrel.saturate(rel, a)
        ref = 0
        for x in bits(a):
            ref |= rel.block_of(x)
        if s != ref or a & ~s or equivrel.saturate(rel, s) != s:
            return [{"check": "saturation", "subset": a, "got": s, "expected": ref}], 0
    closed_scan = True
    for a in range(full + 1):
        if _int_in(opens, full & ~a) != full & ~a:
            continue  # a is not closed
        sat = equivrel.saturate(rel, a)
        if _int_in(opens, full & ~sat) != full & ~sat:
            closed_scan = False
            break
    lib = equivrel.is_closed_relation(rel)
    if lib != closed_scan:
        return [{"check": "closed-relation", "got": lib, "expected": closed_scan}], 0
    return [], 0


def _check_quotient(rel):
    space = rel.space
    qspace, proj = equivrel.quotient(rel)
    failures = []
    if tuple(proj.table) != rel.block_index:
        failures.append({"check": "projection-table"})
    q_open_set = frozenset(qspace.opens)
    dom_open_set = frozenset(space.opens)
    for v in range(qspace.full + 1):
        pre = 0
        for i in bits(v):
            pre |= rel.blocks[i]
        if (v in q_open_set) != (pre in dom_open_set):
            failures.append({"check": "final-topology", "subset": v,
                             "open_downstairs": pre in dom_open_set})
            break
    if not contmap.quotient_map_stars(proj):
        failures.append({"check": "quotient-routine"})
    return failures, 0


def _check_block_conditions(rel):
    space = rel.space
    opens = space.opens
    open_set = frozenset(opens)
    full = space.full
    failures = []
    na = 0
    got_i = equivrel.eqq_condition_i(rel)
    got_ii = equivrel.eqq_condition_ii(rel)
    ref_i = True
    for u in opens:
        if not u:
            continue
        touched = [b for b in rel.blocks if b & u]
        found = False
        for pick in range(1, 1 << len(touched)):
            sel = 0
            for i in bits(pick):
                sel |= touched[i]
            if sel in open_set:
                found = True
                break
        if not found:
            ref_i = False
            break
    ref_ii = True
    for a in range(full + 1):
        if a == full or _int_in(opens, full & ~a) != full & ~a:
            continue
        if equivrel.saturate(rel, a) == full:
            ref_ii = False
            break
    if got_i != ref_i:
        failures.append({"check": "open-saturation-condition", "got": got_i,
                         "reference_value": ref_i})
    if got_ii != ref_ii:
        failures.append({"check": "closed-saturation-condition", "got": got_ii,
                         "reference_value": ref_ii})
    if space.is_discrete():
        indicators = [
            tuple(1 if b >> x & 1 else 0 for x in range(space.n))
            for b in rel.blocks
        ]
        pulled = funclat.canonical_form(space.n, indicators)
        lat = funclat.classify_sublattice(funclat.full_space(space.n), pulled)
        identity = all(b.bit_count() == 1 for b in rel.blocks)
        if lat.regular != got_i:
            failures.append({"check": "lattice-regular-bridge",
                             "lattice": lat.regular, "condition": got_i})
        if lat.order_dense != got_ii or got_ii != identity:
            failures.append({"check": "lattice-density-bridge",
                             "lattice": lat.order_dense, "condition": got_ii,
                             "identity_relation": identity})
    else:
        na += 1
    return failures, na


def _check_disjoint_identities(instance):
    n, gens = instance
    return _disjoint_identities_of(funclat.canonical_form(n, gens))


def _disjoint_identities_of(outer):
    n = outer.n
    slices = [outer]
    seen = {outer}
    for a in range(1, 1 << n):
        e = funclat.zero_ideal(outer, a)
        if e not in seen:
            seen.add(e)
            slices.append(e)
    for e in slices:
        basis = funclat.solution_basis(e)
        tried = set()
        for pick in range(1 << len(basis)):
            gvecs = tuple(basis[i] for i in bits(pick))
            g = funclat.canonical_form(n, gvecs)
            if g in tried:
                continue
            tried.add(g)
            gb = funclat.solution_basis(g)
            gd_local = funclat.disjoint_complement(e, gb)
            gd_outer = funclat.disjoint_complement(outer, gb)
            if gd_local != funclat.intersection(gd_outer, e):
                return [{"identity": "complement-localizes",
                         "slice_zero": e.zero_mask, "pick": pick}], 0
            gdd_local = funclat.disjoint_complement(e, funclat.solution_basis(gd_local))
            gdd_outer = funclat.disjoint_complement(outer, funclat.solution_basis(gd_outer))
            restricted = funclat.intersection(gdd_outer, e)
            if not funclat.contains(gdd_local, restricted):
                return [{"identity": "double-complement-monotone",
                         "slice_zero": e.zero_mask, "pick": pick}], 0
            if funclat.classify_sublattice(e, g).band and g != restricted:
                return [{"identity": "band-restriction",
                         "slice_zero": e.zero_mask, "pick": pick}], 0
    return [], 0


def _check_ideal_intersection(instance):
    n, gens = instance
    return _ideal_intersection_of(funclat.canonical_form(n, gens))


def _ideal_intersection_of(sub):
    n = sub.n
    ambient = funclat.full_space(n)
    for a in range(1 << n):
        ideal = funclat.zero_ideal(ambient, a)
        inter = funclat.intersection(ideal, sub)
        if not funclat.classify_sublattice(sub, inter).ideal:
            return [{"identity": "ideal-meets-sublattice", "zero_mask": a}], 0
    return [], 0


def _check_span_closure(instance):
    n, gens = instance
    cs = funclat.canonical_form(n, gens)
    for g in gens:
        if not funclat.member(cs, g):
            return [{"check": "generator-membership", "generator": list(g)}], 0
    if not latclosure.lattice_closure_matches(n, gens):
        return [{"check": "closure-dimension"}], 0
    return [], 0


def _check_operator_conditions(rows):
    try:
        t = comphom.HomMatrix(rows)
    except comphom.NotHomomorphism:
        return [{"check": "constructor", "error": "rejected a row-monomial matrix"}], 0
    failures = []
    conds = comphom.hoc_conditions(t)
    for name in sorted(conds):
        if not conds[name]:
            failures.append({"check": name})
    weights, phi = comphom.normal_form(t)
    if comphom.from_normal_form(weights, phi, t.n).entries != t.entries:
        failures.append({"check": "normal-form-roundtrip"})
    return failures, 0


def _check_homomorphism_test(rows):
    failures = []
    try:
        verdict = comphom.is_homomorphism(rows)
    except AssertionError:
        return [{"check": "structural-vs-definitional"}], 0
    try:
        t = comphom.HomMatrix(rows)
    except comphom.NotHomomorphism as exc:
        t = None
        if verdict:
            failures.append({"check": "constructor-rejects-homomorphism"})
        elif exc.witness is None:
            failures.append({"check": "missing-witness"})
        else:
            w = exc.witness
            plain = comphom._to_rows(rows)
            lhs = comphom._absolute(comphom._matvec(plain, w))
            rhs = comphom._matvec(plain, comphom._absolute(w))
            if lhs == rhs:
                failures.append({"check": "witness-does-not-witness",
                                 "witness": [str(v) for v in w]})
    if t is not None:
        if not verdict:
            failures.append({"check": "constructor-accepts-non-homomorphism"})
        weights, phi = comphom.normal_form(t)
        if comphom.from_normal_form(weights, phi, t.n).entries != t.entries:
            failures.append({"check": "normal-form-roundtrip"})
    return failures, 0


def _check_certification(m):
    e = funclat.full_space(m.codomain.n)
    try:
        rep = comphom.certify_composition(m, e)
    except AssertionError:
        return [{"check": "certificate-vs-direct"}], 0
    if not rep.discrete:
        return [], 1
    failures = []
    for key in sorted(rep.direct):
        if rep.conclusions[key] != rep.direct[key]:
            failures.append({"check": key, "conclusion": rep.conclusions[key],
                             "direct": rep.direct[key]})
    return failures, 0


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class PropertySpec:
    id: str
    kind: str
    description: str
    check: object


PROPERTIES = {p.id: p for p in (
    PropertySpec("P-ao", "map",
                 "weak-openness procedures match the opens-family reference",
                 _procedure_check("P-ao")),
    PropertySpec("P-wo", "map",
                 "almost-openness and skeletality procedures match the reference",
                 _procedure_check("P-wo")),
    PropertySpec("P-irr", "map",
                 "irreducibility procedures match the closed-image scan",
                 _procedure_check("P-irr")),
    PropertySpec("P-wi", "map",
                 "injectivity-flavour procedures stay within their direction",
                 _procedure_check("P-wi")),
    PropertySpec("P-mirr", "map",
                 "hypothesis-gated irreducibility procedures are sound",
                 _procedure_check("P-mirr")),
    PropertySpec("P-sat", "map",
                 "saturation equals the fiber scan and acts like a closure",
                 _check_saturation),
    PropertySpec("P-hier", "map",
                 "classification flags are consistent and match plain references",
                 _check_hierarchy),
    PropertySpec("P-eqr", "rel",
                 "relation saturation and closedness agree with references",
                 _check_relation),
    PropertySpec("P-quot", "rel",
                 "the quotient topology is final for the projection",
                 _check_quotient),
    PropertySpec("P-eqq", "rel",
                 "block conditions match references and the discrete bridge",
                 _check_block_conditions),
    PropertySpec("P-dis", "lattice",
                 "disjoint-complement identities hold in every ideal slice",
                 _check_disjoint_identities),
    PropertySpec("P-menag", "lattice",
                 "ideals meet sublattices in ideals",
                 _check_ideal_intersection),
    PropertySpec("P-sw", "lattice",
                 "canonical form matches the integer closure oracle",
                 _check_span_closure),
    PropertySpec("P-hoc", "monohom",
                 "order-continuity conditions hold for row-monomial operators",
                 _check_operator_conditions),
    PropertySpec("P-hom", "hom",
                 "structural and definitional homomorphism tests agree",
                 _check_homomorphism_test),
    PropertySpec("P-com", "dismap",
                 "certificates equal direct verdicts on discrete spaces",
                 _check_certification),
)}

PROPERTY_ORDER = tuple(PROPERTIES)


# ---------------------------------------------------------------------------
# instance streams

def _spaces_upto(max_points):
    out = []
    for n in range(1, max_points + 1):
        out.extend(enumerate_topologies(n))
    return out


def _exhaustive_maps(max_points):
    spaces = _spaces_upto(max_points)
    for dom in spaces:
        for cod in spaces:
            yield from contmap.enumerate_continuous_maps(dom, cod)


def _exhaustive_rels(max_points):
    for space in _spaces_upto(max_points):
        for rgs in equivrel._partitions_of(space.n):
            blocks = {}
            for x, g in enumerate(rgs):
                blocks[g] = blocks.get(g, 0) | bit(x)
            yield equivrel.EquivRel(space, blocks.values())


def _lattice_alphabet(n, bound=2):
    out = set()
    for vec in product(range(-bound, bound + 1), repeat=n):
        g = 0
        for v in vec:
            g = math.gcd(g, abs(v))
        if g != 1:
            continue
        for v in vec:
            if v:
                if v < 0:
                    vec = tuple(-w for w in vec)
                break
        out.add(vec)
    return sorted(out)


def _exhaustive_lattices(max_dim=2, max_gens=2):
    for n in range(1, max_dim + 1):
        alphabet = _lattice_alphabet(n)
        for k in range(max_gens + 1):
            for gens in combinations_with_replacement(alphabet, k):
                yield (n, gens)


def _exhaustive_homs(max_side=2):
    vals = (Fraction(-1), Fraction(0), Fraction(1))
    for m_rows in range(1, max_side + 1):
        for n_cols in range(1, max_side + 1):
            for flat in product(vals, repeat=m_rows * n_cols):
                yield tuple(
                    tuple(flat[i * n_cols:(i + 1) * n_cols])
                    for i in range(m_rows)
                )


def _exhaustive_monomials(max_side, max_val=3):
    for m_rows in range(1, max_side + 1):
        for n_cols in range(1, max_side + 1):
            choices = [(None, 0)] + [
                (j, v) for j in range(n_cols) for v in range(1, max_val + 1)
            ]
            for combo in product(choices, repeat=m_rows):
                rows = []
                for j, v in combo:
                    row = [Fraction(0)] * n_cols
                    if j is not None:
                        row[j] = Fraction(v)
                    rows.append(tuple(row))
                yield tuple(rows)


def _exhaustive_dismaps(max_points):
    for n_dom in range(1, max_points + 1):
        dom = discrete_space(n_dom)
        for n_cod in range(1, max_points + 1):
            cod = discrete_space(n_cod)
            for table in product(range(n_cod), repeat=n_dom):
                yield ContMap(dom, cod, table)


def _rng(seed, kind, index):
    return random.Random("%s:%s:%d" % (seed, kind, index))


def _random_space(rng, n):
    stars = [bit(i) | (rng.getrandbits(n) & full_mask(n)) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            grown = stars[i]
            for j in bits(stars[i]):
                grown |= stars[j]
            if grown != stars[i]:
                stars[i] = grown
                changed = True
    return from_stars(n, stars)


def _sample_map(seed, index, n):
    rng = _rng(seed, "map", index)
    dom = _random_space(rng, n)
    cod = _random_space(rng, n)
    for _ in range(40):
        table = tuple(rng.randrange(cod.n) for _ in range(dom.n))
        try:
            return ContMap(dom, cod, table)
        except NotContinuous:
            continue
    return ContMap(dom, cod, (rng.randrange(cod.n),) * dom.n)


def _sample_rel(seed, index, n):
    rng = _rng(seed, "rel", index)
    space = _random_space(rng, n)
    blocks = {0: bit(0)}
    top = 0
    for x in range(1, space.n):
        g = rng.randrange(top + 2)
        top = max(top, g)
        blocks[g] = blocks.get(g, 0) | bit(x)
    return equivrel.EquivRel(space, blocks.values())


def _sample_lattice(seed, index, dim_):
    rng = _rng(seed, "lattice", index)
    k = rng.randrange(4)
    gens = tuple(
        tuple(rng.randint(-2, 2) for _ in range(dim_)) for _ in range(k)
    )
    return (dim_, gens)


def _sample_hom(seed, index):
    rng = _rng(seed, "hom", index)
    m_rows = rng.randint(1, 3)
    n_cols = rng.randint(1, 3)
    return tuple(
        tuple(Fraction(rng.randint(-2, 2)) for _ in range(n_cols))
        for _ in range(m_rows)
    )


def _sample_monohom(seed, index):
    rng = _rng(seed, "monohom", index)
    m_rows = rng.randint(1, 3)
    n_cols = rng.randint(1, 3)
    rows = []
    for _ in range(m_rows):
        row = [Fraction(0)] * n_cols
        if rng.random() < 0.85:
            row[rng.randrange(n_cols)] = Fraction(rng.randint(1, 3), rng.randint(1, 3))
        rows.append(tuple(row))
    return tuple(rows)


def _sample_dismap(seed, index, n):
    rng = _rng(seed, "dismap", index)
    dom = discrete_space(rng.randint(1, n))
    cod = discrete_space(rng.randint(1, n))
    table = tuple(rng.randrange(cod.n) for _ in range(dom.n))
    return ContMap(dom, cod, table)


def _exhaustive_stream(kind, cfg):
    if kind == "map":
        return _exhaustive_maps(cfg.max_points)
    if kind == "rel":
        return _exhaustive_rels(cfg.max_points)
    if kind == "lattice":
        return _exhaustive_lattices()
    if kind == "hom":
        return _exhaustive_homs()
    if kind == "monohom":
        return _exhaustive_monomials(cfg.max_points)
    return _exhaustive_dismaps(cfg.max_points)


def _sample_instance(kind, cfg, index):
    if kind == "map":
        return _sample_map(cfg.seed, index, cfg.sample_points)
    if kind == "rel":
        return _sample_rel(cfg.seed, index, cfg.sample_points)
    if kind == "lattice":
        return _sample_lattice(cfg.seed, index, cfg.lattice_dim)
    if kind == "hom":
        return _sample_hom(cfg.seed, index)
    if kind == "monohom":
        return _sample_monohom(cfg.seed, index)
    return _sample_dismap(cfg.seed, index, cfg.sample_points)


# ---------------------------------------------------------------------------
# witnesses

def _describe(kind, instance):
    if kind in ("map", "dismap"):
        return {"record": records.emit_map(instance)}
    if kind == "rel":
        return {"record": records.emit_rel(instance)}
    if kind == "lattice":
        n, gens = instance
        body = ", ".join("[%s]" % ",".join(str(v) for v in g) for g in gens)
        return {
            "record": "sublattice { n = %d; generators = [ %s ] }" % (n, body),
            "n": n,
            "generators": [list(g) for g in gens],
        }
    return {"rows": [[str(v) for v in row] for row in instance]}


def _safe_check(pid, instance):
    try:
        return PROPERTIES[pid].check(instance)
    except Exception as exc:  # a crash counts as a failing instance
        return [{"check": "unexpected-exception", "error": repr(exc)}], 0


def replay_witness(witness):
    """Rebuild the witness instance from its record and re-run the check.

    Returns the fresh failure list; empty means the instance passes now.
    """
    pid = witness["property"]
    kind = PROPERTIES[pid].kind
    if kind in ("map", "dismap"):
        instance = records.load_record(witness["record"], "map")
    elif kind == "rel":
        instance = records.load_record(witness["record"], "rel")
    elif kind == "lattice":
        instance = (witness["n"], tuple(tuple(g) for g in witness["generators"]))
    else:
        instance = tuple(
            tuple(Fraction(v) for v in row) for row in witness["rows"]
        )
    failures, _ = _safe_check(pid, instance)
    return failures


# ---------------------------------------------------------------------------
# suite runner

@dataclass(frozen=True)
class SuiteConfig:
    max_points: int = 3
    sample_points: int = 4
    sample_budget: int = 2000
    properties: tuple = ()
    seed: int = 0
    workers: int = 1
    lattice_dim: int = 3
    mutation: object = None
    include_timing: bool = False

    def selected(self):
        return tuple(self.properties) or PROPERTY_ORDER

    def to_dict(self):
        return {
            "max_points": self.max_points,
            "sample_points": self.sample_points,
            "sample_budget": self.sample_budget,
            "properties": list(self.selected()),
            "seed": self.seed,
            "workers": self.workers,
            "lattice_dim": self.lattice_dim,
            "mutation": self.mutation,
            "include_timing": self.include_timing,
        }


def _validate(cfg):
    if not 1 <= cfg.max_points <= MAX_POINTS_LIMIT:
        raise ValueError("max_points must be within 1..%d" % MAX_POINTS_LIMIT)
    if not 1 <= cfg.sample_points <= MAX_POINTS_LIMIT:
        raise ValueError("sample_points must be within 1..%d" % MAX_POINTS_LIMIT)
    if not 1 <= cfg.lattice_dim <= MAX_LATTICE_DIM:
        raise ValueError("lattice_dim must be within 1..%d" % MAX_LATTICE_DIM)
    if cfg.sample_budget < 0:
        raise ValueError("sample_budget must be nonnegative")
    if cfg.workers < 1:
        raise ValueError("workers must be positive")
    for pid in cfg.selected():
        if pid not in PROPERTIES:
            raise ValueError("unknown property %r" % (pid,))
    if cfg.mutation is not None and cfg.mutation not in MUTATIONS:
        raise ValueError("unknown mutation %r" % (cfg.mutation,))


class _Agg:
    __slots__ = ("exhaustive", "sampled", "failures", "na", "seconds", "witness")

    def __init__(self):
        self.exhaustive = 0
        self.sampled = 0
        self.failures = 0
        self.na = 0
        self.seconds = 0.0
        self.witness = None


def _run_exhaustive(kind, pids, cfg, totals):
    for index, instance in enumerate(_exhaustive_stream(kind, cfg)):
        for pid in pids:
            agg = totals[pid]
            t0 = time.perf_counter()
            failures, na = _safe_check(pid, instance)
            agg.seconds += time.perf_counter() - t0
            agg.exhaustive += 1
            agg.na += na
            if failures:
                agg.failures += 1
                if agg.witness is None:
                    agg.witness = dict(
                        property=pid, stage="exhaustive", index=index,
                        detail=failures[0], **_describe(kind, instance),
                    )


def _sampled_chunk(kind, pids, cfg, start, stop):
    out = {pid: [0, 0, 0, 0.0, None] for pid in pids}
    for index in range(start, stop):
        instance = _sample_instance(kind, cfg, index)
        for pid in pids:
            cell = out[pid]
            t0 = time.perf_counter()
            failures, na = _safe_check(pid, instance)
            cell[3] += time.perf_counter() - t0
            cell[0] += 1
            cell[2] += na
            if failures:
                cell[1] += 1
                if cell[4] is None:
                    cell[4] = dict(
                        property=pid, stage="sampled", index=index,
                        detail=failures[0], **_describe(kind, instance),
                    )
    return out


def _run_sampled(kind, pids, cfg, totals):
    budget = cfg.sample_budget
    if budget <= 0:
        return
    workers = 1 if cfg.mutation is not None else cfg.workers
    if workers <= 1:
        chunks = [_sampled_chunk(kind, pids, cfg, 0, budget)]
    else:
        step = max(64, -(-budget // (workers * 4)))
        spans = [(s, min(s + step, budget)) for s in range(0, budget, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sampled_chunk, kind, pids, cfg, a, b)
                for a, b in spans
            ]
            chunks = [f.result() for f in futures]
    for chunk in chunks:
        for pid, (checked, failed, na, seconds, witness) in chunk.items():
            agg = totals[pid]
            agg.sampled += checked
            agg.failures += failed
            agg.na += na
            agg.seconds += seconds
            if witness is not None:
                if agg.witness is None or (
                    agg.witness["stage"] == "sampled"
                    and witness["index"] < agg.witness["index"]
                ):
                    agg.witness = witness


def run_suite(cfg=None, **overrides):
    if cfg is None:
        cfg = SuiteConfig(**overrides)
    _validate(cfg)
    selected = cfg.selected()
    by_kind = {}
    for pid in selected:
        by_kind.setdefault(PROPERTIES[pid].kind, []).append(pid)
    totals = {pid: _Agg() for pid in selected}
    with apply_mutation(cfg.mutation):
        for kind, pids in by_kind.items():
            pids = tuple(pids)
            _run_exhaustive(kind, pids, cfg, totals)
            _run_sampled(kind, pids, cfg, totals)
    results = tuple(
        PropertyResult(
            property_id=pid,
            exhaustive=totals[pid].exhaustive,
            sampled=totals[pid].sampled,
            failures=totals[pid].failures,
            not_applicable=totals[pid].na,
            witness=totals[pid].witness,
            seconds=totals[pid].seconds,
        )
        for pid in selected
    )
    return SuiteReport(config=cfg.to_dict(), results=results)
