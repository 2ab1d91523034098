"""Continuous maps between finite spaces and their openness/injectivity classes.

Every class flag has a fast decision routine that quantifies only over
minimal open neighbourhoods (sound for finite spaces, where every open
set is a union of stars), plus literal procedures that spell out each
characterisation with full subset quantifiers.  The literal procedures
form a registry keyed by stable string IDs so equivalence suites can
compare them pairwise and report which routine produced a verdict.
"""

from dataclasses import dataclass, field
from itertools import product

from .bitset import bit, bits, subsets_by_size
from .finspace import FinSpace, SpaceTooLarge, subspace

LITERAL_POINT_LIMIT = 12


class NotContinuous(ValueError):
    """Raised for a table with some open set whose preimage is not open."""

    def __init__(self, message, witness_open=None):
        super().__init__(message)
        self.witness_open = witness_open


class ContMap:
    """A validated continuous map; table[x] is the image point of x."""

    __slots__ = ("domain", "codomain", "table", "fibers", "_image_bit")

    def __init__(self, domain, codomain, table):
        self.domain = domain
        self.codomain = codomain
        self.table = tuple(table)
        if len(self.table) != domain.n:
            raise ValueError("table length must match the domain size")
        for y in self.table:
            if not 0 <= y < codomain.n:
                raise ValueError("table value %r outside the codomain" % (y,))
        fibers = [0] * codomain.n
        for x, y in enumerate(self.table):
            fibers[y] |= bit(x)
        self.fibers = tuple(fibers)
        self._image_bit = tuple(bit(y) for y in self.table)
        # Continuity for finite spaces: the image of every minimal open
        # neighbourhood must stay inside the image point's own star.
        for x in range(domain.n):
            target = codomain.stars[self.table[x]]
            for x2 in bits(domain.stars[x]):
                if not target & bit(self.table[x2]):
                    raise NotContinuous(
                        "preimage of the star of point %d is not open"
                        % self.table[x],
                        witness_open=target,
                    )

    def __eq__(self, other):
        return (
            isinstance(other, ContMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.table))

    def __repr__(self):
        return "ContMap(table=%r)" % (self.table,)


def make_map(domain, codomain, table):
    return ContMap(domain, codomain, table)


def image(m, a):
    out = 0
    for x in bits(a):
        out |= m._image_bit[x]
    return out


def preimage(m, b):
    out = 0
    for y in bits(b):
        out |= m.fibers[y]
    return out


def saturation(m, a):
    """Smallest fiber-union containing a, i.e. preimage(image(a))."""
    return preimage(m, image(m, a))


def is_saturated(m, a):
    return saturation(m, a) == a


def largest_open_saturated(m, u):
    """Largest open set of fibers inside u (may be empty)."""
    dom = m.domain
    w = u
    while True:
        solid = w & ~saturation(m, dom.full & ~w)
        nxt = dom.interior(solid)
        if nxt == w:
            return w
        w = nxt


def corestriction(m):
    """The same map onto its image with the subspace topology."""
    img = image(m, m.domain.full)
    sub, mapping = subspace(m.codomain, img)
    index = {p: i for i, p in enumerate(mapping)}
    return ContMap(m.domain, sub, tuple(index[y] for y in m.table))


def final_star(m, y):
    """Minimal open neighbourhood of y in the final (quotient) topology."""
    v = bit(y)
    while True:
        pre = preimage(m, v)
        grown = False
        for x in bits(pre):
            leak = m.domain.stars[x] & ~pre
            if leak:
                v |= image(m, leak)
                grown = True
        if not grown:
            return v


# ---------------------------------------------------------------------------
# fast star-based class decisions (used by classify_map on spaces of any size)


def weakly_open_stars(m):
    cod = m.codomain
    return all(
        cod.interior(image(m, m.domain.stars[x])) != 0 for x in range(m.domain.n)
    )


def almost_open_stars(m):
    cod = m.codomain
    return all(
        cod.interior(cod.closure(image(m, m.domain.stars[x]))) != 0
        for x in range(m.domain.n)
    )


def skeletal_stars(m):
    return almost_open_stars(corestriction(m))


def strongly_skeletal_stars(m):
    return weakly_open_stars(corestriction(m))


def irreducible_stars(m):
    dom, cod = m.domain, m.codomain
    for x in range(dom.n):
        star = dom.stars[x]
        if not any(
            m.fibers[y] and preimage(m, cod.stars[y]) & ~star == 0
            for y in range(cod.n)
        ):
            return False
    return True


def weakly_injective_stars(m):
    return all(
        largest_open_saturated(m, m.domain.stars[x]) != 0 for x in range(m.domain.n)
    )


def almost_injective_stars(m):
    solo = 0
    for x in range(m.domain.n):
        if m.fibers[m.table[x]] == bit(x):
            solo |= bit(x)
    return m.domain.is_dense(solo)


def open_map_stars(m):
    return all(
        m.codomain.is_open(image(m, m.domain.stars[x])) for x in range(m.domain.n)
    )


def closed_map_stars(m):
    dom, cod = m.domain, m.codomain
    for x in range(dom.n):
        down = sum(bit(z) for z in range(dom.n) if dom.stars[z] & bit(x))
        if not cod.is_closed(image(m, down)):
            return False
    return True


def is_injective(m):
    return len(set(m.table)) == m.domain.n


def is_surjective(m):
    return all(f != 0 for f in m.fibers)


def embedding_stars(m):
    return is_injective(m) and open_map_stars(corestriction(m))


def quotient_map_stars(m):
    if not is_surjective(m):
        return False
    return all(final_star(m, y) == m.codomain.stars[y] for y in range(m.codomain.n))


def domain_is_discrete(m):
    return m.domain.is_discrete()


# ---------------------------------------------------------------------------
# literal procedures: full subset quantifiers, one routine per characterisation


def _family_guard(m):
    if m.domain.n > LITERAL_POINT_LIMIT or m.codomain.n > LITERAL_POINT_LIMIT:
        raise SpaceTooLarge(
            "literal procedures enumerate subsets; limited to %d points"
            % LITERAL_POINT_LIMIT
        )


def _nonempty_opens(space):
    return [u for u in space.opens if u]


def ao_i(m):
    cod = m.codomain
    return all(cod.interior(image(m, u)) != 0 for u in _nonempty_opens(m.domain))


def ao_ii_nonempty(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        if not any(
            w and w & ~u == 0 and cod.is_open(image(m, w)) for w in dom.opens
        ):
            return False
    return True


def ao_ii_dense(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        if not any(
            w & ~u == 0 and u & ~dom.closure(w) == 0 and cod.is_open(image(m, w))
            for w in dom.opens
        ):
            return False
    return True


def ao_iii(m):
    dom, cod = m.domain, m.codomain
    for a in subsets_by_size(cod.n):
        if cod.is_dense(a) and not dom.is_dense(preimage(m, a)):
            return False
    return True


def wo_i(m):
    cod = m.codomain
    return all(
        cod.interior(cod.closure(image(m, u))) != 0 for u in _nonempty_opens(m.domain)
    )


def wo_ii(m):
    dom, cod = m.domain, m.codomain
    for v in cod.opens:
        inner = dom.interior(preimage(m, cod.closure(v)))
        if inner & ~dom.closure(preimage(m, v)):
            return False
    return True


def wo_iii(m):
    dom, cod = m.domain, m.codomain
    for v in cod.opens:
        if cod.is_dense(v) and not dom.is_dense(preimage(m, v)):
            return False
    return True


def wo_iv(m):
    dom, cod = m.domain, m.codomain
    for a in subsets_by_size(cod.n):
        if cod.is_nowhere_dense(a) and not dom.is_nowhere_dense(preimage(m, a)):
            return False
    return True


def _canonically_closed(space, a):
    return a == space.closure(space.interior(a))


def wo_v(m):
    cod = m.codomain
    return all(
        _canonically_closed(cod, cod.closure(image(m, u))) for u in m.domain.opens
    )


def wo_v_canon(m):
    dom, cod = m.domain, m.codomain
    for c in subsets_by_size(dom.n):
        if _canonically_closed(dom, c) and not _canonically_closed(
            cod, cod.closure(image(m, c))
        ):
            return False
    return True


def _dense_restrictions(m):
    dom = m.domain
    for d in subsets_by_size(dom.n):
        if not dom.is_dense(d):
            continue
        sub, mapping = subspace(dom, d)
        yield ContMap(sub, m.codomain, tuple(m.table[p] for p in mapping))


def wo_vi_every(m):
    return all(almost_open_stars(r) for r in _dense_restrictions(m))


def wo_vi_some(m):
    return any(almost_open_stars(r) for r in _dense_restrictions(m))


def sk_sat(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        cap = preimage(m, cod.closure(image(m, u)))
        if not any(
            preimage(m, v) and preimage(m, v) & ~cap == 0 for v in cod.opens
        ):
            return False
    return True


def ssk_sat(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        cap = saturation(m, u)
        if not any(
            preimage(m, v) and preimage(m, v) & ~cap == 0 for v in cod.opens
        ):
            return False
    return True


def irr_i(m):
    dom, cod = m.domain, m.codomain
    img = image(m, dom.full)
    for a in subsets_by_size(dom.n):
        if a != dom.full and dom.is_closed(a):
            if img & ~cod.closure(image(m, a)) == 0:
                return False
    return True


def irr_ii(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        if not any(
            preimage(m, v) and preimage(m, v) & ~u == 0 for v in cod.opens
        ):
            return False
    return True


def irr_ii_dense(m):
    dom, cod = m.domain, m.codomain
    for u in _nonempty_opens(dom):
        ok = False
        for v in cod.opens:
            p = preimage(m, v)
            if p and p & ~u == 0 and u & ~dom.closure(p) == 0:
                ok = True
                break
        if not ok:
            return False
    return True


def wi_def(m):
    dom = m.domain
    for u in _nonempty_opens(dom):
        if not any(
            w and w & ~u == 0 and is_saturated(m, w) for w in dom.opens
        ):
            return False
    return True


def irr_iii(m):
    return strongly_skeletal_stars(m) and wi_def(m)


def irr_iv(m):
    if not strongly_skeletal_stars(m):
        return False
    dom = m.domain
    for a in subsets_by_size(dom.n):
        if a != dom.full and dom.is_closed(a) and dom.is_dense(saturation(m, a)):
            return False
    return True


def wi_i(m):
    dom = m.domain
    for u in _nonempty_opens(dom):
        w = largest_open_saturated(m, u)
        if u & ~dom.closure(w):
            return False
    return True


def wi_ii(m):
    dom = m.domain
    for a in subsets_by_size(dom.n):
        if not dom.is_nowhere_dense(saturation(m, a) & ~dom.closure(a)):
            return False
    return True


def wi_iii(m):
    dom = m.domain
    core = corestriction(m)
    sub = core.codomain
    for a in subsets_by_size(dom.n):
        if dom.is_nowhere_dense(a) and sub.interior(image(core, a)) != 0:
            return False
    return True


def mirr_i(m):
    dom = m.domain
    for a in subsets_by_size(dom.n):
        if a != dom.full and dom.is_closed(a) and saturation(m, a) == dom.full:
            return False
    return True


@dataclass(frozen=True)
class Procedure:
    """One named decision routine about one map class.

    kind records how the routine's value relates to the class under its
    hypothesis: "iff" (equivalent), "necessary" (class implies value),
    or "sufficient" (value implies class).
    """

    id: str
    target: str
    kind: str
    evaluate: object
    hypothesis: object = None
    needs_family: bool = False


_PROCEDURE_LIST = [
    Procedure("ao-stars", "weakly_open", "iff", weakly_open_stars),
    Procedure("ao-i", "weakly_open", "iff", ao_i, needs_family=True),
    Procedure("ao-ii-nonempty", "weakly_open", "iff", ao_ii_nonempty, needs_family=True),
    Procedure("ao-ii-dense", "weakly_open", "iff", ao_ii_dense, needs_family=True),
    Procedure("ao-iii", "weakly_open", "iff", ao_iii, needs_family=True),
    Procedure("wo-stars", "almost_open", "iff", almost_open_stars),
    Procedure("wo-i", "almost_open", "iff", wo_i, needs_family=True),
    Procedure("wo-ii", "almost_open", "iff", wo_ii, needs_family=True),
    Procedure("wo-iii", "almost_open", "iff", wo_iii, needs_family=True),
    Procedure("wo-iv", "almost_open", "iff", wo_iv, needs_family=True),
    Procedure("wo-v", "almost_open", "iff", wo_v, needs_family=True),
    Procedure("wo-v-canon", "almost_open", "iff", wo_v_canon, needs_family=True),
    Procedure("wo-vi", "almost_open", "iff", wo_vi_every, needs_family=True),
    Procedure("wo-vi-some", "almost_open", "iff", wo_vi_some, needs_family=True),
    Procedure("sk-stars", "skeletal", "iff", skeletal_stars),
    Procedure("sk-sat", "skeletal", "iff", sk_sat, needs_family=True),
    Procedure("ssk-stars", "strongly_skeletal", "iff", strongly_skeletal_stars),
    Procedure("ssk-sat", "strongly_skeletal", "iff", ssk_sat, needs_family=True),
    Procedure("irr-stars", "irreducible", "iff", irreducible_stars),
    Procedure("irr-i", "irreducible", "iff", irr_i, needs_family=True),
    Procedure("irr-ii", "irreducible", "iff", irr_ii, needs_family=True),
    Procedure("irr-ii-dense", "irreducible", "iff", irr_ii_dense, needs_family=True),
    Procedure("irr-iii", "irreducible", "iff", irr_iii, needs_family=True),
    Procedure("irr-iv", "irreducible", "iff", irr_iv, needs_family=True),
    Procedure("wi-stars", "weakly_injective", "iff", weakly_injective_stars),
    Procedure("wi-def", "weakly_injective", "iff", wi_def, needs_family=True),
    Procedure("wi-i", "weakly_injective", "necessary", wi_i, needs_family=True),
    Procedure("wi-ii", "weakly_injective", "necessary", wi_ii, needs_family=True),
    Procedure("wi-iii", "weakly_injective", "necessary", wi_iii, needs_family=True),
    Procedure("ai-stars", "almost_injective", "iff", almost_injective_stars),
    Procedure(
        "mirr-i", "irreducible", "iff", mirr_i,
        hypothesis=closed_map_stars, needs_family=True,
    ),
    Procedure(
        "mirr-ii", "irreducible", "sufficient", almost_injective_stars,
        hypothesis=closed_map_stars,
    ),
    Procedure(
        "mirr-iii", "almost_injective", "sufficient", weakly_injective_stars,
        hypothesis=domain_is_discrete,
    ),
]

PROCEDURES = {p.id: p for p in _PROCEDURE_LIST}

NOT_APPLICABLE = None


def decide_by(m, class_name, procedure_id):
    """Evaluate one registered routine; None when its hypothesis fails."""
    proc = PROCEDURES.get(procedure_id)
    if proc is None:
        raise ValueError("unknown procedure id %r" % (procedure_id,))
    if proc.target != class_name:
        raise ValueError(
            "procedure %s decides %s, not %s" % (procedure_id, proc.target, class_name)
        )
    if proc.needs_family:
        _family_guard(m)
    if proc.hypothesis is not None and not proc.hypothesis(m):
        return NOT_APPLICABLE
    return proc.evaluate(m)


@dataclass(frozen=True)
class MapClassification:
    weakly_open: bool
    almost_open: bool
    skeletal: bool
    strongly_skeletal: bool
    irreducible: bool
    weakly_injective: bool
    almost_injective: bool
    open_map: bool
    closed_map: bool
    embedding: bool
    quotient_map: bool
    injective: bool
    surjective: bool
    procedure_ids: dict = field(compare=False, default_factory=dict)

    def __post_init__(self):
        assert not self.weakly_open or self.almost_open
        assert not self.weakly_open or self.strongly_skeletal
        assert not self.almost_open or self.skeletal
        assert not self.strongly_skeletal or self.skeletal
        assert not self.embedding or self.irreducible
        assert self.irreducible == (self.strongly_skeletal and self.weakly_injective)

    def flags(self):
        return {
            name: getattr(self, name)
            for name in (
                "weakly_open", "almost_open", "skeletal", "strongly_skeletal",
                "irreducible", "weakly_injective", "almost_injective",
                "open_map", "closed_map", "embedding", "quotient_map",
                "injective", "surjective",
            )
        }


_CLASSIFY_ROUTINES = {
    "weakly_open": ("ao-stars", weakly_open_stars),
    "almost_open": ("wo-stars", almost_open_stars),
    "skeletal": ("sk-stars", skeletal_stars),
    "strongly_skeletal": ("ssk-stars", strongly_skeletal_stars),
    "irreducible": ("irr-stars", irreducible_stars),
    "weakly_injective": ("wi-stars", weakly_injective_stars),
    "almost_injective": ("ai-stars", almost_injective_stars),
    "open_map": ("open-map", open_map_stars),
    "closed_map": ("closed-map", closed_map_stars),
    "embedding": ("embedding", embedding_stars),
    "quotient_map": ("quotient-map", quotient_map_stars),
    "injective": ("injective", is_injective),
    "surjective": ("surjective", is_surjective),
}


def classify_map(m):
    """All class flags for a map, each tagged with the routine that ran."""
    values = {}
    ids = {}
    for name, (pid, fn) in _CLASSIFY_ROUTINES.items():
        values[name] = fn(m)
        ids[name] = pid
    return MapClassification(procedure_ids=ids, **values)


def enumerate_continuous_maps(domain, codomain, *, budget=1 << 20):
    """All continuous tables domain -> codomain, lexicographic order."""
    total = codomain.n ** domain.n
    if total > budget:
        raise SpaceTooLarge(
            "%d candidate tables exceed the budget %d" % (total, budget)
        )
    dstars = domain.stars
    cstars = codomain.stars
    for table in product(range(codomain.n), repeat=domain.n):
        ok = True
        for x in range(domain.n):
            target = cstars[table[x]]
            for x2 in bits(dstars[x]):
                if not target & bit(table[x2]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield ContMap(domain, codomain, table)
