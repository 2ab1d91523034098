"""Finite topological spaces on points 0..n-1 with subsets as bitmasks.

A space is determined by the minimal open neighbourhood of each point
(its "star"); the family of all opens is exactly the family of unions
of stars and is materialised lazily.  Small spaces built from an
explicit opens family keep that family around for exhaustive
quantifier scans.
"""

from dataclasses import dataclass
from itertools import combinations

from .bitset import bit, bits, full_mask, mask_to_list, subsets_by_size

DEFAULT_MAX_POINTS = 16
ENUMERATION_MAX_POINTS = 5
OPENS_FAMILY_BUDGET = 1 << 20


class InvalidTopology(ValueError):
    """Raised when an opens family or star table fails the axioms."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpaceTooLarge(ValueError):
    pass


class FinSpace:
    """Immutable finite space; equality and hashing go through the stars."""

    __slots__ = ("n", "stars", "_opens")

    def __init__(self, n, stars, opens=None):
        self.n = n
        self.stars = stars
        self._opens = opens

    @property
    def opens(self):
        """All open sets, sorted ascending by mask value (so empty first, X last)."""
        if self._opens is None:
            family = {0}
            for s in self.stars:
                family |= {m | s for m in family}
                if len(family) > OPENS_FAMILY_BUDGET:
                    raise SpaceTooLarge(
                        "opens family exceeds %d sets; use star-based operations"
                        % OPENS_FAMILY_BUDGET
                    )
            self._opens = tuple(sorted(family))
        return self._opens

    @property
    def full(self):
        return full_mask(self.n)

    def is_open(self, a):
        return all(self.stars[x] & ~a == 0 for x in bits(a))

    def is_closed(self, a):
        return self.is_open(self.full & ~a)

    def closure(self, a):
        """Smallest closed superset: points whose every neighbourhood meets a."""
        return sum(bit(x) for x in range(self.n) if self.stars[x] & a)

    def interior(self, a):
        """Largest open subset: points whose star stays inside a."""
        return sum(bit(x) for x in bits(a) if self.stars[x] & ~a == 0)

    def is_dense(self, a):
        return self.closure(a) == self.full

    def is_nowhere_dense(self, a):
        return self.interior(self.closure(a)) == 0

    def is_discrete(self):
        return all(self.stars[x] == bit(x) for x in range(self.n))

    def __eq__(self, other):
        return (
            isinstance(other, FinSpace)
            and self.n == other.n
            and self.stars == other.stars
        )

    def __hash__(self):
        return hash((self.n, self.stars))

    def __repr__(self):
        return "FinSpace(n=%d, stars=%r)" % (self.n, self.stars)


@dataclass(frozen=True)
class SubsetProps:
    closed: bool
    dense: bool
    nowhere_dense: bool
    canonically_closed: bool
    canonically_open: bool
    clopen: bool


def _check_n(n, max_points):
    limit = DEFAULT_MAX_POINTS if max_points is None else max_points
    if n < 1:
        raise InvalidTopology("a space needs at least one point")
    if n > limit:
        raise SpaceTooLarge("n=%d exceeds the configured limit %d" % (n, limit))


def make_space(n, opens, *, max_points=None):
    """Build a space from an explicit opens family (iterable of masks).

    The family must contain the empty set and the full set and be closed
    under pairwise union and intersection; violations report a witness.
    """
    _check_n(n, max_points)
    full = full_mask(n)
    family = sorted(set(opens))
    for m in family:
        if m & ~full:
            raise InvalidTopology("open set %r uses points outside 0..%d" % (m, n - 1))
    if 0 not in family:
        raise InvalidTopology("the empty set is missing from the family")
    if full not in family:
        raise InvalidTopology("the full set is missing from the family")
    members = set(family)
    for a, b in combinations(family, 2):
        if a | b not in members:
            raise InvalidTopology(
                "family not closed under union", witness=(a, b, a | b)
            )
        if a & b not in members:
            raise InvalidTopology(
                "family not closed under intersection", witness=(a, b, a & b)
            )
    stars = []
    for x in range(n):
        s = full
        for m in family:
            if m & bit(x):
                s &= m
        stars.append(s)
    return FinSpace(n, tuple(stars), tuple(family))


def from_stars(n, stars, *, max_points=None):
    """Build a space from minimal-open-neighbourhood masks.

    Axioms: x in star(x), and y in star(x) implies star(y) subset star(x).
    """
    _check_n(n, max_points)
    stars = tuple(stars)
    if len(stars) != n:
        raise InvalidTopology("need one star per point")
    full = full_mask(n)
    for x, s in enumerate(stars):
        if s & ~full:
            raise InvalidTopology("star of %d leaves the point range" % x)
        if not s & bit(x):
            raise InvalidTopology("star of %d does not contain %d" % (x, x), witness=x)
        for y in bits(s):
            if stars[y] & ~s:
                raise InvalidTopology(
                    "stars are not transitively closed", witness=(x, y)
                )
    return FinSpace(n, stars)


def discrete_space(n, *, max_points=None):
    return from_stars(n, tuple(bit(x) for x in range(n)), max_points=max_points)


def classify_subset(space, a):
    """Closed / dense / nowhere-dense / canonical-regularity flags for a subset."""
    cl = space.closure(a)
    inside = space.interior(a)
    closed = space.is_closed(a)
    return SubsetProps(
        closed=closed,
        dense=cl == space.full,
        nowhere_dense=space.interior(cl) == 0,
        canonically_closed=a == space.closure(inside),
        canonically_open=a == space.interior(cl),
        clopen=closed and space.is_open(a),
    )


def subspace(space, a):
    """Subspace on the points of `a`, re-indexed ascending.

    Returns (space, mapping) where mapping[i] is the original point of
    new point i.
    """
    if a == 0:
        raise InvalidTopology("subspace needs a nonempty carrier")
    mapping = tuple(mask_to_list(a))
    index = {p: i for i, p in enumerate(mapping)}
    stars = []
    for p in mapping:
        stars.append(sum(bit(index[q]) for q in bits(space.stars[p] & a)))
    return FinSpace(len(mapping), tuple(stars)), mapping


def _filter_families(n):
    # Brute force over families of nontrivial subsets; practical for n <= 4.
    if n > 4:
        raise SpaceTooLarge("the family-filter strategy is exhaustive only up to n=4")
    full = full_mask(n)
    nontrivial = [m for m in range(1, full)]
    k = len(nontrivial)
    out = []
    for choice in range(1 << k):
        family = [0, full]
        c = choice
        while c:
            low = c & -c
            family.append(nontrivial[low.bit_length() - 1])
            c ^= low
        members = set(family)
        ok = True
        for i in range(len(family)):
            a = family[i]
            for j in range(i + 1, len(family)):
                b = family[j]
                if a | b not in members or a & b not in members:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(sorted(members)))
    return out


def _preorder_star_tables(n):
    # Every reflexive transitive star table is a topology and vice versa.
    out = []
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    k = len(offdiag)
    for choice in range(1 << k):
        stars = [bit(i) for i in range(n)]
        c = choice
        while c:
            low = c & -c
            i, j = offdiag[low.bit_length() - 1]
            stars[i] |= bit(j)
            c ^= low
        ok = True
        for i in range(n):
            reach = 0
            for j in bits(stars[i]):
                reach |= stars[j]
            if reach & ~stars[i]:
                ok = False
                break
        if ok:
            out.append(tuple(stars))
    return out


def enumerate_topologies(n, *, strategy="preorder", max_points=None):
    """Yield every topology on n labelled points exactly once.

    Deterministic order: ascending by the sorted opens-family tuple.
    Two independent strategies are available; "filter" checks every
    subset family directly (n <= 4), "preorder" enumerates reflexive
    transitive reachability tables.
    """
    limit = ENUMERATION_MAX_POINTS if max_points is None else max_points
    if n < 1:
        raise InvalidTopology("a space needs at least one point")
    if n > limit:
        raise SpaceTooLarge("n=%d exceeds the enumeration limit %d" % (n, limit))
    if strategy == "filter":
        families = _filter_families(n)
        families.sort()
        for fam in families:
            yield make_space(n, fam, max_points=limit)
    elif strategy == "preorder":
        spaces = [FinSpace(n, stars) for stars in _preorder_star_tables(n)]
        spaces.sort(key=lambda s: s.opens)
        yield from spaces
    else:
        raise ValueError("unknown strategy %r" % (strategy,))


def canonical_relabel(space):
    """Lexicographically least opens family over all point relabelings.

    Reporting helper for homeomorphism classes; the workbench itself
    always works with labelled spaces.
    """
    from itertools import permutations

    if space.n > 8:
        raise SpaceTooLarge("canonical relabeling is exhaustive only up to n=8")
    best = None
    for perm in permutations(range(space.n)):
        fam = tuple(
            sorted(sum(bit(perm[x]) for x in bits(m)) for m in space.opens)
        )
        if best is None or fam < best:
            best = fam
    return best


def dense_subsets(space):
    """All dense subsets, ascending by (popcount, value)."""
    return [a for a in subsets_by_size(space.n) if space.is_dense(a)]


def closed_subsets(space):
    """All closed subsets, ascending by (popcount, value)."""
    return [a for a in subsets_by_size(space.n) if space.is_closed(a)]
