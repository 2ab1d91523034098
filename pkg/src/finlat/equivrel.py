"""Equivalence relations on finite spaces, quotients, and closed-relation joins.

A relation is kept as a partition in canonical form (blocks sorted by
least element).  "Closed" means the saturation of every closed set is
closed; the module always evaluates this through two independent
routes (set saturation and closedness of the quotient projection) and
insists they agree.
"""

from dataclasses import dataclass

from .bitset import bit, bits, subsets_by_size
from .contmap import ContMap, closed_map_stars
from .finspace import FinSpace, from_stars

JOIN_BLOCK_LIMIT = 10


class PartitionError(ValueError):
    pass


class EquivRel:
    """A partition of the points of a finite space."""

    __slots__ = ("space", "blocks", "block_index")

    def __init__(self, space, blocks):
        self.space = space
        cleaned = sorted((b for b in blocks), key=lambda m: m & -m)
        self.blocks = tuple(cleaned)
        seen = 0
        index = [None] * space.n
        for i, b in enumerate(self.blocks):
            if b == 0:
                raise PartitionError("empty block")
            if b & seen:
                raise PartitionError("blocks overlap")
            if b & ~space.full:
                raise PartitionError("block outside the point range")
            seen |= b
            for x in bits(b):
                index[x] = i
        if seen != space.full:
            raise PartitionError("blocks do not cover every point")
        self.block_index = tuple(index)

    def block_of(self, x):
        return self.blocks[self.block_index[x]]

    def __eq__(self, other):
        return (
            isinstance(other, EquivRel)
            and self.space == other.space
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.space, self.blocks))

    def __repr__(self):
        return "EquivRel(blocks=%r)" % (self.blocks,)


def from_blocks(space, blocks):
    masks = []
    for b in blocks:
        m = 0
        for x in b:
            m |= bit(x)
        masks.append(m)
    return EquivRel(space, masks)


def from_pairs(space, pairs):
    parent = list(range(space.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, c in pairs:
        parent[find(a)] = find(c)
    groups = {}
    for x in range(space.n):
        groups.setdefault(find(x), 0)
        groups[find(x)] |= bit(x)
    return EquivRel(space, groups.values())


def identity_relation(space):
    return EquivRel(space, [bit(x) for x in range(space.n)])


def collapse_all(space):
    return EquivRel(space, [space.full])


def saturate(rel, a):
    """Union of the blocks meeting a (smallest block-union superset)."""
    out = 0
    for b in rel.blocks:
        if b & a:
            out |= b
    return out


def is_block_union(rel, a):
    return saturate(rel, a) == a


def _closed_via_saturation(rel):
    space = rel.space
    for x in range(space.n):
        down = space.closure(bit(x))
        if not space.is_closed(saturate(rel, down)):
            return False
    return True


def quotient(rel):
    """Quotient space plus the projection, finest topology keeping it continuous."""
    space = rel.space
    k = len(rel.blocks)
    qstars = []
    for b0 in range(k):
        v = bit(b0)
        while True:
            pre = 0
            for i in bits(v):
                pre |= rel.blocks[i]
            add = 0
            for x in bits(pre):
                for x2 in bits(space.stars[x] & ~pre):
                    add |= bit(rel.block_index[x2])
            if add & ~v == 0:
                break
            v |= add
        qstars.append(v)
    qspace = from_stars(k, qstars, max_points=max(k, 1))
    projection = ContMap(space, qspace, rel.block_index)
    return qspace, projection


def is_closed_relation(rel):
    by_saturation = _closed_via_saturation(rel)
    _, projection = quotient(rel)
    by_projection = closed_map_stars(projection)
    assert by_saturation == by_projection
    return by_saturation


def meet(r1, r2):
    if r1.space != r2.space:
        raise ValueError("relations live on different spaces")
    blocks = []
    for a in r1.blocks:
        for b in r2.blocks:
            if a & b:
                blocks.append(a & b)
    return EquivRel(r1.space, blocks)


def _merge_base(r1, r2):
    pairs = []
    for rel in (r1, r2):
        for b in rel.blocks:
            run = list(bits(b))
            pairs.extend(zip(run, run[1:]))
    return from_pairs(r1.space, pairs)


def _partitions_of(k):
    """Restricted-growth strings: every partition of {0..k-1}."""
    rgs = [0] * k

    def rec(i, maxval):
        if i == k:
            yield tuple(rgs)
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(1, 0) if k else iter(((),))


@dataclass(frozen=True)
class JoinResult:
    """Outcome of the closed-relation join.

    join is the unique smallest closed relation above both inputs when
    the intersection of all closed candidates is itself closed; when it
    is not, join is None and minimal lists the minimal closed
    candidates instead.
    """

    join: object
    minimal: tuple
    candidates: int


def join_closed(r1, r2):
    if r1.space != r2.space:
        raise ValueError("relations live on different spaces")
    space = r1.space
    base = _merge_base(r1, r2)
    k = len(base.blocks)
    if k > JOIN_BLOCK_LIMIT:
        raise ValueError(
            "join search enumerates partitions of %d blocks; limit is %d"
            % (k, JOIN_BLOCK_LIMIT)
        )
    closed_above = []
    for rgs in _partitions_of(k):
        groups = {}
        for i, g in enumerate(rgs):
            groups[g] = groups.get(g, 0) | base.blocks[i]
        cand = EquivRel(space, groups.values())
        if is_closed_relation(cand):
            closed_above.append(cand)
    bottom = closed_above[0]
    for cand in closed_above[1:]:
        bottom = meet(bottom, cand)
    # bottom still contains the merge base, so when closed it was enumerated
    if is_closed_relation(bottom):
        return JoinResult(join=bottom, minimal=(bottom,), candidates=len(closed_above))
    minimal = []
    for cand in closed_above:
        if not any(
            other != cand and _refines(other, cand) for other in closed_above
        ):
            minimal.append(cand)
    return JoinResult(join=None, minimal=tuple(minimal), candidates=len(closed_above))


def _refines(fine, coarse):
    for b in fine.blocks:
        low = (b & -b).bit_length() - 1
        if b & ~coarse.block_of(low):
            return False
    return True


def eqq_condition_i(rel):
    """Every open nonempty set contains a set with open saturation."""
    space = rel.space
    for u in space.opens:
        if u == 0:
            continue
        touched = [b for b in rel.blocks if b & u]
        found = False
        for pick in range(1, 1 << len(touched)):
            s = 0
            for i in bits(pick):
                s |= touched[i]
            if space.is_open(s):
                found = True
                break
        if not found:
            return False
    return True


def eqq_condition_ii(rel):
    """No proper closed set saturates to the whole space."""
    space = rel.space
    for a in subsets_by_size(space.n):
        if a != space.full and space.is_closed(a) and saturate(rel, a) == space.full:
            return False
    return True
