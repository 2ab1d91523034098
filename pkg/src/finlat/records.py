"""Plain-text interchange records for spaces, maps, relations, lattices.

Grammar (whitespace-insensitive, # starts a line comment):

    file    = record*
    record  = [name "="] kind "{" fields "}"
    fields  = field (";" field)* [";"]        (empty body allowed)
    field   = key "=" value
    value   = integer | string | "@" name | "[" values "]"
            | kind "{" fields "}" | "{" fields "}"
    kind    = "space" | "map" | "rel" | "sublattice" | "hom"

Record kinds and their fields:

    space      { n = 3; opens = [ [], [2], [1,2], [0,1,2] ] }
    map        { domain = <space>; codomain = <space>; table = [2,0,1] }
    rel        { space = <space>; blocks = [[0,2],[1]] }
    sublattice { n = 3; zeros = [2]; ties = [ {x=1, z=0, ratio="2/1"} ] }
    sublattice { n = 3; generators = [[1,2,0]] }
    hom        { rows = [["0","2","0"],["0","0","1"]] }

A <space> is an inline space record or an @ref to a named record
defined earlier in the same file.  Opens are sorted point lists.
Rational entries (hom rows, tie ratios) are quoted "p/q" strings.
"""

import re
from fractions import Fraction

from .bitset import mask_of, mask_to_list
from .comphom import HomMatrix
from .contmap import ContMap, make_map
from .equivrel import EquivRel, from_blocks
from .finspace import FinSpace, make_space
from .funclat import ConstraintSystem, canonical_form, from_constraints

KINDS = ("space", "map", "rel", "sublattice", "hom")


class RecordError(ValueError):
    pass


_TOKEN = re.compile(
    r"""\s+ | \#[^\n]* |
        (?P<int>-?\d+) | (?P<str>"[^"\n]*") |
        (?P<ident>[A-Za-z_][A-Za-z0-9_-]*) | (?P<punct>[{}\[\]=;,@])""",
    re.VERBOSE,
)


def _tokenize(text):
    out = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RecordError("line %d: bad character %r" % (line, text[pos]))
        line += text.count("\n", pos, m.end())
        pos = m.end()
        if m.lastgroup == "int":
            out.append(("int", int(m.group()), line))
        elif m.lastgroup == "str":
            out.append(("str", m.group()[1:-1], line))
        elif m.lastgroup == "ident":
            out.append(("ident", m.group(), line))
        elif m.lastgroup == "punct":
            out.append(("punct", m.group(), line))
    out.append(("end", None, line))
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0
        self.env = {}

    def peek(self):
        return self.tokens[self.i]

    def take(self, ttype=None, value=None):
        tok = self.tokens[self.i]
        if ttype is not None and tok[0] != ttype:
            raise RecordError(
                "line %d: expected %s, found %r" % (tok[2], ttype, tok[1])
            )
        if value is not None and tok[1] != value:
            raise RecordError(
                "line %d: expected %r, found %r" % (tok[2], value, tok[1])
            )
        self.i += 1
        return tok

    def parse_file(self):
        records = []
        while self.peek()[0] != "end":
            name = None
            tok = self.take("ident")
            if self.peek()[:2] == ("punct", "="):
                if tok[1] in KINDS:
                    raise RecordError(
                        "line %d: %r cannot name a record" % (tok[2], tok[1])
                    )
                name = tok[1]
                self.take("punct", "=")
                tok = self.take("ident")
            if tok[1] not in KINDS:
                raise RecordError(
                    "line %d: unknown record kind %r" % (tok[2], tok[1])
                )
            obj = self._build(tok[1], self._fields(), tok[2])
            if name is not None:
                self.env[name] = obj
            records.append((name, obj))
        if not records:
            raise RecordError("no records found")
        return records

    def _fields(self):
        self.take("punct", "{")
        fields = {}
        while True:
            tok = self.peek()
            if tok[:2] == ("punct", "}"):
                self.take()
                return fields
            key = self.take("ident")
            self.take("punct", "=")
            fields[key[1]] = self._value()
            if self.peek()[:2] == ("punct", ";"):
                self.take()
            elif self.peek()[:2] != ("punct", "}"):
                raise RecordError(
                    "line %d: expected ';' or '}'" % self.peek()[2]
                )

    def _value(self):
        ttype, val, ln = self.peek()
        if ttype in ("int", "str"):
            self.take()
            return val
        if (ttype, val) == ("punct", "@"):
            self.take()
            ref = self.take("ident")
            if ref[1] not in self.env:
                raise RecordError("line %d: undefined name %r" % (ref[2], ref[1]))
            return self.env[ref[1]]
        if (ttype, val) == ("punct", "["):
            self.take()
            items = []
            while self.peek()[:2] != ("punct", "]"):
                items.append(self._value())
                if self.peek()[:2] == ("punct", ","):
                    self.take()
                elif self.peek()[:2] != ("punct", "]"):
                    raise RecordError("line %d: expected ',' or ']'" % self.peek()[2])
            self.take()
            return items
        if (ttype, val) == ("punct", "{"):
            return self._fields()
        if ttype == "ident" and val in KINDS:
            self.take()
            return self._build(val, self._fields(), ln)
        raise RecordError("line %d: expected a value, found %r" % (ln, val))

    def _build(self, kind, fields, line):
        try:
            return _BUILDERS[kind](fields)
        except RecordError:
            raise
        except (TypeError, ValueError, KeyError, AssertionError) as exc:
            raise RecordError(
                "line %d: bad %s record: %s" % (line, kind, exc)
            ) from exc


def _need(fields, key, kind):
    if key not in fields:
        raise RecordError("%s record needs a %r field" % (kind, key))
    return fields[key]


def _point_list(value, what):
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise RecordError("%s must be a list of integers" % what)
    return value


def _build_space(fields):
    n = _need(fields, "n", "space")
    opens = _need(fields, "opens", "space")
    masks = [mask_of(_point_list(u, "each open set")) for u in opens]
    return make_space(n, masks)


def _as_space(value, what):
    if not isinstance(value, FinSpace):
        raise RecordError("%s must be a space record or @ref" % what)
    return value


def _build_map(fields):
    dom = _as_space(_need(fields, "domain", "map"), "domain")
    cod = _as_space(_need(fields, "codomain", "map"), "codomain")
    table = _point_list(_need(fields, "table", "map"), "table")
    return make_map(dom, cod, table)


def _build_rel(fields):
    space = _as_space(_need(fields, "space", "rel"), "space")
    blocks = _need(fields, "blocks", "rel")
    if not isinstance(blocks, list):
        raise RecordError("blocks must be a list of point lists")
    return from_blocks(space, [_point_list(b, "each block") for b in blocks])


def _build_sublattice(fields):
    n = _need(fields, "n", "sublattice")
    if "generators" in fields:
        if "zeros" in fields or "ties" in fields:
            raise RecordError(
                "sublattice takes either generators or zeros/ties, not both"
            )
        gens = [
            tuple(Fraction(v) for v in _rational_list(g))
            for g in fields["generators"]
        ]
        return canonical_form(n, gens)
    zeros = _point_list(fields.get("zeros", []), "zeros")
    ties = []
    for t in fields.get("ties", []):
        if not isinstance(t, dict):
            raise RecordError("each tie must be {x=..; z=..; ratio=\"p/q\"}")
        ties.append((
            _need(t, "x", "tie"),
            _need(t, "z", "tie"),
            Fraction(_need(t, "ratio", "tie")),
        ))
    return from_constraints(n, zeros=zeros, ties=ties)


def _rational_list(value):
    if not isinstance(value, list):
        raise RecordError("expected a list of numbers")
    return [Fraction(v) for v in value]


def _build_hom(fields):
    rows = _need(fields, "rows", "hom")
    if not isinstance(rows, list):
        raise RecordError("rows must be a list of lists")
    return HomMatrix([_rational_list(r) for r in rows])


_BUILDERS = {
    "space": _build_space,
    "map": _build_map,
    "rel": _build_rel,
    "sublattice": _build_sublattice,
    "hom": _build_hom,
}


def parse_records(text):
    """All records in the file, as (name_or_None, object) pairs."""
    return _Parser(text).parse_file()


_KIND_OF = (
    (FinSpace, "space"),
    (ContMap, "map"),
    (EquivRel, "rel"),
    (ConstraintSystem, "sublattice"),
    (HomMatrix, "hom"),
)


def load_record(text, kind=None):
    """The last record in the file, optionally of a required kind."""
    records = parse_records(text)
    if kind is None:
        return records[-1][1]
    want = next(cls for cls, k in _KIND_OF if k == kind)
    for _, obj in reversed(records):
        if isinstance(obj, want):
            return obj
    raise RecordError("no %s record in the file" % kind)


def _fmt_points(mask):
    return "[%s]" % ",".join(str(x) for x in mask_to_list(mask))


def emit_space(space):
    opens = ", ".join(_fmt_points(u) for u in space.opens)
    return "space { n = %d; opens = [ %s ] }" % (space.n, opens)


def emit_map(m):
    return "map { domain = %s; codomain = %s; table = [%s] }" % (
        emit_space(m.domain),
        emit_space(m.codomain),
        ",".join(str(y) for y in m.table),
    )


def emit_rel(rel):
    blocks = ", ".join(_fmt_points(b) for b in rel.blocks)
    return "rel { space = %s; blocks = [ %s ] }" % (
        emit_space(rel.space), blocks
    )


def emit_sublattice(cs):
    parts = ["n = %d" % cs.n]
    zeros = mask_to_list(cs.zero_mask)
    if zeros:
        parts.append("zeros = [%s]" % ",".join(str(x) for x in zeros))
    ties = [
        '{x=%d; z=%d; ratio="%s"}' % (x, cs.rep[x], cs.ratio[x])
        for x in range(cs.n)
        if not cs.zero_mask >> x & 1 and cs.rep[x] != x
    ]
    if ties:
        parts.append("ties = [ %s ]" % ", ".join(ties))
    return "sublattice { %s }" % "; ".join(parts)


def emit_hom(t):
    rows = ", ".join(
        "[%s]" % ",".join('"%s"' % v for v in row) for row in t.entries
    )
    return "hom { rows = [ %s ] }" % rows
