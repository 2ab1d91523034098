"""Deliberate fault injection for exercising the property suite.

Each mutation patches one module-level binding, runs the suite body, then
restores the original.  The point is evidence that the suite has teeth: a
silent pass under any of these bugs would mean the corresponding property is
vacuous.  Callers outside tests should never enable them.
"""

from contextlib import contextmanager
from fractions import Fraction

from .. import contmap
from .. import funclat


def _install_inverted_wo_iii():
    original = contmap.PROCEDURES["wo-iii"]

    def flipped(m):
        return not original.evaluate(m)

    contmap.PROCEDURES["wo-iii"] = contmap.Procedure(
        original.id, original.target, original.kind, flipped,
        original.hypothesis, original.needs_family,
    )

    def undo():
        contmap.PROCEDURES["wo-iii"] = original

    return undo


def _install_saturation_drop():
    original = contmap.saturation

    def buggy(m, a):
        s = original(m, a)
        # lose the top point whenever the saturation actually grew
        if s != a and s.bit_count() >= 2:
            return s & ~(1 << (s.bit_length() - 1))
        return s

    contmap.saturation = buggy

    def undo():
        contmap.saturation = original

    return undo


def _install_ratio_flip():
    original = funclat._RatioForest

    class Flipped(original):
        def union(self, x, z, alpha):
            rx, wx = self.find(x)
            rz, wz = self.find(z)
            if rx == rz:
                if wx != alpha * wz:
                    self.dead[rx] = True
                return
            self.parent[rx] = rz
            # reciprocal of the correct edge weight
            self.weight[rx] = wx / (alpha * wz) if alpha * wz else Fraction(1)
            self.dead[rz] = self.dead[rz] or self.dead[rx]

    funclat._RatioForest = Flipped

    def undo():
        funclat._RatioForest = original

    return undo


MUTATIONS = {
    "invert-wo-iii": (
        "negate the registered wo-iii decision routine",
        _install_inverted_wo_iii,
    ),
    "saturation-drop": (
        "drop the highest point from any saturation that grew",
        _install_saturation_drop,
    ),
    "ratio-flip": (
        "store the reciprocal edge weight in the proportionality forest",
        _install_ratio_flip,
    ),
}


@contextmanager
def apply_mutation(name):
    if name is None:
        yield None
        return
    try:
        _, install = MUTATIONS[name]
    except KeyError:
        raise ValueError(
            "unknown mutation %r; known: %s" % (name, ", ".join(sorted(MUTATIONS)))
        ) from None
    undo = install()
    try:
        yield name
    finally:
        undo()
