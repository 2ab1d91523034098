"""Command-line front door.

Subcommands parse interchange records, run the classification and
verification machinery, and emit text or structured (JSON) reports.
Exit codes: 0 all-pass, 1 property or assertion failure (witness
emitted), 2 usage or parse error.
"""

import argparse
import json
import sys

from . import comphom, contmap, equivrel, finspace, funclat, records
from .bitset import mask_of
from .verify import (
    MUTATIONS,
    PROPERTY_ORDER,
    SuiteConfig,
    grid_scenario,
    intero_scenario,
    run_suite,
)


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _flag(value):
    if value is None:
        return "n/a"
    return "true" if value else "false"


def _emit(args, text_lines, structured):
    if args.format == "structured":
        print(json.dumps(structured, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _cmd_space_props(args):
    space = records.load_record(_read(args.file), "space")
    lines = [records.emit_space(space), "points: %d" % space.n,
             "opens: %d" % len(space.opens)]
    structured = {
        "record": records.emit_space(space),
        "n": space.n,
        "open_count": len(space.opens),
    }
    if args.subset is not None:
        mask = mask_of(args.subset)
        if mask & ~space.full:
            raise ValueError("subset points must lie in 0..%d" % (space.n - 1))
        props = finspace.classify_subset(space, mask)
        flags = {
            "open": space.is_open(mask),
            "closed": props.closed,
            "dense": props.dense,
            "nowhere_dense": props.nowhere_dense,
            "canonically_closed": props.canonically_closed,
            "canonically_open": props.canonically_open,
            "clopen": props.clopen,
        }
        lines.append("subset [%s]:" % ",".join(str(x) for x in sorted(set(args.subset))))
        for name, value in flags.items():
            lines.append("  %-20s %s" % (name, _flag(value)))
        structured["subset"] = sorted(set(args.subset))
        structured["subset_props"] = flags
    _emit(args, lines, structured)
    return 0


def _cmd_classify_map(args):
    m = records.load_record(_read(args.file), "map")
    try:
        cls = contmap.classify_map(m)
    except AssertionError:
        print("classification consistency failed", file=sys.stderr)
        print(records.emit_map(m), file=sys.stderr)
        return 1
    lines = [records.emit_map(m), "", "%-20s %-6s %s" % ("class", "value", "routine")]
    for name, value in cls.flags().items():
        lines.append("%-20s %-6s %s" % (name, _flag(value), cls.procedure_ids[name]))
    lines.append("")
    lines.append("%-16s %-20s %-11s %s" % ("procedure", "target", "kind", "value"))
    table = []
    for pid in sorted(contmap.PROCEDURES):
        proc = contmap.PROCEDURES[pid]
        value = contmap.decide_by(m, proc.target, pid)
        lines.append(
            "%-16s %-20s %-11s %s" % (pid, proc.target, proc.kind, _flag(value))
        )
        table.append(
            {"id": pid, "target": proc.target, "kind": proc.kind, "value": value}
        )
    structured = {
        "record": records.emit_map(m),
        "classification": cls.flags(),
        "routines": cls.procedure_ids,
        "procedures": table,
    }
    _emit(args, lines, structured)
    return 0


def _cmd_quotient(args):
    rel = records.load_record(_read(args.file), "rel")
    qspace, projection = equivrel.quotient(rel)
    closed = equivrel.is_closed_relation(rel)
    flags = contmap.classify_map(projection)
    lines = [
        records.emit_rel(rel),
        "blocks: %d" % len(rel.blocks),
        "closed relation: %s" % _flag(closed),
        "quotient: %s" % records.emit_space(qspace),
        "projection: %s" % records.emit_map(projection),
        "projection quotient_map: %s" % _flag(flags.quotient_map),
        "projection closed_map: %s" % _flag(flags.closed_map),
    ]
    structured = {
        "record": records.emit_rel(rel),
        "block_count": len(rel.blocks),
        "closed_relation": closed,
        "quotient_record": records.emit_space(qspace),
        "projection_record": records.emit_map(projection),
        "projection": flags.flags(),
    }
    _emit(args, lines, structured)
    return 0


def _cmd_lattice_canonical(args):
    cs = records.load_record(_read(args.file), "sublattice")
    lines = [records.emit_sublattice(cs), "dimension: %d" % funclat.dim(cs)]
    structured = {
        "record": records.emit_sublattice(cs),
        "n": cs.n,
        "dimension": funclat.dim(cs),
    }
    _emit(args, lines, structured)
    return 0


def _cmd_lattice_classify(args):
    ambient = records.load_record(_read(args.ambient), "sublattice")
    sub = records.load_record(_read(args.sub), "sublattice")
    if ambient.n != sub.n:
        raise ValueError(
            "ambient and sublattice live on different coordinate counts"
        )
    if not funclat.contains(ambient, sub):
        raise ValueError("second record is not a sublattice of the first")
    try:
        flags = funclat.classify_sublattice(ambient, sub)
    except AssertionError:
        print("sublattice flag hierarchy failed", file=sys.stderr)
        print(records.emit_sublattice(sub), file=sys.stderr)
        return 1
    names = (
        "ideal", "band", "projection_band", "order_dense",
        "urysohn", "weakly_urysohn", "regular",
    )
    lines = [records.emit_sublattice(ambient), records.emit_sublattice(sub), ""]
    for name in names:
        lines.append("%-17s %s" % (name, _flag(getattr(flags, name))))
    structured = {
        "ambient_record": records.emit_sublattice(ambient),
        "sub_record": records.emit_sublattice(sub),
        "flags": {name: getattr(flags, name) for name in names},
    }
    _emit(args, lines, structured)
    return 0


def _cmd_hom_check(args):
    try:
        t = records.load_record(_read(args.file), "hom")
    except records.RecordError as outer:
        # a well-formed record whose matrix fails the test is a verdict,
        # not a usage error; surface the rejection witness
        exc = outer.__cause__
        if not isinstance(exc, comphom.NotHomomorphism):
            raise
        witness = list(str(v) for v in exc.witness) if exc.witness else None
        if args.format == "structured":
            print(json.dumps(
                {"accepted": False, "reason": str(exc), "witness": witness},
                sort_keys=True, separators=(",", ":"),
            ))
        else:
            print("rejected: %s" % exc)
            if witness:
                print("witness f = [%s]" % ", ".join(witness))
        return 1
    weights, coords = comphom.normal_form(t)
    conditions = comphom.hoc_conditions(t)
    lines = [
        records.emit_hom(t),
        "shape: %d x %d" % (t.m, t.n),
        "weights: [%s]" % ", ".join(str(w) for w in weights),
        "coordinates: [%s]" % ", ".join(
            "-" if c is None else str(c) for c in coords
        ),
    ]
    for name in sorted(conditions):
        lines.append("%-18s %s" % (name, _flag(conditions[name])))
    lines.append("order continuous: %s" % _flag(all(conditions.values())))
    structured = {
        "accepted": True,
        "record": records.emit_hom(t),
        "shape": [t.m, t.n],
        "weights": [str(w) for w in weights],
        "coordinates": list(coords),
        "conditions": conditions,
        "order_continuous": all(conditions.values()),
    }
    _emit(args, lines, structured)
    return 0


def _cmd_certify(args):
    m = records.load_record(_read(args.map), "map")
    e = records.load_record(_read(args.lattice), "sublattice")
    try:
        report = comphom.certify_composition(m, e)
    except AssertionError:
        print("certificate disagrees with the direct lattice verdict",
              file=sys.stderr)
        print(records.emit_map(m), file=sys.stderr)
        return 1
    lines = [records.emit_map(m), records.emit_sublattice(e), ""]
    lines.append("certificates:")
    for name in sorted(report.certificates):
        lines.append("  %-22s %s" % (name, _flag(report.certificates[name])))
    lines.append("conclusions:")
    for name in sorted(report.conclusions):
        lines.append("  %-22s %s" % (name, _flag(report.conclusions[name])))
    if report.discrete:
        lines.append("direct lattice verdicts (discrete cross-check):")
        for name in sorted(report.direct):
            lines.append("  %-22s %s" % (name, _flag(report.direct[name])))
    structured = {
        "map_record": records.emit_map(m),
        "lattice_record": records.emit_sublattice(e),
        "certificates": report.certificates,
        "conclusions": report.conclusions,
        "direct": report.direct,
        "discrete": report.discrete,
    }
    _emit(args, lines, structured)
    return 0


def _cmd_enumerate(args):
    n = args.points
    preorder = list(finspace.enumerate_topologies(n, strategy="preorder"))
    if args.strategy in ("filter", "both"):
        filtered = list(finspace.enumerate_topologies(n, strategy="filter"))
        if args.strategy == "both":
            assert len(filtered) == len(preorder)
            assert [s.opens for s in filtered] == [s.opens for s in preorder]
        spaces = filtered if args.strategy == "filter" else preorder
    else:
        spaces = preorder
    if args.count_only:
        if args.format == "structured":
            print(json.dumps(
                {"n": n, "count": len(spaces), "strategy": args.strategy},
                sort_keys=True, separators=(",", ":"),
            ))
        else:
            print(len(spaces))
        return 0
    lines = [records.emit_space(s) for s in spaces]
    structured = {
        "n": n,
        "count": len(spaces),
        "strategy": args.strategy,
        "records": lines,
    }
    _emit(args, lines, structured)
    return 0


def _cmd_verify(args):
    if args.props:
        unknown = [p for p in args.props if p not in PROPERTY_ORDER]
        if unknown:
            raise ValueError(
                "unknown properties %s; known: %s"
                % (", ".join(unknown), ", ".join(PROPERTY_ORDER))
            )
    if args.mutation is not None and args.mutation not in MUTATIONS:
        raise ValueError(
            "unknown mutation %r; known: %s"
            % (args.mutation, ", ".join(sorted(MUTATIONS)))
        )
    config = SuiteConfig(
        max_points=args.max_points,
        sample_points=args.sample_points,
        sample_budget=args.sample_budget,
        properties=tuple(args.props or ()),
        seed=args.seed,
        workers=args.workers,
        lattice_dim=args.lattice_dim,
        mutation=args.mutation,
        include_timing=args.include_timing,
    )
    report = run_suite(config)
    if args.format == "structured":
        sys.stdout.write(report.canonical_bytes().decode("utf-8") + "\n")
    else:
        print(report.to_text())
    return 0 if report.ok else 1


def _cmd_example_intero(args):
    report = intero_scenario(args.depth)
    _emit(args, [report.to_text()], report.to_structured())
    return 0 if report.ok else 1


def _cmd_example_grid(args):
    report = grid_scenario(args.k)
    _emit(args, [report.to_text()], report.to_structured())
    return 0 if report.ok else 1


def _add_format(parser):
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text",
        help="output style; structured is line-oriented JSON",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finlat",
        description="finite-space and function-lattice workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space-props", help="subset properties of a space record")
    p.add_argument("file")
    p.add_argument("--subset", nargs="+", type=int, default=None,
                   help="points of the subset to classify")
    _add_format(p)
    p.set_defaults(run=_cmd_space_props)

    p = sub.add_parser("classify-map", help="all class flags plus the procedure table")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(run=_cmd_classify_map)

    p = sub.add_parser("quotient", help="quotient space and projection of a rel record")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(run=_cmd_quotient)

    lat = sub.add_parser("lattice", help="sublattice canonicalization and flags")
    latsub = lat.add_subparsers(dest="lattice_command", required=True)
    p = latsub.add_parser("canonical", help="canonical constraint form of a record")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(run=_cmd_lattice_canonical)
    p = latsub.add_parser("classify", help="structure flags of sub inside ambient")
    p.add_argument("ambient")
    p.add_argument("sub")
    _add_format(p)
    p.set_defaults(run=_cmd_lattice_classify)

    hom = sub.add_parser("hom", help="operator checks")
    homsub = hom.add_subparsers(dest="hom_command", required=True)
    p = homsub.add_parser("check", help="verify a hom record and its conditions")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(run=_cmd_hom_check)

    p = sub.add_parser("certify", help="map certificates vs lattice conclusions")
    p.add_argument("map")
    p.add_argument("lattice")
    _add_format(p)
    p.set_defaults(run=_cmd_certify)

    p = sub.add_parser("enumerate", help="all topologies on n labelled points")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--strategy", choices=("preorder", "filter", "both"),
                   default="both")
    _add_format(p)
    p.set_defaults(run=_cmd_enumerate)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--props", nargs="+", default=None,
                   help="property ids to run (default: all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sample-budget", type=int, default=2000)
    p.add_argument("--sample-points", type=int, default=4)
    p.add_argument("--lattice-dim", type=int, default=3)
    p.add_argument("--mutation", default=None,
                   help="named defect to install first (expected to fail)")
    p.add_argument("--include-timing", action="store_true")
    _add_format(p)
    p.set_defaults(run=_cmd_verify)

    ex = sub.add_parser("example", help="worked scenario reproductions")
    exsub = ex.add_subparsers(dest="example_command", required=True)
    p = exsub.add_parser("intero", help="binary-expansion interval gluing")
    p.add_argument("--depth", type=int, default=12)
    _add_format(p)
    p.set_defaults(run=_cmd_example_intero)
    p = exsub.add_parser("grid", help="triangulated grid collapse quotients")
    p.add_argument("--k", type=int, default=4)
    _add_format(p)
    p.set_defaults(run=_cmd_example_grid)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
