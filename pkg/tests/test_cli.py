"""End-to-end CLI behavior: output, round-trips, and the 0/1/2 exit contract."""

import json

import pytest

from finlat import canonical_form, classify_subset, full_space
from finlat.cli import main
from finlat.records import load_record

SIER = "space { n = 2; opens = [ [], [1], [0,1] ] }"
DISC2 = "space { n = 2; opens = [ [], [0], [1], [0,1] ] }"
DISC3 = ("space { n = 3; opens = [ [], [0], [1], [2], [0,1], [0,2], [1,2], "
         "[0,1,2] ] }")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record_file(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# enumerate


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_enumerate_count_only(capsys, n, count):
    code, out, _ = run_cli(capsys, "enumerate", "--points", str(n),
                           "--count-only")
    assert code == 0
    assert out.strip() == str(count)


def test_enumerate_structured_and_strategies(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--points", "3",
                           "--count-only", "--format", "structured")
    assert code == 0
    assert json.loads(out) == {"n": 3, "count": 29, "strategy": "both"}
    for strategy in ("preorder", "filter"):
        code, out, _ = run_cli(capsys, "enumerate", "--points", "3",
                               "--count-only", "--strategy", strategy)
        assert code == 0 and out.strip() == "29"


def test_enumerate_listing_round_trips(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--points", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    seen = set()
    for line in lines:
        space = load_record(line, "space")
        assert space.n == 2
        seen.add(tuple(space.opens))
    assert len(seen) == 4


# ---------------------------------------------------------------------------
# space-props


def test_space_props_subset_flags(capsys, tmp_path):
    path = record_file(tmp_path, "s.rec", SIER)
    code, out, _ = run_cli(capsys, "space-props", path, "--subset", "1",
                           "--format", "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["n"] == 2
    assert blob["open_count"] == 3
    space = load_record(blob["record"], "space")
    props = classify_subset(space, 0b10)
    assert blob["subset_props"] == {
        "open": True,
        "closed": props.closed,
        "dense": props.dense,
        "nowhere_dense": props.nowhere_dense,
        "canonically_closed": props.canonically_closed,
        "canonically_open": props.canonically_open,
        "clopen": props.clopen,
    }
    assert blob["subset_props"]["dense"] is True
    assert blob["subset_props"]["closed"] is False


def test_space_props_subset_out_of_range(capsys, tmp_path):
    path = record_file(tmp_path, "s.rec", SIER)
    code, _, err = run_cli(capsys, "space-props", path, "--subset", "5")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# classify-map


def test_classify_map_table(capsys, tmp_path):
    text = "map { domain = %s; codomain = %s; table = [0,1] }" % (DISC2, SIER)
    path = record_file(tmp_path, "m.rec", text)
    code, out, _ = run_cli(capsys, "classify-map", path, "--format",
                           "structured")
    assert code == 0
    blob = json.loads(out)
    cls = blob["classification"]
    assert len(cls) == 13
    assert cls["injective"] is True
    assert cls["surjective"] is True
    assert cls["skeletal"] is False
    assert cls["almost_open"] is False
    assert blob["routines"]["skeletal"] == "sk-stars"
    assert len(blob["procedures"]) == 33
    by_id = {row["id"]: row for row in blob["procedures"]}
    assert by_id["wo-iii"]["target"] == "almost_open"
    assert by_id["wo-iii"]["kind"] == "iff"
    reloaded = load_record(blob["record"], "map")
    assert reloaded.table == (0, 1)

    code, text_out, _ = run_cli(capsys, "classify-map", path)
    assert code == 0
    assert "wo-iii" in text_out and "n/a" in text_out


# ---------------------------------------------------------------------------
# quotient


def test_quotient_emits_reparseable_records(capsys, tmp_path):
    text = "rel { space = %s; blocks = [ [0,1], [2] ] }" % DISC3
    path = record_file(tmp_path, "r.rec", text)
    code, out, _ = run_cli(capsys, "quotient", path, "--format", "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["block_count"] == 2
    assert blob["closed_relation"] is True
    qspace = load_record(blob["quotient_record"], "space")
    assert qspace.n == 2
    assert len(qspace.opens) == 4
    projection = load_record(blob["projection_record"], "map")
    assert projection.table == (0, 0, 1)
    assert blob["projection"]["quotient_map"] is True


# ---------------------------------------------------------------------------
# lattice


def test_lattice_canonical_round_trip(capsys, tmp_path):
    path = record_file(tmp_path, "l.rec",
                       "sublattice { n = 2; generators = [ [2,4] ] }")
    code, out, _ = run_cli(capsys, "lattice", "canonical", path,
                           "--format", "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["dimension"] == 1
    assert load_record(blob["record"], "sublattice") == canonical_form(
        2, ((2, 4),))


def test_lattice_classify_flags_and_rejection(capsys, tmp_path):
    ambient = record_file(tmp_path, "amb.rec", "sublattice { n = 2 }")
    sub = record_file(tmp_path, "sub.rec",
                      "sublattice { n = 2; generators = [ [1,0] ] }")
    code, out, _ = run_cli(capsys, "lattice", "classify", ambient, sub,
                           "--format", "structured")
    assert code == 0
    flags = json.loads(out)["flags"]
    assert flags["ideal"] is True
    assert flags["band"] is True
    assert flags["order_dense"] is False
    assert flags["regular"] is True

    other = record_file(tmp_path, "oth.rec",
                        "sublattice { n = 2; generators = [ [0,1] ] }")
    code, _, err = run_cli(capsys, "lattice", "classify", sub, other)
    assert code == 2
    assert "not a sublattice" in err


# ---------------------------------------------------------------------------
# hom


def test_hom_check_accepts(capsys, tmp_path):
    path = record_file(tmp_path, "h.rec",
                       'hom { rows = [ ["2","0"], ["0","1/3"] ] }')
    code, out, _ = run_cli(capsys, "hom", "check", path, "--format",
                           "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["accepted"] is True
    assert blob["shape"] == [2, 2]
    assert blob["weights"] == ["2", "1/3"]
    assert blob["coordinates"] == [0, 1]
    assert sorted(blob["conditions"]) == [
        "band-preimages", "chain-continuity", "directed-sups",
        "image-dd", "kernel-band",
    ]
    assert blob["order_continuous"] is True


def test_hom_check_rejects_with_witness(capsys, tmp_path):
    path = record_file(tmp_path, "h.rec", 'hom { rows = [ ["1","1"] ] }')
    code, out, _ = run_cli(capsys, "hom", "check", path, "--format",
                           "structured")
    assert code == 1
    blob = json.loads(out)
    assert blob["accepted"] is False
    assert blob["witness"]


def test_hom_check_malformed_is_usage_error(capsys, tmp_path):
    path = record_file(tmp_path, "h.rec", "hom { rows = [ [oops] ] }")
    code, _, err = run_cli(capsys, "hom", "check", path)
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# certify


def test_certify_discrete_cross_check(capsys, tmp_path):
    map_path = record_file(
        tmp_path, "m.rec",
        "map { domain = %s; codomain = %s; table = [0,1] }" % (DISC2, DISC2))
    lat_path = record_file(tmp_path, "l.rec", "sublattice { n = 2 }")
    code, out, _ = run_cli(capsys, "certify", map_path, lat_path,
                           "--format", "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["discrete"] is True
    assert blob["conclusions"] == blob["direct"]
    assert load_record(blob["lattice_record"], "sublattice") == full_space(2)


def test_certify_needs_full_lattice_off_discrete(capsys, tmp_path):
    map_path = record_file(
        tmp_path, "m.rec",
        "map { domain = %s; codomain = %s; table = [0,1] }" % (DISC2, SIER))
    lat_path = record_file(
        tmp_path, "l.rec", "sublattice { n = 2; generators = [ [1,0] ] }")
    code, _, err = run_cli(capsys, "certify", map_path, lat_path)
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_pass_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--props", "P-sat",
                           "--max-points", "1", "--sample-budget", "20")
    assert code == 0
    assert "suite: PASS" in out


def test_verify_structured_report(capsys):
    code, out, _ = run_cli(capsys, "verify", "--props", "P-eqr",
                           "--max-points", "2", "--sample-budget", "10",
                           "--format", "structured")
    assert code == 0
    blob = json.loads(out)
    assert blob["ok"] is True
    assert blob["results"][0]["property"] == "P-eqr"


def test_verify_mutation_fails_with_witness(capsys):
    code, out, _ = run_cli(capsys, "verify", "--props", "P-wo",
                           "--max-points", "2", "--sample-budget", "0",
                           "--mutation", "invert-wo-iii")
    assert code == 1
    assert "suite: FAIL" in out
    assert "witness P-wo" in out
    assert "wo-iii" in out


def test_verify_unknown_inputs_are_usage_errors(capsys):
    code, _, err = run_cli(capsys, "verify", "--props", "P-nope")
    assert code == 2
    assert "P-nope" in err
    code, _, err = run_cli(capsys, "verify", "--mutation", "nope",
                           "--props", "P-sat", "--max-points", "1",
                           "--sample-budget", "0")
    assert code == 2
    assert "unknown mutation" in err


# ---------------------------------------------------------------------------
# examples


def test_example_intero(capsys):
    code, out, _ = run_cli(capsys, "example", "intero", "--depth", "4")
    assert code == 0
    assert "scenario: PASS" in out
    code, out, _ = run_cli(capsys, "example", "intero", "--depth", "4",
                           "--format", "structured")
    assert code == 0
    assert json.loads(out)["schema"] == "finlat-intero-report/1"


def test_example_grid(capsys):
    code, out, _ = run_cli(capsys, "example", "grid", "--k", "2")
    assert code == 0
    assert "scenario: PASS" in out
    code, out, _ = run_cli(capsys, "example", "grid", "--k", "2",
                           "--format", "structured")
    assert code == 0
    assert json.loads(out)["schema"] == "finlat-grid-report/1"


def test_example_bad_size_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "example", "grid", "--k", "0")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# parser-level failures


def test_missing_file_is_usage_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "space-props",
                           str(tmp_path / "absent.rec"))
    assert code == 2
    assert "error:" in err


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as err:
        main(["enumerate", "--points", "2", "--bogus"])
    assert err.value.code == 2


def test_unknown_subcommand_rejected():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_no_arguments_rejected():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_malformed_record_is_usage_error(capsys, tmp_path):
    path = record_file(tmp_path, "bad.rec", "space { n = 2; opens = [ [] ")
    code, _, err = run_cli(capsys, "classify-map", path)
    assert code == 2
    assert "error:" in err
