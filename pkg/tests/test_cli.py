import json
import subprocess
import sys

import pytest

from cotilt import (
    ZERO,
    CharacteristicSequence,
    IntegerPrime,
    IntegerQuotient,
    Integers,
    PolyOverPrimeField,
    dedekind_like,
    enumerate_compatible_families,
    enumerate_sequences,
    localization_family,
    synthetic,
)
from cotilt import serialize
from cotilt.cli import main, run
from cotilt.errors import InputError
from cotilt.zhomology.modules import FgZModule, LocalizedModule, MatlisModule

Z = Integers()
P = IntegerPrime

DED2 = {"ring": "synthetic", "primes": ["0", "m1", "m2"], "order": [["0", "m1"], ["0", "m2"]],
        "maximal": ["m1", "m2"], "gorenstein_heights": True}


def zseq_doc(*levels):
    return {"ring": {"ring": "Z"}, "n": len(levels), "levels": list(levels)}


def dim1(zero, **maxes):
    return {"kind": "dim1", "zero": zero, "max": maxes or {"finite": []}}


def call(*argv):
    return run([str(a) for a in argv])


def inline(doc):
    return json.dumps(doc)


# --- subcommands ------------------------------------------------------------------


def test_enumerate_count(tmp_path):
    f = tmp_path / "ded2.json"
    f.write_text(json.dumps(DED2))
    r = call("enumerate", f, "-n", 1, "--count")
    assert (r.exit_code, r.lines) == (0, ["4"])
    r = call("enumerate", f, "-n", 2, "--json")
    assert r.payload["count"] == 4 and len(r.payload["sequences"]) == 4


def test_count_families_matches_sequences():
    for n in (1, 2, 3):
        a = call("count", inline(DED2), "-n", n, "--inline")
        b = call("count", inline(DED2), "-n", n, "--inline", "--families")
        assert a.payload["count"] == b.payload["count"] == 4


def test_validate_ok_and_violation():
    ok = call("validate", inline(zseq_doc(dim1(True, finite=["(2)"]))), "--inline")
    assert ok.exit_code == 0 and ok.lines == ["ok"]
    bad = call("validate", inline(zseq_doc(dim1(False, finite=["(2)"]))), "--inline")
    assert bad.exit_code == 1
    assert bad.lines[0].startswith("violation (i) level 0 at (0)")


def test_localize_at_and_family():
    doc = inline(zseq_doc(dim1(True, cofinite_excluding=["(3)"])))
    r = call("localize", doc, "--inline", "--at", "3")
    assert r.exit_code == 0 and r.payload["at"] == "(3)"
    r = call("localize", doc, "--inline")
    assert r.payload["family"]["default"] == [["max", "zero"]]
    assert list(r.payload["family"]["exceptions"]) == ["(3)"]


def test_glue_and_incompatible_family():
    fam = {"ring": {"ring": "Z"}, "n": 1, "default": [["zero"]],
           "exceptions": {"(5)": [dim1(True, finite=["(5)"])]}}
    r = call("glue", inline(fam), "--inline", "--json")
    assert r.exit_code == 0
    assert r.payload["sequence"]["levels"] == [dim1(True, finite=["(5)"])]
    ring = dict(DED2, primes=["0", "q", "m1", "m2"],
                order=[["0", "q"], ["q", "m1"], ["q", "m2"]])
    bad = {"ring": ring, "n": 1, "exceptions": {
        "m1": [{"kind": "bitset", "elems": ["0", "q"]}],
        "m2": [{"kind": "bitset", "elems": ["0"]}]}}
    assert call("glue", inline(bad), "--inline").exit_code == 1
    check = call("check-family", inline(bad), "--inline")
    assert check.exit_code == 1 and "compat" in check.lines[0]


def test_member_both_sides():
    seq = inline(zseq_doc(dim1(True, finite=["(2)"])))
    r = call("member", "--module", inline({"rank": 0, "torsion": [[2, 3, 1]]}), "--seq", seq,
             "--side", "tilting", "--inline")
    assert (r.exit_code, r.lines) == (0, ["true"])
    r = call("member", "--module", inline({"rank": 0, "torsion": [[2, 1, 1], [3, 1, 1]]}),
             "--seq", seq, "--side", "tilting", "--inline")
    assert (r.exit_code, r.lines) == (1, ["false"])
    r = call("member", "--module", inline({"divisible_rank": 0, "finite": {"rank": 0, "torsion": [[2, 1, 1]]}}),
             "--seq", seq, "--side", "cotilting", "--inline")
    assert r.exit_code == 0


def test_oracle_subcommands():
    assert call("oracle", "bass").exit_code == 0
    r = call("oracle", "cartanei", "--part", "b", "--max-order", 8, "--json")
    assert r.exit_code == 0 and r.payload["checked"] > 0
    assert call("oracle", "dual-coloc", "--max-order", 16).exit_code == 0
    assert call("oracle", "coloc", "--max-order", 16, "--primes", 2, 3).exit_code == 0
    r = call("oracle", "membership", "--max-order", 4, "--primes", 2, 3)
    assert r.exit_code == 0 and r.lines[0].startswith("membership-duality:")
    r = call("oracle", "roundtrip-z", "--samples", 50, "--seed", 3)
    assert r.exit_code == 0 and r.payload["seed"] == 3


# --- errors and output ------------------------------------------------------------


def test_bad_input_exit_codes(tmp_path):
    assert call("validate", tmp_path / "missing.json").exit_code == 2
    f = tmp_path / "mal.json"
    f.write_text(json.dumps({"ring": {"ring": "Z"}, "n": 1, "levels": [{"kind": "dim1", "zero": 3, "max": {}}]}))
    r = call("validate", f)
    assert r.exit_code == 2
    assert r.lines == [f"error: {f}: levels[0].zero: expected true or false"]
    assert call("validate", "{not json", "--inline").exit_code == 2
    assert call("bogus").exit_code == 2
    assert call("enumerate", inline({"ring": "Z"}), "-n", 1, "--inline").exit_code == 2
    r = call("localize", inline(zseq_doc(dim1(True))), "--inline", "--at", "4")
    assert r.exit_code == 2


def test_precondition_error_is_reported():
    r = call("localize", inline(zseq_doc(dim1(False, finite=["(2)"]))), "--inline", "--at", "2")
    assert r.exit_code == 2 and r.lines[0].startswith("error:")


def test_output_is_deterministic(capsys):
    argv = ["enumerate", inline(DED2), "-n", "2", "--inline", "--json"]
    outs = []
    for _ in range(2):
        assert main(argv) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["status"] == "ok"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cotilt", "count", json.dumps(DED2), "-n", "3", "--inline"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "4"


# --- serialization round trips ----------------------------------------------------


def _roundtrip(dump, load, obj):
    text = json.dumps(dump(obj), sort_keys=True)
    again = load(json.loads(text))
    assert json.dumps(dump(again), sort_keys=True) == text
    return again


def test_ring_round_trips():
    rings = [Z, PolyOverPrimeField(3), IntegerQuotient(12), dedekind_like(3),
             synthetic(["a", "b"], [("a", "b")], bass={0: ["a"], 1: ["b"]})]
    for R in rings:
        assert _roundtrip(serialize.dump_ring, serialize.load_ring, R) == R


def test_sequence_and_family_round_trips():
    R = synthetic(["0", "q", "m1", "m2"], [("0", "q"), ("q", "m1"), ("q", "m2")], gorenstein_heights=True)
    for s in enumerate_sequences(R, 2):
        assert _roundtrip(serialize.dump_sequence, serialize.load_sequence, s).levels == s.levels
    for f in enumerate_compatible_families(R, 2):
        assert _roundtrip(serialize.dump_family, serialize.load_family, f) == f
    s = CharacteristicSequence(Z, (Z.dim_one_set(True, True, [P(7)]), Z.full_set()))
    assert _roundtrip(serialize.dump_sequence, serialize.load_sequence, s).levels == s.levels
    f = localization_family(CharacteristicSequence(Z, (Z.prime_set([ZERO, P(3)]),)))
    assert _roundtrip(serialize.dump_family, serialize.load_family, f) == f


def test_module_round_trips():
    mods = [FgZModule.from_cyclic([0, 4, 3]), FgZModule(), LocalizedModule(2, 1, [(1, 1)]),
            MatlisModule(2, FgZModule.from_cyclic([6]))]
    for M in mods:
        assert _roundtrip(serialize.dump_module, serialize.load_module, M) == M


def test_loader_diagnostics_carry_paths():
    with pytest.raises(InputError, match=r"levels\[1\]"):
        serialize.load_sequence(zseq_doc(dim1(True), {"kind": "nope"}))
    with pytest.raises(InputError, match="expected 2 levels"):
        serialize.load_sequence({"ring": {"ring": "Z"}, "n": 2, "levels": [dim1(True)]})
    with pytest.raises(InputError):
        serialize.load_module({"rank": -1, "torsion": []})
