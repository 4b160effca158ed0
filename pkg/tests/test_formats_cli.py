"""Input-format parsing, round-trip identity, and the command-line driver."""

import json
import os

import numpy as np
import pytest

from singeq import fixtures, formats
from singeq.cli import main
from singeq.errors import ParseError

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fx(name):
    return os.path.join(FIXDIR, name)


class TestParsing:
    def test_algebra_file(self):
        alg = formats.load_algebra(fx("d2.alg"))
        assert alg.dim == 2 and alg.field.p == 2

    def test_module_file(self):
        mod = formats.load_module(fx("k.mod"))
        assert mod.dim == 1 and mod.algebra is fixtures.D2()

    def test_complex_file_matches_builtin(self):
        cx = formats.load_complex(fx("tper.cx"))
        ref = fixtures.t_per()
        for n in range(-2, 3):
            assert cx.term(n).dim == ref.term(n).dim
            assert np.array_equal(cx.diff(n) % 2, ref.diff(n) % 2)

    def test_map_file(self):
        f = formats.load_chain_map(fx("xid.map"))
        f.validate()
        assert np.array_equal(f.component(0),
                              np.array([[0, 0], [1, 0]], dtype=np.int64))

    def test_builtin_names_resolve(self):
        assert formats.load_module("k").dim == 1
        assert formats.load_complex("T_per[2]").lo == 2

    def test_parse_error_carries_location(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\n  broken")
        with pytest.raises(ParseError) as exc:
            formats.load_json(str(bad))
        assert exc.value.line == 2 and exc.value.column is not None

    def test_missing_field_rejected(self):
        with pytest.raises(ParseError):
            formats.algebra_from_doc({"p": 2})

    def test_matrices_reduced_mod_p(self):
        doc = json.load(open(fx("k.mod")))
        doc["action"] = [[[3]], [[2]]]
        mod = formats.module_from_doc(doc)
        assert mod.action[0][0, 0] == 1 and mod.action[1][0, 0] == 0

    def test_inline_algebra_interned(self):
        alg_doc = json.load(open(fx("d2.alg")))
        m1 = formats.module_from_doc(
            {"algebra": alg_doc, "dim": 1, "action": [[[1]], [[0]]]})
        m2 = formats.module_from_doc(
            {"algebra": dict(alg_doc), "dim": 2,
             "action": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]})
        assert m1.algebra is m2.algebra


class TestRoundTrip:
    def test_algebra_doc_round_trip(self):
        alg = formats.load_algebra(fx("d2.alg"))
        doc = formats.algebra_to_doc(alg)
        again = formats.algebra_from_doc(doc)
        assert again is alg  # interning makes the round trip literal

    def test_complex_doc_round_trip(self):
        cx = formats.load_complex(fx("tper.cx"))
        doc = formats.complex_to_doc(cx)
        again = formats.complex_from_doc(doc)
        for n in range(-2, 3):
            assert again.term(n).dim == cx.term(n).dim
            assert np.array_equal(again.diff(n) % 2, cx.diff(n) % 2)
        assert again.neg_period == cx.neg_period
        assert again.pos_period == cx.pos_period

    def test_map_doc_round_trip(self):
        f = formats.load_chain_map(fx("xid.map"))
        doc = formats.chain_map_to_doc(f)
        again = formats.chain_map_from_doc(doc)
        for n in range(-3, 4):
            assert np.array_equal(again.component(n), f.component(n))


class TestCli:
    def test_validate_shipped_fixture(self, capsys):
        assert main(["validate", fx("d2.alg")]) == 0
        out = capsys.readouterr().out
        assert "YES" in out and "overall: YES" in out

    def test_functor_omega(self, capsys):
        assert main(["functor", "omega", fx("tper.cx")]) == 0
        assert "dim 1 over D2" in capsys.readouterr().out

    def test_demo_json(self, capsys):
        assert main(["--format", "json", "demo", "D2-Tper"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["overall"] == "YES"
        names = {e["name"]: e["verdict"] for e in report["entries"]}
        assert names["verify_round_trip side P"] == "YES"
        assert names["verify_round_trip side I"] == "YES"

    def test_demo_stable_under_rerun(self, capsys):
        main(["--format", "json", "demo", "D2-Tper"])
        first = json.loads(capsys.readouterr().out)
        main(["--format", "json", "demo", "D2-Tper"])
        second = json.loads(capsys.readouterr().out)
        for e in first["entries"] + second["entries"]:
            e.pop("time")
        assert first == second

    def test_classify(self, capsys):
        assert main(["classify", fx("xid.map"), "--structure", "ctr"]) == 0

    def test_replace(self, capsys):
        code = main(["replace", fx("kstalk.cx"), "--which", "cofibrant-ctr"])
        assert code == 0
        assert "overall: YES" in capsys.readouterr().out

    def test_verify_equivalence(self, capsys):
        assert main(["verify-equivalence", fx("tper.cx")]) == 0

    def test_verify_equivalence_rejects_stalk(self, capsys):
        assert main(["verify-equivalence", fx("kstalk.cx")]) == 1

    def test_usage_error(self, capsys):
        assert main(["bogus"]) == 64
        assert main(["replace", fx("kstalk.cx")]) == 64

    def test_parse_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        assert main(["validate", str(bad)]) == 65
        err = capsys.readouterr().err
        assert "line 1" in err
