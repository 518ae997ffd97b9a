import json

import pytest

from comtes.cli import main
from comtes.core import canonical_key, comte, decode, encode

TREFOIL = comte("a b c", [("a", "b", "c", 1), ("b", "c", "a", 1), ("c", "a", "b", 1)])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestImport:
    def test_gauss_trefoil(self, capsys):
        code, out, _ = run(capsys, "import", "--gauss", "O1+U2+O3+U1+O2+U3+")
        assert code == 0
        c = decode(out)
        assert canonical_key(c) == canonical_key(TREFOIL)
        doc = json.loads(out)
        assert list(doc) == ["vertices", "arrows"]
        assert list(doc["arrows"][0]) == ["source", "target", "label", "flow"]

    def test_pd(self, capsys):
        code, out, _ = run(capsys, "import", "--pd", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
        assert code == 0
        assert canonical_key(decode(out)) == canonical_key(TREFOIL)

    def test_bad_code_exits_1(self, capsys):
        code, _, err = run(capsys, "import", "--gauss", "O1+U1-")
        assert code == 1 and "sign mismatch" in err


class TestValidate:
    def test_valid(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "validate", str(p))
        assert code == 0 and out.strip() == "valid"

    def test_invalid_exits_1(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"vertices": ["a","b"], "arrows": [{"source":"a","target":"b","label":"a","flow":1}]}')
        code, out, _ = run(capsys, "validate", str(p))
        assert code == 1 and "outgoing 1 != incoming 0" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent.json")
        assert code == 1 and "cannot read" in err


class TestInvariants:
    def test_trefoil(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "invariants", str(p), "--delta-max", "2")
        assert code == 0
        assert "components: 1" in out
        assert "abelianization rank: 1" in out
        assert "Delta_1 = t^2 - t + 1" in out
        assert "Delta_2 = 1" in out

    def test_presentations(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "invariants", str(p), "--presentations")
        assert code == 0 and "c*a = b*c" in out and "c |> a = b" in out


class TestColoringsAndStateSum:
    def test_colorings(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "colorings", "--comte", str(p), "--quandle", "tetrahedron")
        assert code == 0 and out.splitlines()[0] == "16 colorings"

    def test_statesum_builtin(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "statesum", "--comte", str(p), "--quandle", "tetrahedron", "--cocycle", "builtin")
        assert code == 0
        assert out.splitlines() == ["4 + 12*s", "colorings: 16"]

    def test_statesum_cocycle_file(self, capsys, tmp_path):
        from comtes.racks import format_cocycle, tetrahedron_cocycle

        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        fpath = tmp_path / "f.cocycle"
        fpath.write_text(format_cocycle(tetrahedron_cocycle()))
        code, out, _ = run(capsys, "statesum", "--comte", str(p), "--quandle", "tetrahedron", "--cocycle", str(fpath))
        assert code == 0 and out.splitlines()[0] == "4 + 12*s"

    def test_rack_table_file(self, capsys, tmp_path):
        from comtes.racks import format_rack_table, tetrahedron_quandle

        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        rpath = tmp_path / "tetra.rack"
        rpath.write_text(format_rack_table(tetrahedron_quandle()))
        code, out, _ = run(capsys, "colorings", "--comte", str(p), "--quandle", str(rpath))
        assert code == 0 and "16 colorings" in out


class TestHomologyCommand:
    def test_exhoc(self, capsys, tmp_path):
        from comtes.core import graph

        exhoc = graph(
            "a b c",
            [("a", "a", "a"), ("b", "b", "b"), ("c", "c", "c"), ("b", "b", "a"),
             ("c", "c", "a"), ("a", "c", "b"), ("c", "a", "b"), ("a", "b", "c")],
        )
        p = tmp_path / "g.json"
        p.write_text(encode(exhoc))
        code, out, _ = run(capsys, "homology", str(p), "--max-degree", "5")
        assert code == 0
        assert out.splitlines() == ["H_1 = Z", "H_2 = Z^2", "H_3 = Z^4", "H_4 = Z^7", "H_5 = Z^11"]


class TestCensusCommand:
    def test_q3_classes(self, capsys):
        code, out, _ = run(capsys, "census", "--class", "q", "--vertices", "3")
        assert code == 0 and out.strip() == "70 classes"

    def test_r2_with_signatures(self, capsys):
        code, out, _ = run(capsys, "census", "--class", "q", "--vertices", "2", "--max-degree", "3", "--table")
        assert code == 0
        assert "classes" in out and "distinct signatures [plain/torsion]" in out

    def test_determinism(self, capsys):
        _, out1, _ = run(capsys, "census", "--class", "q", "--vertices", "2", "--max-degree", "2")
        _, out2, _ = run(capsys, "census", "--class", "q", "--vertices", "2", "--max-degree", "2")
        assert out1 == out2


class TestMovesCommand:
    def test_enumerate_apply_search(self, capsys, tmp_path):
        kink = comte(
            "a b c d",
            [("a", "b", "c", 1), ("b", "c", "a", 1), ("c", "d", "b", 1), ("d", "a", "d", 1)],
        )
        p = tmp_path / "kink.json"
        p.write_text(encode(kink))
        code, out, _ = run(capsys, "moves", "enumerate", "--comte", str(p))
        assert code == 0 and "R1contract" in out
        code, out, _ = run(capsys, "moves", "apply", "--comte", str(p), "--index", "0")
        assert code == 0
        applied = decode(out)
        assert len(applied.graph.vertices) == 3
        t = tmp_path / "t.json"
        t.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "moves", "search", "--comte", str(p), "--target", str(t))
        assert code == 0 and out.startswith("equivalent (1 moves)")

    def test_search_unknown(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        d = tmp_path / "dot.json"
        d.write_text(encode(comte("a", [])))
        code, out, _ = run(capsys, "moves", "search", "--comte", str(p), "--target", str(d), "--max-states", "200")
        assert code == 0 and out.startswith("unknown")

    def test_bad_index(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, _, err = run(capsys, "moves", "apply", "--comte", str(p), "--index", "99")
        assert code == 1 and "out of range" in err


class TestBracketCommand:
    def test_output(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        code, out, _ = run(capsys, "bracket", "--graph", str(p), "--semivirtual", "0")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        coeffs = sorted(int(ln.split("\t")[0]) for ln in lines)
        assert coeffs == [-1, 1]


class TestUsage:
    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["census"])  # missing required --vertices
        assert exc.value.code == 2

    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_search_requires_target(self, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        with pytest.raises(SystemExit) as exc:
            main(["moves", "search", "--comte", str(p)])
        assert exc.value.code == 2


class TestPaperSuiteCommand:
    def test_subset(self, capsys):
        code, out, _ = run(capsys, "paper-suite", "--only", "4,5,6")
        assert code == 0
        assert out.count("[PASS]") == 3
        assert "3/3 criteria passed" in out


class TestStateSumHardening:
    def test_cocycle_size_mismatch(self, capsys, tmp_path):
        from comtes.racks import constant_cocycle, C2, format_cocycle

        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        fpath = tmp_path / "f3.cocycle"
        fpath.write_text(format_cocycle(constant_cocycle(3, C2)))
        code, _, err = run(capsys, "statesum", "--comte", str(p), "--quandle", "tetrahedron", "--cocycle", str(fpath))
        assert code == 1 and "3 elements" in err

    def test_garbage_cocycle_file(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(encode(TREFOIL))
        fpath = tmp_path / "junk.cocycle"
        fpath.write_text("not a cocycle\n")
        code, _, err = run(capsys, "statesum", "--comte", str(p), "--quandle", "tetrahedron", "--cocycle", str(fpath))
        assert code == 1 and "bad cocycle file" in err
