import json
from fractions import Fraction as F

import pytest

from permod.cli import main
from permod.filtration import parse_complex
from permod.homology import parse_grid_module
from permod.presentation import parse_presentation
from permod.quadsys import parse_system

C01 = """PRESENTATION
n 1
field zp 2
generator g 0
relation r 1 : g 1
END
"""

C23 = """PRESENTATION
n 1
field zp 2
generator g 2
relation r 3 : g 1
END
"""


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c01.txt").write_text(C01)
    (tmp_path / "c23.txt").write_text(C23)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPresent:
    def test_validate(self, files, capsys):
        code, out, _ = run(capsys, "present", "validate", files / "c01.txt")
        assert code == 0 and "ok" in out

    def test_minimize_roundtrip(self, files, capsys, tmp_path):
        out_path = tmp_path / "min.txt"
        code, _, _ = run(capsys, "present", "minimize", files / "c01.txt",
                         "--out", out_path)
        assert code == 0
        p = parse_presentation(out_path.read_text())
        assert len(p.generators) == 1

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("not a presentation\n")
        code, _, err = run(capsys, "present", "validate", bad)
        assert code == 2 and "error" in err


class TestDistance:
    def test_interleaving(self, files, capsys):
        code, out, _ = run(capsys, "distance", "interleaving",
                           files / "c01.txt", files / "c23.txt")
        assert code == 0 and "d_I = 1/2" in out

    def test_identical(self, files, capsys):
        code, out, _ = run(capsys, "distance", "interleaving",
                           files / "c01.txt", files / "c01.txt")
        assert code == 0 and "d_I = 0" in out

    def test_decide(self, files, capsys):
        code, out, _ = run(capsys, "distance", "interleaving",
                           files / "c01.txt", files / "c23.txt", "--decide", "1/4")
        assert code == 0 and out.strip() == "no"

    def test_budget_exit_3(self, capsys, tmp_path):
        # two free generators force quadratic BA = I branching, so a zero
        # node budget must trip (pure linear elimination consumes no nodes)
        free2 = tmp_path / "free2.txt"
        free2.write_text("PRESENTATION\nn 1\nfield zp 2\n"
                         "generator a 0\ngenerator b 0\nEND\n")
        code, out, _ = run(capsys, "distance", "interleaving",
                           free2, free2, "--budget", "0")
        assert code == 3 and "budget exceeded" in out

    def test_field_mismatch_exit_2(self, files, capsys, tmp_path):
        other = tmp_path / "f3.txt"
        other.write_text(C01.replace("zp 2", "zp 3"))
        code, _, err = run(capsys, "distance", "interleaving",
                           files / "c01.txt", other)
        assert code == 2 and "fields differ" in err

    def test_bottleneck(self, files, capsys, tmp_path):
        d1 = tmp_path / "d1.txt"
        d2 = tmp_path / "d2.txt"
        d1.write_text("0 1 1\n")
        d2.write_text("")
        code, out, _ = run(capsys, "distance", "bottleneck", d1, d2)
        assert code == 0 and "d_B = 1/2" in out
        code, out, _ = run(capsys, "distance", "bottleneck", d1, d1)
        assert "d_B = 0" in out


class TestDiagram:
    def test_diagram_output(self, files, capsys):
        code, out, _ = run(capsys, "diagram", files / "c01.txt")
        assert code == 0 and out == "0 1 1\n"

    def test_two_parameter_rejected(self, capsys, tmp_path):
        p2 = tmp_path / "p2.txt"
        p2.write_text("PRESENTATION\nn 2\nfield zp 2\ngenerator g 0 0\nEND\n")
        code, _, _ = run(capsys, "diagram", p2)
        assert code == 2


class TestFiltration:
    def test_rips_collinear(self, capsys, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("0\n1\n")
        out_path = tmp_path / "cx.txt"
        code, _, _ = run(capsys, "filtration", "rips", "--points", pts,
                         "--metric", "l1", "--max-dim", "1",
                         "--scale-cap", "10", "--out", out_path)
        assert code == 0
        cx = parse_complex(out_path.read_text())
        assert (((0, 1)), (F(0), F(1, 2))) in [(v, g) for v, g in cx.simplices]

    def test_empty_points(self, capsys, tmp_path):
        pts = tmp_path / "empty.csv"
        pts.write_text("")
        out_path = tmp_path / "cx.txt"
        code, _, _ = run(capsys, "filtration", "rips", "--points", pts,
                         "--out", out_path)
        assert code == 0 and out_path.read_text() == ""

    def test_cech_l1_exit_2(self, capsys, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("0\n1\n")
        code, _, _ = run(capsys, "filtration", "cech", "--points", pts,
                         "--metric", "l1")
        assert code == 2

    def test_negate_function_equals_manual(self, capsys, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("0\n1\n")
        fun = tmp_path / "f.csv"
        fun.write_text("1\n2\n")
        neg = tmp_path / "negf.csv"
        neg.write_text("-1\n-2\n")
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        run(capsys, "filtration", "rips", "--points", pts, "--function", fun,
            "--negate-function", "--out", out1)
        run(capsys, "filtration", "rips", "--points", pts, "--function", neg,
            "--out", out2)
        assert out1.read_text() == out2.read_text()

    def test_misaligned_exit_2(self, capsys, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("0\n1\n")
        fun = tmp_path / "f.csv"
        fun.write_text("1\n")
        code, _, _ = run(capsys, "filtration", "rips", "--points", pts,
                         "--function", fun)
        assert code == 2


class TestHomology:
    def test_grid_of_presentation(self, files, capsys):
        code, out, _ = run(capsys, "homology", "grid",
                           "--complex", files / "c01.txt",
                           "--axes=-1,0,1")
        assert code == 0
        gm = parse_grid_module(out)
        assert [gm.dims[(i,)] for i in range(3)] == [0, 1, 0]

    def test_present2d(self, capsys, tmp_path):
        cx = tmp_path / "cx.txt"
        cx.write_text("0 : 0 0\n")
        code, out, _ = run(capsys, "homology", "present2d", "--complex", cx,
                           "--degree", "0")
        assert code == 0 and "hilbert check: ok" in out

    def test_present2d_wrong_params_exit_2(self, capsys, tmp_path):
        cx = tmp_path / "cx.txt"
        cx.write_text("0 : 0\n")
        code, _, _ = run(capsys, "homology", "present2d", "--complex", cx)
        assert code == 2

    def test_image_equals_grid_slice(self, capsys, tmp_path):
        cx = tmp_path / "cx.txt"
        cx.write_text("0 : 0 0\n1 : 0 0\n0,1 : 0 1\n")
        code, out, _ = run(capsys, "homology", "image", "--complex", cx,
                           "--degree", "0", "--delta1", "2", "--delta2", "2",
                           "--axes", "0")
        assert code == 0
        img = parse_grid_module(out)
        code, out, _ = run(capsys, "homology", "grid", "--complex", cx,
                           "--degree", "0", "--axes", "0;0,2")
        full = parse_grid_module(out)
        assert img.dims[(0,)] == full.dims[(0, 1)]


class TestExportAndInfer:
    def test_export_quadsys_roundtrip(self, files, capsys, tmp_path):
        out_path = tmp_path / "sys.txt"
        code, _, _ = run(capsys, "export", "quadsys", files / "c01.txt",
                         files / "c23.txt", "--eps", "1/2", "--out", out_path)
        assert code == 0
        text = out_path.read_text()
        sys_ = parse_system(text)
        assert sys_.nvars >= 1 and "# var 1 =" in text

    def test_infer_run(self, capsys, tmp_path):
        out_path = tmp_path / "rec.json"
        code, _, _ = run(capsys, "infer", "run", "--density", "1,0,1/2",
                         "--samples", "5,10", "--trials", "1", "--seed", "3",
                         "--bandwidth", "1/4", "--grid", "9",
                         "--out", out_path)
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["samples"] == [5, 10]

    def test_infer_bad_spec_exit_2(self, capsys):
        code, _, _ = run(capsys, "infer", "run", "--density", "2,0,1",
                         "--samples", "5")
        assert code == 2

    def test_infer_unsorted_samples_exit_2(self, capsys):
        code, _, _ = run(capsys, "infer", "run", "--density", "1,0,1",
                         "--samples", "10,5")
        assert code == 2
