import io
import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from artifact import report
from artifact.cli import run
from artifact.diagram import parse_pd
from artifact.render import OverlayError, render_svg

from conftest import FIG8

FIX = Path(__file__).parent / "fixtures"
SVG = "{http://www.w3.org/2000/svg}"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def fixture(name):
    return str(FIX / name)


@pytest.mark.parametrize("cmd", ["analyze", "augment", "decompose", "enumerate", "verify",
                                 "certify", "render"])
def test_commands_on_figure8(cmd):
    extra = ["--max-boundary-visits", "1"] if cmd == "enumerate" else []
    code, out, _ = call(cmd, "-i", fixture("fig8.pd"), *extra)
    assert code == 0
    rep = json.loads(out)
    report.check(rep)
    assert rep["version"] == report.SCHEMA_VERSION
    assert rep["command"] == cmd and rep["status"] == "ok"


def test_certify_figure8():
    code, out, _ = call("certify", "-i", fixture("fig8.pd"))
    assert code == 0
    assert json.loads(out)["result"]["binding"] is False


def test_certify_binding_with_required_hypotheses():
    code, out, _ = call("certify", "-i", fixture("dt67.pd"), "--require-hypotheses")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["binding"] is True
    assert res["closed"]["chi_bound"] == "-2"


def test_required_hypotheses_fail():
    code, out, err = call("certify", "-i", fixture("fig8.pd"), "--require-hypotheses")
    assert code == 1
    assert json.loads(out)["status"] == "analysis-failure"
    assert "hypotheses" in err


def test_missing_file():
    code, out, err = call("certify", "-i", "missing.pd")
    assert code == 2 and out == ""
    assert "missing.pd" in err


def test_unknown_command():
    assert call("frobnicate", "-i", fixture("fig8.pd"))[0] == 2


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,4,2]")
    code, _, err = call("analyze", "-i", str(bad))
    assert code == 2 and "error" in err


def test_verify_connected_sum():
    code, out, _ = call("verify", "-i", fixture("connectsum.pd"))
    assert code == 0
    ev = {e["lemma"]: e for e in json.loads(out)["result"]["evidence"]}
    cex = ev["one_cusp_forces_K"]["counterexamples"]
    assert cex
    assert any(c["projection"] and c["projection"]["k_points"] == 2 for c in cex)


def test_analysis_failure_is_schema_valid():
    code, out, err = call("decompose", "-i", fixture("trefoil.pd"))
    assert code == 1
    rep = json.loads(out)
    report.check(rep)
    assert rep["status"] == "analysis-failure" and rep["messages"]


def test_structured_output_is_deterministic():
    runs = [call("certify", "-i", fixture("fig8.pd"))[1] for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [call("enumerate", "-i", fixture("fig8.pd"), "--forbid-shaded")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_output_file(tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = call("analyze", "-i", fixture("fig8.pd"), "-o", str(dest))
    assert code == 0 and out == ""
    report.check(json.loads(dest.read_text()))


def test_text_format():
    code, out, _ = call("analyze", "-i", fixture("fig8.pd"), "--format", "text")
    assert code == 0
    assert out.startswith("analyze: ok")
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_analyze_round_trip():
    _, out, _ = call("analyze", "-i", fixture("dt67.pd"))
    rep = json.loads(out)
    d = parse_pd(rep["result"]["pd"])
    assert d == parse_pd((FIX / "dt67.pd").read_text())
    assert rep["input"] == d.serialize()


def test_enumerate_constraints_reported():
    _, out, _ = call("enumerate", "-i", fixture("fig8.pd"), "--max-boundary-visits", "2",
                     "--admissible")
    res = json.loads(out)["result"]
    assert res["constraints"]["max_boundary_visits"] == 2
    assert res["constraints"]["shaded_arcs_from_circle"] is True
    assert res["count"] == len(res["curves"]) > 0


def test_schema_rejects_missing_version():
    rep = report.make_report("analyze", report.analysis(parse_pd(FIG8)))
    del rep["version"]
    with pytest.raises(report.SchemaViolation):
        report.check(rep)


# -- render --------------------------------------------------------------------

def _svg(text):
    return ET.fromstring(text)


def _classes(root, cls):
    return [el for el in root.iter() if el.get("class") == cls]


def test_render_region_hulls(fig8):
    root = _svg(render_svg(fig8, {"twist_regions": True}))
    assert len(_classes(root, "twist-region")) == 2
    assert len(_classes(root, "crossing")) == 4


def test_render_bare(fig8):
    root = _svg(render_svg(fig8, {}))
    assert not _classes(root, "twist-region") and not _classes(root, "crossing-circle")
    assert len(_classes(root, "strand")) == 8


def test_render_unknown_region(fig8):
    with pytest.raises(OverlayError):
        render_svg(fig8, {"twist_regions": [99]})
    with pytest.raises(OverlayError):
        render_svg(fig8, {"curves": [[0, 99]]})


def test_render_overlays(fig8):
    root = _svg(render_svg(fig8, {"crossing_circles": [0], "curves": [[0, 1]]}))
    assert len(_classes(root, "crossing-circle")) == 1
    assert len(_classes(root, "curve")) == 1


def test_render_deterministic(fig8):
    assert render_svg(fig8, {"twist_regions": True}) == render_svg(parse_pd(FIG8), {"twist_regions": True})


def test_render_cli(tmp_path):
    dest = tmp_path / "d.svg"
    code, out, _ = call("render", "-i", fixture("fig8.pd"), "--svg", str(dest),
                        "--overlay", "twist-regions")
    assert code == 0
    assert json.loads(out)["result"]["regions"] == 2
    assert len(_classes(_svg(dest.read_text()), "twist-region")) == 2
