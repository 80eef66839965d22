import json

import pytest

from arclab.cli import (
    ArcFileError,
    cmd_analyze,
    cmd_bound,
    cmd_conjecture,
    cmd_cosecants,
    cmd_hypersurface,
    cmd_search,
    format_arc_file,
    main,
    parse_arc_file,
)

from conftest import ARCS_DIR


def load(name):
    return (ARCS_DIR / name).read_text()


def strip_timings(report):
    if isinstance(report, dict):
        return {k: strip_timings(v) for k, v in report.items() if k != "timings"}
    if isinstance(report, list):
        return [strip_timings(v) for v in report]
    return report


def test_parse_round_trip():
    for name in [
        "q11_size7.arc",
        "q13_size6.arc",
        "q13_size9.arc",
        "q81_size11.arc",
        "conic_f5.arc",
        "hyperconic_f8.arc",
    ]:
        arc = parse_arc_file(load(name))
        text = format_arc_file(arc)
        again = parse_arc_file(text)
        assert again.points == arc.points
        assert again.ctx == arc.ctx
        # canonical text is a fixed point
        assert format_arc_file(again) == text


def test_parse_errors():
    with pytest.raises(ArcFileError):
        parse_arc_file("k 3\n1 0 0\n")
    with pytest.raises(ArcFileError):
        parse_arc_file("field 11 1\nk 3\n1 0\n")
    with pytest.raises(ArcFileError):
        parse_arc_file("field 11 1\nk 3\nt^44 0 0\n")
    with pytest.raises(ArcFileError):
        parse_arc_file("field 4 1\nk 3\n1 0 0\n")  # 4 not prime
    with pytest.raises(ArcFileError):
        # two proportional vectors: not an arc
        parse_arc_file("field 11 1\nk 3\n1 0 0\n2 0 0\n0 1 0\n")


def test_modulus_override():
    text = "field 3 2\nk 3\nt^0 0 0\n0 t^0 0\n0 0 t^0\n"
    default = parse_arc_file(text)
    assert default.ctx.modulus == (1, 2, 2)
    forced = parse_arc_file(text, modulus=(1, 1, 2))
    assert forced.ctx.modulus == (1, 1, 2)


def test_cmd_analyze_q11():
    arc = parse_arc_file(load("q11_size7.arc"))
    rep = cmd_analyze(arc, 2)
    assert rep["shape"] == [21, 105]
    assert rep["rank"] == 20
    assert rep["full_row_rank"] == 21
    assert rep["weight_one"] is True
    assert rep["forbidden_size"] == 11


def test_cmd_analyze_negative_verdict_still_reports():
    arc = parse_arc_file(load("q13_size6.arc"))
    rep = cmd_analyze(arc, 0)
    assert rep["weight_one"] is False
    assert rep["forbidden_size"] is None


def test_cmd_bound():
    arc = parse_arc_file(load("q11_size7.arc"))
    rep = cmd_bound(arc)
    assert rep["n0"] == 2
    assert rep["largest_arc_bound"] == 10
    even = cmd_bound(parse_arc_file(load("hyperconic_f8.arc")).prefix(6))
    assert even["n0"] is None
    assert even["even_q_nullity_law"] is True


def test_cmd_cosecants_q13_size6():
    arc = parse_arc_file(load("q13_size6.arc"))
    rep = cmd_cosecants(arc, 2)
    assert rep["property_w"] is True
    assert rep["corollary2_route"] is True
    assert rep["theorem4_hypersurface_licensed"] is True  # 2*2 >= 6-3-1
    assert rep["all_split"] is True
    assert len(rep["predictions"]) == 6
    for item in rep["predictions"]:
        assert item["status"] == "ok"
        assert len(item["cosecants"]) == rep["t"] == 1


def test_cmd_cosecants_missing_verdict():
    arc = parse_arc_file(load("q13_size9.arc"))
    rep = cmd_cosecants(arc, 3)
    assert rep["property_w"] is False
    assert "PropertyWMissing" in rep["verdict"]
    assert "predictions" not in rep


def test_cmd_hypersurface():
    rep = cmd_hypersurface(parse_arc_file(load("conic_f5.arc")))
    assert rep["parity"] == "odd"
    assert rep["theorem9_all"] is True
    assert rep["cosecant_zero_failures"] == 0
    rep8 = cmd_hypersurface(parse_arc_file(load("hyperconic_f8.arc")))
    assert rep8["parity"] == "even"
    assert rep8["degree"] == 0


def test_cmd_search():
    arc = parse_arc_file(load("q13_size6.arc"))
    rep = cmd_search(arc)
    assert {9, 10, 12, 14} <= set(rep["complete_sizes"])
    rep_t = cmd_search(parse_arc_file(load("q11_size7.arc")), target=11)
    assert rep_t["found"] == 0
    assert "exhaustive" in rep_t["verdict"]


def test_cmd_conjecture():
    rep = cmd_conjecture(5, 1, 3, 1)
    assert rep["total"] == rep["certified"]
    assert rep["fraction"] == 1.0


def test_report_determinism():
    arc = parse_arc_file(load("q13_size6.arc"))
    a = strip_timings(cmd_cosecants(arc, 2))
    b = strip_timings(cmd_cosecants(parse_arc_file(load("q13_size6.arc")), 2))
    assert a == b
    assert json.dumps(a) == json.dumps(b)


def test_main_exit_codes(tmp_path, capsys):
    q11 = str(ARCS_DIR / "q11_size7.arc")
    assert main(["analyze", q11, "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "rank: 20" in out
    # negative verdict still exits 0
    assert main(["analyze", q11, "--n", "0"]) == 0
    capsys.readouterr()
    # structured emit is valid JSON
    assert main(["--emit", "structured", "analyze", q11, "--n", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rank"] == 20
    assert data["schema_version"] == 1
    # operational errors exit 2
    assert main(["analyze", str(tmp_path / "missing.arc"), "--n", "1"]) == 2
    assert main(["analyze", q11, "--n", "9"]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.arc"
    bad.write_text("field 11 1\nk 3\n1 0 0\n2 0 0\n0 1 0\n")
    assert main(["analyze", str(bad), "--n", "0"]) == 2
    # budget exhaustion exits 3
    q13 = str(ARCS_DIR / "q13_size6.arc")
    assert main(["search", q13, "--budget", "2"]) == 3
    capsys.readouterr()
    # cosecants alias works
    assert main(["cosecants", q13, "--n", "2"]) == 0
    capsys.readouterr()


def test_main_even_q_bound_reports_and_exits_zero(capsys):
    assert main(["bound", str(ARCS_DIR / "hyperconic_f8.arc")]) == 0
    out = capsys.readouterr().out
    assert "no certificate at any n" in out


def test_cmd_analyze_q81_regression():
    arc = parse_arc_file(load("q81_size11.arc"))
    assert arc.ctx.q == 81 and arc.k == 6
    rep = cmd_analyze(arc, 1)
    assert rep["shape"] == [462, 2310]
    assert rep["rank"] == 461
    assert rep["full_row_rank"] == 462
    assert rep["weight_one"] is False


def test_cmd_cosecants_degenerate_t_zero():
    arc = parse_arc_file(load("q13_size6.arc"))
    rep = cmd_cosecants(arc, 3)  # t = 0
    assert rep["t"] == 0
    assert "nothing to recover" in rep["verdict"]
    assert "predictions" not in rep
