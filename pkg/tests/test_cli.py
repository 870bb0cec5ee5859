import json

import pytest

from z2hodge import corpus
from z2hodge.cli import RunConfig, full_report, main, parse_polytope, report_to_dict, run, to_json
from z2hodge.errors import DimensionMismatch, ParseError

SQUARE_TEXT = "2 4\n1 1\n1 -1\n-1 1\n-1 -1\n"


def test_parse_square():
    p = parse_polytope(SQUARE_TEXT)
    assert p == corpus.polytope("square")


def test_parse_allows_comments_and_blank_lines():
    text = "# the square\n\n2 4  # header\n1 1\n1 -1\n-1 1\n-1 -1\n"
    assert parse_polytope(text) == corpus.polytope("square")


def test_parse_row_count_mismatch():
    with pytest.raises(ParseError):
        parse_polytope("2 3\n1 1\n-1 -1\n")


def test_parse_bad_token_reports_line():
    with pytest.raises(ParseError) as info:
        parse_polytope("2 1\n1 x\n")
    assert "line 2" in str(info.value)


def test_parse_wrong_coordinate_count():
    with pytest.raises(DimensionMismatch):
        parse_polytope("2 2\n1 1 1\n-1 -1\n")


def test_corpus_has_required_entries():
    names = set(corpus.names())
    required = {
        "segment",
        "square",
        "cross2",
        "cross3",
        "cross4",
        "simplex2",
        "simplex3",
        "simplex4",
        "example1",
        "example2",
        "p1xp2",
        "p2xp2",
    }
    assert required <= names


def test_square_report_values():
    report = full_report(corpus.polytope("square"))
    assert report.table.nonzero() == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert report.betti_real == (1, 2, 1)
    assert report.betti_complex == (1, 0, 2, 0, 1)
    assert report.maximal is True
    assert report.chow == (1, 2, 1)
    assert all(v for v in report.checks.values() if v is not None)
    assert None not in report.checks.values()  # reflexive: all checks ran


def test_report_json_fields():
    report = full_report(corpus.polytope("cross2"))
    payload = report_to_dict(report)
    expected_keys = {
        "dim",
        "f_vector",
        "reflexive",
        "regularity_depth",
        "hodge_table",
        "betti_real",
        "betti_complex",
        "collapsed",
        "maximal",
        "s_rank",
        "chow_ranks",
        "h_vector",
        "checks",
    }
    assert set(payload) == expected_keys
    parsed = json.loads(to_json(payload))
    assert parsed == json.loads(json.dumps(payload))


def test_reports_byte_identical_across_threads():
    outputs = []
    for threads in (1, 2, 3):
        config = RunConfig(corpus_name="cross3", fmt="json", threads=threads)
        outputs.append(run(config, "report"))
    assert outputs[0] == outputs[1] == outputs[2]


def test_face_fan_mode_runs():
    config = RunConfig(corpus_name="cross2", fan="face", fmt="json", threads=1)
    payload = json.loads(run(config, "report"))
    assert payload["dim"] == 2
    # duality checks are tied to the normal-fan table and stay null here
    assert payload["checks"]["ses_exact"] is None
    assert payload["checks"]["hqq_equals_chow"] is True


def test_cli_exit_codes(tmp_path, capsys):
    good = tmp_path / "square.poly"
    good.write_text(SQUARE_TEXT, encoding="utf-8")
    assert main(["report", str(good), "--threads", "1"]) == 0
    capsys.readouterr()

    bad = tmp_path / "bad.poly"
    bad.write_text("2 3\n1 1\n-1 -1\n", encoding="utf-8")
    assert main(["hodge", str(bad)]) == 2
    capsys.readouterr()

    nonreflexive = tmp_path / "interval.poly"
    nonreflexive.write_text("1 2\n2\n4\n", encoding="utf-8")
    assert main(["duality-check", str(nonreflexive)]) == 3
    capsys.readouterr()

    missing = tmp_path / "missing.poly"
    assert main(["report", str(missing)]) == 2
    capsys.readouterr()


def test_cli_requires_exactly_one_source(capsys):
    assert main(["report"]) == 3
    capsys.readouterr()


def test_cli_corpus_listing(capsys):
    assert main(["corpus"]) == 0
    out = capsys.readouterr().out
    assert "example1" in out and "square" in out


def test_cli_regularity_output(capsys):
    assert main(["regularity", "--corpus", "cross2", "--fan", "face"]) == 0
    assert "2" in capsys.readouterr().out


def test_cli_duality_check_passes(capsys):
    assert main(["duality-check", "--corpus", "simplex2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert all(payload["checks"].values())
