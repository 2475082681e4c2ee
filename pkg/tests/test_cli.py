import json

import pytest

from sspring import __version__
from sspring.cli import main
from sspring.descriptor import DescriptorSyntaxError, dump_descriptor, parse_descriptor
from sspring.errors import DescriptorError
from sspring.fixtures import CORPUS, FIXTURES

REPORT_KEYS = {"ring", "verdicts", "theorems", "timings", "caps", "version"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_json_report(capsys):
    code, out, _ = run(capsys, "check", "zmod-6", "--props", "ssp,regular")
    report = json.loads(out)
    assert code == 0
    assert set(report) == REPORT_KEYS
    assert report["version"] == __version__
    assert report["ring"]["size"] == 6 and report["ring"]["idempotents"] == 4
    assert [(v["property"], v["side"]) for v in report["verdicts"]] == [
        ("ssp", "left"), ("ssp", "right"), ("regular", "n/a")]


def test_failing_property_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "check", "ut2-f2", "--props", "ssp", "--side", "right", "--method", "both")
    assert code == 1
    verdicts = json.loads(out)["verdicts"]
    assert [v["method"] for v in verdicts] == ["definitional", "ef_criterion"]
    for v in verdicts:
        assert not v["holds"]
        w = v["witness"]
        assert len(w["pair"]) == len(w["labels"]) == 2


def test_report_is_deterministic_apart_from_timings(capsys):
    reports = []
    for _ in range(2):
        _, out, _ = run(capsys, "check", "remark-2-10", "--props", "ssp,sip,c3")
        report = json.loads(out)
        report.pop("timings")
        reports.append(report)
    assert reports[0] == reports[1]


def test_markdown_format(capsys):
    code, out, _ = run(capsys, "check", "zmod-4", "--props", "regular", "--format", "md")
    assert code == 1
    assert "| regular | n/a | element_scan | False |" in out
    assert '"element": 2' in out


def test_descriptor_file(tmp_path, capsys):
    path = tmp_path / "ring.json"
    path.write_text(dump_descriptor(CORPUS["m2-f2"]))
    code, out, _ = run(capsys, "check", str(path), "--props", "ssp,sip,c3,abelian")
    assert code == 1  # not abelian
    holds = {(v["property"], v["side"]): v["holds"] for v in json.loads(out)["verdicts"]}
    assert holds[("ssp", "right")] and not holds[("abelian", "n/a")]


def test_inline_descriptor(capsys):
    code, out, _ = run(capsys, "check", '{"kind": "zmod", "n": 5}', "--props", "ssp")
    assert code == 0
    assert json.loads(out)["ring"]["source"] == "inline"


def test_malformed_file_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "zmod",\n "n": }\n')
    code, _, err = run(capsys, "check", str(path))
    assert code == 2
    assert "line 2" in err


def test_bad_field_reports_path(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "matrix", "n": 2, "base": {"kind": "zmod", "n": "two"}}))
    code, _, err = run(capsys, "check", str(path))
    assert code == 2
    assert "base.n" in err


@pytest.mark.parametrize("argv", [
    ["check", "no-such-ring"],
    ["check", "zmod-4", "--props", "noetherian"],
    ["check", "zmod-4", "--side", "middle"],
    ["fixtures", "run", "no-such-fixture"],
    ["fixtures", "run"],
    ["check", "zmod-4", "--cap-size", "0"],
    ["verify", "m2-zmod4", "--cap-size", "64"],
    [],
])
def test_invalid_input_exits_two(argv, capsys):
    assert main(argv) == 2


def test_fixtures_list(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0
    names = [f["name"] for f in json.loads(out)["fixtures"]]
    assert names == list(FIXTURES)
    assert "remark-2-9" in names and "remark-2-10" in names


def test_fixtures_run(capsys):
    code, out, _ = run(capsys, "fixtures", "run", "remark-2-9")
    assert code == 0
    assert json.loads(out)["fixture"]["notes"]["end_ring_size"] == 8
    code, out, _ = run(capsys, "fixtures", "run", "remark-2-10", "--format", "md")
    assert code == 1
    assert "| right C3 | True | False | False |" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "ut2-f2")
    report = json.loads(out)
    assert code == 0
    assert set(report) == REPORT_KEYS
    ring_suite, module_suite = report["theorems"]
    assert ring_suite["passed"] and module_suite["passed"]
    assert {c["check_id"].split(":")[0] for c in module_suite["checks"]} == {"free(1)"}


def test_verify_module_rank(capsys):
    code, out, _ = run(capsys, "verify", "f2", "--module-rank", "2", "--format", "md")
    assert code == 0
    assert "free(2):end_ring_ssp | passed" in out


def test_cap_overrides_are_reported(capsys):
    _, out, _ = run(capsys, "check", "f2", "--props", "c2", "--cap-ideals", "1", "--cap-hom", "99")
    report = json.loads(out)
    assert report["caps"]["ideals"] == 1 and report["caps"]["hom"] == 99
    assert report["verdicts"][0]["holds"] is None and "skipped" in report["verdicts"][0]


def test_parse_descriptor_round_trip():
    for desc in CORPUS.values():
        assert parse_descriptor(dump_descriptor(desc)) == desc


@pytest.mark.parametrize("text, path", [
    ('{"kind": "zmod"}', "n"),
    ('{"kind": "zmod", "n": 4, "extra": 1}', "extra"),
    ('{"kind": "ring"}', "kind"),
    ('{"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": true}]}',
     "factors[1].n"),
    ('{"kind": "pattern", "n": 2, "base": {"kind": "zmod", "n": 2}, "mask": [[1, 1], [0, 0]]}',
     "mask[1][1]"),
    ('[1, 2]', "<root>"),
])
def test_parse_descriptor_errors(text, path):
    with pytest.raises(DescriptorError) as err:
        parse_descriptor(text)
    assert err.value.path == path


def test_syntax_error_position():
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_descriptor('{\n  "kind": "zmod",\n  "n": 4,\n}')
    assert err.value.line == 4
