import json
import re

import pytest

from seqcomp import cli


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


DUAL = {"kind": "structure", "p": 2, "name": "dual",
        "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit": [1, 0]}


def test_define_dual_numbers(tmp_path):
    report, code = cli.run(["algebra", "define", write(tmp_path, "d.json", DUAL), "--format", "structured"])
    assert code == 0
    assert report["dim"] == 2
    assert all(report["verdicts"].values())


def test_define_broken_associativity(tmp_path):
    bad = dict(DUAL, structure=[[[1, 0], [0, 1]], [[1, 0], [1, 0]]])
    report, code = cli.run(["algebra", "define", write(tmp_path, "bad.json", bad)])
    assert code == 1
    assert report["verdicts"] == {"valid": False}
    assert re.search(r"associativity fails on basis triple \(\d,\d,\d\)", report["error"])


def test_usage_error_is_reported_once(capsys):
    code = cli.main(["hom", "db", "Q", "k"])
    err = capsys.readouterr().err
    assert code == 2 and err.count("error:") == 1


def test_define_quiver(tmp_path):
    doc = {"kind": "quiver", "vertices": 3, "arrows": [[1, 2], [2, 3]], "p": 2}
    report, code = cli.run(["algebra", "define", write(tmp_path, "a3.json", doc)])
    assert code == 0 and report["dim"] == 6


def test_defined_algebra_is_usable(tmp_path):
    path = write(tmp_path, "d.json", DUAL)
    report, code = cli.run(["hom", "db", "k", "k", "--shift", "3", "--algebra-file", path])
    assert code == 0 and report["dim"] == 1


@pytest.mark.parametrize("kind,shift,expected", [("db", 2, 1), ("stable", 0, 1), ("sg", -2, 1),
                                                 ("module", 0, 1), ("completion", 1, 1)])
def test_hom_kinds_over_dual_numbers(kind, shift, expected):
    report, code = cli.run(["hom", kind, "k", "k", "--shift", str(shift)])
    assert code == 0
    assert report["dim"] == expected


def test_module_hom_from_regular_module():
    report, _ = cli.run(["hom", "module", "L", "M1"])
    assert report["dim"] == 2


def test_text_and_structured_agree():
    text_report, _ = cli.run(["verify", "singularity", "--format", "text"])
    struct_report, _ = cli.run(["verify", "singularity", "--format", "structured"])
    text_report.pop("_format")
    struct_report.pop("_format")
    rendered = cli.render_text(text_report)
    assert cli.parse_text(rendered) == cli.flatten(struct_report)


def test_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        cli.main(["verify", "pgroup", "--seed", "4", "--format", "structured"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert "timing_s" not in outs[0]


def test_pgroup_classify_canonical():
    report, code = cli.run(["pgroup", "classify", "canonical-pruefer", "--p", "2"])
    assert code == 0 and report["type"]["pruefer_count"] == 1


@pytest.mark.parametrize("argv", [["hom", "db", "Q", "k"], ["hom", "db", "k", "k", "--algebra", "nope"],
                                  ["verify", "main-theorem", "--window", "3"], ["bogus"]])
def test_bad_input_exits_with_two(argv):
    _, code = cli.run(argv)
    assert code == 2


def test_job_file(tmp_path):
    job = {"task": "hom", "kind": "db", "algebra": "A2", "args": ["S1", "S2"], "params": {"shift": 1}}
    report, code = cli.run(["job", write(tmp_path, "job.json", job)])
    assert code == 0 and report["dim"] == 1


@pytest.mark.parametrize("kind", ["main-theorem", "phantomless", "pgroup", "singularity", "pseudo-coherence"])
def test_verify_suites_pass_on_dual_numbers(kind):
    report, code = cli.run(["verify", kind, "--sample", "3"])
    assert code == 0, [k for k, v in report["verdicts"].items() if not v]


def test_job_with_inline_algebra(tmp_path):
    job = {"task": "hom", "kind": "stable", "algebra": DUAL, "args": ["k", "k"]}
    report, code = cli.run(["job", write(tmp_path, "job.json", job)])
    assert code == 0 and report["dim"] == 1


def test_malformed_job_is_an_input_error(tmp_path):
    _, code = cli.run(["job", write(tmp_path, "job.json", {"task": "nonsense"})])
    assert code == 2
