import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from ncsphere.cli import REPORT_SCHEMA, main, parse_pythagorean, row_space_hash
from ncsphere.sphere import PRESETS, relation_sextet

GOLDEN = Path(__file__).parent / "golden" / "generic_sample_relations.json"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_relations_commutative_prints_six_commutators(capsys):
    code, out, _ = run(["relations", "--preset", "commutative"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("  r")]
    assert len(lines) == 6
    assert "r1 = (-1)·z0.z1 + (1)·z1.z0" in out


def test_relations_three_relations_case(capsys):
    code, out, _ = run(["relations", "--preset", "three-relations", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["presentation"]["span_dim"] == 3
    assert len(rep["presentation"]["basis"]) == 3


def test_relations_match_golden_file(tmp_path, capsys):
    out = tmp_path / "rel.json"
    assert run(["relations", "--preset", "generic-sample", "--out", str(out)], capsys)[0] == 0
    assert out.read_text(encoding="utf-8") == GOLDEN.read_text(encoding="utf-8")


def test_relations_symbolic(capsys):
    code, out, _ = run(["relations", "--symbolic", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["case"] is None
    assert rep["presentation"]["span_dim"] == 6
    assert rep["presentation"]["rescaled_matches_sklyanin"]


def test_hash_depends_only_on_the_span():
    rels = relation_sextet(PRESETS["generic-sample"])
    mixed = [rels[0] + rels[1], rels[1]] + rels[2:]
    assert row_space_hash(rels) == row_space_hash(mixed)
    assert row_space_hash(rels) != row_space_hash(rels[1:])


def test_verify_generic_central_hilbert(capsys):
    code, out, _ = run(["verify", "--preset", "generic-sample", "--checks", "central,hilbert",
                        "--degree", "4", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert [c["status"] for c in rep["checks"]] == ["pass", "pass"]


def test_verify_commutative_degree_five(capsys):
    code, out, _ = run(["verify", "--preset", "commutative", "--checks", "hilbert", "--degree", "5",
                        "--json"], capsys)
    cert = json.loads(out)["checks"][0]["certificate"]
    assert code == 0
    assert cert["quadratic"]["rewrite"] == cert["quadratic"]["oracle"] == [1, 4, 10, 20, 35, 56]


def test_verify_classify_from_pairs(capsys):
    code, out, _ = run(["verify", "--lambda", "[[1,0],[2,1],[3,2],[4,1]]", "--checks", "classify",
                        "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["case"]["name"] == "generic"
    assert rep["checks"][0]["certificate"]["relation_span_dim"] == 6


def test_special_cases_skip_generic_only_checks(capsys):
    code, out, _ = run(["verify", "--preset", "coarse", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    status = {c["id"]: c["status"] for c in rep["checks"]}
    assert status["sigma"] == status["curveid"] == status["centralform"] == "not-applicable"
    assert status["hilbert"] == "pass"
    assert rep["checks"][1]["certificate"]["expected_growth"]


def test_failing_candidate_shows_normal_form(capsys):
    code, out, _ = run(["verify", "--preset", "generic-sample", "--checks", "central",
                        "--candidate", "z0.z1 - 3/2*z2.z3"], capsys)
    assert code == 1
    assert "NF([candidate, z0]) = " in out
    code, out, _ = run(["verify", "--preset", "generic-sample", "--checks", "central",
                        "--candidate", "z0.z1 - 3/2*z2.z3", "--json"], capsys)
    cand = json.loads(out)["checks"][0]["certificate"]["elements"]["candidate"]
    assert not cand["central"] and set(cand["normal_forms"]) == {"z0", "z1", "z2", "z3"}


def test_budget_exhaustion_exit_code(capsys):
    code, out, _ = run(["verify", "--preset", "generic-sample", "--checks", "hilbert",
                        "--degree", "5", "--budget-ms", "1", "--json"], capsys)
    assert code == 2
    assert json.loads(out)["checks"][0]["status"] == "skipped(budget)"


@pytest.mark.parametrize("argv,msg", [
    (["verify"], "λ source"),
    (["verify", "--preset", "commutative", "--pythagorean", "1,0;1,0;1,0;1,0"], "exactly one"),
    (["verify", "--lambda", "[1, 2, 1, 1]"], "λ[1]"),
    (["verify", "--lambda", "[1, 1, [1], 1]"], "λ[2]"),
    (["verify", "--lambda", "[1, 1"], "bad λ"),
    (["verify", "--preset", "commutative", "--degree", "1"], "degree"),
    (["verify", "--preset", "commutative", "--checks", "central,bogus"], "bogus"),
    (["verify", "--preset", "commutative", "--candidate", "z0.q"], "unknown letter"),
    (["verify", "--preset", "nowhere"], "invalid choice"),
    (["verify", "--pythagorean", "1,0;2,1"], "four"),
    ([], "choose a command"),
])
def test_usage_errors(argv, msg, capsys):
    code, _, err = run(argv, capsys)
    assert code == 3
    assert msg in err


def test_io_errors_name_the_path(tmp_path, capsys):
    missing = tmp_path / "nope" / "r.json"
    code, _, err = run(["report", "--preset", "commutative", "--checks", "chern", "--out", str(missing)], capsys)
    assert code == 3 and str(missing) in err
    code, _, err = run(["report", "--from", str(tmp_path / "absent.json")], capsys)
    assert code == 3 and "absent.json" in err


def test_report_round_trip(tmp_path, capsys):
    out = tmp_path / "r.json"
    summary = tmp_path / "s.txt"
    code, _, _ = run(["report", "--preset", "generic-sample", "--out", str(out), "--summary", str(summary)],
                     capsys)
    assert code == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert "timing_ms" not in rep["checks"][0]
    assert "passed 8, failed 0" in summary.read_text(encoding="utf-8")
    again = tmp_path / "r2.json"
    assert run(["report", "--from", str(out), "--out", str(again)], capsys)[0] == 0
    assert again.read_bytes() == out.read_bytes()


def test_report_from_rejects_bad_schema(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"tool": "ncsphere"}), encoding="utf-8")
    code, _, err = run(["report", "--from", str(bad)], capsys)
    assert code == 3 and "schema" in err


def test_timings_are_opt_in(capsys):
    _, out, _ = run(["verify", "--preset", "commutative", "--checks", "chern", "--json", "--timings"], capsys)
    assert "timing_ms" in json.loads(out)["checks"][0]


def test_toml_config(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('preset = "generic-sample"\nchecks = ["classify", "chern"]\ndegree = 3\n', encoding="utf-8")
    code, out, _ = run(["verify", "--config", str(cfg), "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["config"]["degree"] == 3
    assert [c["id"] for c in rep["checks"]] == ["chern", "classify"]
    # command-line values win over the file
    code, out, _ = run(["verify", "--config", str(cfg), "--preset", "commutative", "--degree", "4",
                        "--json"], capsys)
    rep = json.loads(out)
    assert rep["config"]["source"] == "preset:commutative" and rep["config"]["degree"] == 4
    cfg.write_text('preset = "commutative"\ncolour = "blue"\n', encoding="utf-8")
    code, _, err = run(["verify", "--config", str(cfg)], capsys)
    assert code == 3 and "colour" in err


def test_parse_pythagorean():
    p = parse_pythagorean("1,0; 2,1; 3,2; 4,1")
    assert p.is_unit()
    with pytest.raises(ValueError, match="pair 1"):
        parse_pythagorean("1,0;2;3,2;4,1")


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "ncsphere.cli", *args], capture_output=True, env=env,
                          check=False)


def test_reports_are_byte_identical_across_workers_and_seeds():
    args = ["verify", "--preset", "generic-sample", "--degree", "4", "--json"]
    a = _cli(args + ["--workers", "1"], 1)
    b = _cli(args + ["--workers", "3"], 2)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
