import json
from pathlib import Path

import pytest

from cogkit.cli import main, run, build_parser
from cogkit.development import develop
from cogkit.fixtures import fixture_projects, seg_c6_witness, seg_cog
from cogkit.io import ProjectError, parse_project

SCHEMA = Path(__file__).resolve().parents[1] / "docs" / "project.schema.json"


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    assert main(["--quiet", "fixtures", str(out)]) == 0
    return out


def invoke(argv):
    args = build_parser().parse_args(argv)
    return run(args.command, args)


def strip_timing(report):
    report = dict(report)
    report.pop("timing")
    return json.dumps(report, sort_keys=True)


def test_corpus_files(corpus):
    assert sorted(p.name for p in corpus.iterdir()) == sorted(fixture_projects())


@pytest.mark.parametrize("fname", sorted(fixture_projects()))
def test_every_fixture_validates(corpus, fname):
    report, code = invoke(["validate", str(corpus / fname)])
    assert code == 0 and report["verdict"] == "pass" and report["violations"] == []


def test_schema_accepts_corpus(corpus):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    for p in corpus.iterdir():
        jsonschema.validate(json.loads(p.read_text()), schema)


def test_twist_fixture_asserts_twist(corpus):
    report, _ = invoke(["validate", str(corpus / "twist.json")])
    assert report["summary"]["cogs"]["TWIST"]["nontrivial_twists"] >= 1


def test_parse_seg(corpus):
    P = parse_project(corpus / "seg.json")
    C, F = P.cog("SEG")
    assert F is None and len(C.base.objects) == 3
    assert C.group(("u",)).order == 2 and C.group(("w",)).order == 3
    D = develop(C, P.witness("c6-witness"))
    ref = develop(seg_cog(), seg_c6_witness())
    assert D.scwol.objects == ref.scwol.objects and D.scwol.arrows == ref.scwol.arrows


def write(tmp_path, data, name="p.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return p


def test_unknown_group_names_path(tmp_path):
    data = fixture_projects()["seg.json"]
    data["cogs"]["SEG"]["local_groups"][1]["group"] = "C7"
    with pytest.raises(ProjectError) as e:
        parse_project(write(tmp_path, data))
    assert e.value.path == "$.cogs.SEG.local_groups[1].group"


def test_parse_errors(tmp_path):
    with pytest.raises(ProjectError, match="empty"):
        parse_project(write(tmp_path, ""))
    with pytest.raises(ProjectError, match="parse error"):
        parse_project(write(tmp_path, "{nope"))
    with pytest.raises(ProjectError, match="unsupported version"):
        parse_project(write(tmp_path, {"schema_version": 9}))
    with pytest.raises(ProjectError, match="schema_version"):
        parse_project(write(tmp_path, {}))
    data = fixture_projects()["seg.json"]
    data["witnesses"]["c6-witness"]["cog"] = "NOPE"
    with pytest.raises(ProjectError) as e:
        parse_project(write(tmp_path, data))
    assert e.value.path == "$.witnesses.c6-witness.cog"


def test_bad_element_path(tmp_path):
    data = fixture_projects()["seg.json"]
    data["witnesses"]["c6-witness"]["local"][0]["images"] = ["(1 2)"]
    with pytest.raises(ProjectError) as e:
        parse_project(write(tmp_path, data))
    assert e.value.path == "$.witnesses.c6-witness.local[0].images[0]"
    data["witnesses"]["c6-witness"]["local"][0]["images"] = ["(1 2 3 4 5 6)"]  # order 6, not a hom from C2
    with pytest.raises(ProjectError) as e:
        parse_project(write(tmp_path, data))
    assert e.value.path == "$.witnesses.c6-witness.local[0]"


def test_group_cap_from_env(corpus, monkeypatch):
    monkeypatch.setenv("COGKIT_MAX_GROUP_ORDER", "3")
    report, code = invoke(["validate", str(corpus / "s3-tri.json")])
    assert code == 2 and report["verdict"] == "error"


def test_roundtrip_adversarial(corpus):
    report, code = invoke(["roundtrip", str(corpus / "path-act.json"), "--policy", "adversarial"])
    assert code == 0 and report["verdict"] == "pass"
    assert len(report["summary"]["isomorphism"]) == 5


def test_develop_seg_report(corpus):
    report, code = invoke(["develop", str(corpus / "seg.json"), "c6-witness"])
    s = report["summary"]
    assert code == 0 and (s["objects"], s["arrows"]) == (11, 12)
    assert [d["betti"] for d in s["homology"]["degrees"]] == [1, 2]


def test_violation_exit_code(tmp_path):
    data = fixture_projects()["seg.json"]
    data["groups"]["C2b"] = {"cyclic": 2}
    data["cogs"]["SEG"]["local_groups"][2]["group"] = "C2b"  # edge group C2 mapping trivially
    report, code = invoke(["validate", str(write(tmp_path, data))])
    assert code == 1 and report["verdict"] == "fail"
    assert report["violations"][0]["kind"] == "psi not injective"


def test_usage_errors(corpus, tmp_path):
    assert invoke(["develop", str(corpus / "seg.json"), "NOPE"])[1] == 2
    assert invoke(["validate", str(tmp_path / "missing.json")])[1] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_quiet(corpus, capsys):
    assert main(["--quiet", "validate", str(corpus / "seg.json")]) == 0
    out = capsys.readouterr().out
    assert out.strip() == "validate: pass (0 violations)"


def test_dot_export(corpus, tmp_path):
    dot = tmp_path / "dev.dot"
    invoke(["develop", str(corpus / "seg.json"), "c6-witness", "--dot", str(dot)])
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 12


COMMANDS = [
    ["validate", "twist.json"],
    ["induce", "s3-tri.json", "--policy", "random:11"],
    ["develop", "seg.json", "c6-witness"],
    ["develop-block", "tri3.json"],
    ["roundtrip", "hex.json", "--policy", "adversarial"],
    ["assemble", "tri3.json"],
    ["compat-check", "s3-tri.json"],
    ["homology", "trivial.json", "hexagon"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_reports_deterministic(corpus, argv):
    argv = [argv[0], str(corpus / argv[1])] + argv[2:]
    first, c1 = invoke(argv)
    second, c2 = invoke(argv)
    assert c1 == c2 == 0
    assert strip_timing(first) == strip_timing(second)
    assert first["inputs_digest"] == second["inputs_digest"]
