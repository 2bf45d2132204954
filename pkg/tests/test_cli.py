"""End-to-end runs of the five subcommands against temp directories."""

import json

import pytest

from matgrowth.cli import main, parse_field, parse_tag, parse_triple
from matgrowth.errors import MatGrowthError
from matgrowth.groups import SubgroupTag
from matgrowth.jsonio import digest, read_json, write_json
from matgrowth.reports import run_report
from matgrowth.setfiles import load_setfile


def gen_random(tmp_path, name="a.json", group="T2", field="7", size=12, seed=5):
    path = tmp_path / name
    code = main(
        [
            "gen",
            "--group",
            group,
            "--field",
            field,
            "--kind",
            "random",
            "--size",
            str(size),
            "--seed",
            str(seed),
            "--out",
            str(path),
        ]
    )
    assert code == 0
    return path


# -- argument helpers -----------------------------------------------------------


def test_parse_tag_forms():
    assert parse_tag("scaled_unipotent") == SubgroupTag("scaled_unipotent")
    assert parse_tag("torus:3") == SubgroupTag("torus", x=3)
    assert parse_tag("line:1,2") == SubgroupTag("line", direction=(1, 2))
    assert parse_tag("line_center:0,4") == SubgroupTag("line_center", direction=(0, 4))


def test_parse_field_with_explicit_modulus():
    spec = parse_field("9", "1,0,1")
    assert spec.q == 9
    assert tuple(spec.modulus) == (1, 0, 1)
    assert parse_field("25", None).q == 25


def test_parse_triple_rejects_short_input():
    assert parse_triple("1,2,3") == (1, 2, 3)
    with pytest.raises(MatGrowthError):
        parse_triple("1,2")


# -- gen ----------------------------------------------------------------------


def test_gen_random_writes_a_loadable_set(tmp_path, capsys):
    path = gen_random(tmp_path)
    out = capsys.readouterr().out
    assert "12 elements" in out
    sf = load_setfile(path)
    assert len(sf.elements) == 12
    assert sf.generator == {"kind": "random", "size": 12, "seed": 5}


def test_gen_other_kinds(tmp_path):
    sub = tmp_path / "sub.json"
    assert (
        main(
            ["gen", "--group", "T2", "--field", "5", "--kind", "subgroup",
             "--tag", "unipotent", "--out", str(sub)]
        )
        == 0
    )
    assert len(load_setfile(sub).elements) == 5

    cs = tmp_path / "coset.json"
    assert (
        main(
            ["gen", "--group", "T2", "--field", "7", "--kind", "coset",
             "--tag", "scaled_unipotent", "--rep", "3,0,1", "--out", str(cs)]
        )
        == 0
    )
    assert len(load_setfile(cs).elements) == 42

    box = tmp_path / "box.json"
    assert (
        main(
            ["gen", "--group", "H", "--field", "101", "--kind", "box",
             "--n", "2", "--out", str(box)]
        )
        == 0
    )
    assert len(load_setfile(box).elements) == 16

    pc = tmp_path / "pc.json"
    assert (
        main(
            ["gen", "--group", "T2", "--field", "7", "--kind", "perturbed_coset",
             "--tag", "scaled_unipotent", "--rep", "3,0,1", "--swaps", "4",
             "--seed", "77", "--out", str(pc)]
        )
        == 0
    )
    assert len(load_setfile(pc).elements) == 42


def test_gen_missing_arguments_fail_cleanly(tmp_path, capsys):
    code = main(
        ["gen", "--group", "T2", "--field", "7", "--kind", "random",
         "--out", str(tmp_path / "x.json")]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_bad_input_paths_fail_cleanly(tmp_path, capsys):
    code = main(["report", str(tmp_path / "nope.json"), "--out", str(tmp_path / "r.json")])
    assert code == 1
    assert "error:" in capsys.readouterr().err

    code = main(["verify", str(tmp_path / "nocorpus")])
    assert code == 1
    assert "error:" in capsys.readouterr().err

    mangled = tmp_path / "mangled.json"
    mangled.write_text("{not json", encoding="utf-8")
    code = main(["report", str(mangled), "--out", str(tmp_path / "r.json")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


# -- report ---------------------------------------------------------------------


def test_report_command(tmp_path, capsys):
    setpath = gen_random(tmp_path)
    out = tmp_path / "report.json"
    csvpath = tmp_path / "report.csv"
    code = main(
        ["report", str(setpath), "--out", str(out), "--csv", str(csvpath)]
    )
    assert code == 0
    printed = capsys.readouterr().out
    assert "exit=0" in printed
    rep = read_json(out)
    assert rep["schema"] == "matgrowth.report.v1"
    assert rep["status"]["exit_code"] == 0
    assert csvpath.read_text(encoding="utf-8").startswith("key,value")


def test_report_flag_issues_propagate_to_exit_code(tmp_path, capsys):
    setpath = gen_random(tmp_path, name="big.json", field="5", size=30, seed=1)
    out = tmp_path / "report.json"
    code = main(["report", str(setpath), "--out", str(out)])
    assert code == 2
    assert "issue: flag_" in capsys.readouterr().out


def test_report_option_flags(tmp_path):
    setpath = gen_random(tmp_path)
    out = tmp_path / "report.json"
    code = main(
        ["report", str(setpath), "--out", str(out), "--lemma-k", "4",
         "--bridge", "off", "--subgroup", "torus:0", "--timings"]
    )
    assert code == 0
    rep = read_json(out)
    assert rep["options"]["lemma_k"] == 4
    assert rep["bridge"] == {"skipped": "disabled"}
    assert rep["subgroup"]["tag"] == {"kind": "torus", "x": 0}
    assert "timings" in rep


# -- incidence --------------------------------------------------------------------


def test_incidence_bridge_mode(tmp_path, capsys):
    setpath = gen_random(tmp_path, size=8, seed=2)
    out = tmp_path / "inc.json"
    code = main(["incidence", "--set", str(setpath), "--out", str(out)])
    assert code == 0
    assert "match=True" in capsys.readouterr().out
    payload = read_json(out)
    assert payload["bridge"]["matches_energy"]


def test_incidence_probe_mode(tmp_path, capsys):
    out = tmp_path / "probe.json"
    code = main(
        ["incidence", "--field", "7", "--points", "40", "--planes", "55",
         "--seed", "42", "--out", str(out)]
    )
    assert code == 0
    probe = read_json(out)["probe"]
    assert probe["incidences"] == 275
    assert probe["max_collinear"] == 4
    assert "incidences=275" in capsys.readouterr().out


def test_incidence_probe_needs_sizes(tmp_path):
    code = main(["incidence", "--field", "7", "--out", str(tmp_path / "x.json")])
    assert code == 1


# -- structure --------------------------------------------------------------------


def test_structure_command(tmp_path, capsys):
    sub = tmp_path / "sub.json"
    main(
        ["gen", "--group", "T2", "--field", "5", "--kind", "subgroup",
         "--tag", "scaled_unipotent", "--out", str(sub)]
    )
    out = tmp_path / "scan.json"
    code = main(["structure", str(sub), "--out", str(out)])
    assert code == 0
    assert "verdict=POTENT" in capsys.readouterr().out
    payload = read_json(out)
    assert payload["scan"]["verdict"] == "POTENT"
    assert "sum_product" in payload


# -- verify -----------------------------------------------------------------------


def build_corpus(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    gen_random(corpus, name="sample.json")
    sf = load_setfile(corpus / "sample.json")
    rep, code = run_report(sf)
    write_json(
        corpus / "manifest.json",
        {"sets": [{"name": "sample", "file": "sample.json", "options": {}}]},
    )
    write_json(
        corpus / "expected.json",
        {
            "sample": {
                "elements_sha256": sf.elements_digest,
                "report_sha256": digest(rep),
                "exit_code": code,
                "values": {"growth.size": 12},
            }
        },
    )
    return corpus


def test_verify_passes_on_a_fresh_corpus(tmp_path, capsys):
    corpus = build_corpus(tmp_path)
    assert main(["verify", str(corpus)]) == 0
    assert "[ok] sample" in capsys.readouterr().out


def test_verify_catches_tampered_expectations(tmp_path, capsys):
    corpus = build_corpus(tmp_path)
    expected = read_json(corpus / "expected.json")
    expected["sample"]["values"]["growth.size"] = 13
    write_json(corpus / "expected.json", expected)
    assert main(["verify", str(corpus)]) == 4
    out = capsys.readouterr().out
    assert "[FAIL] sample" in out
    assert "growth.size" in out


def test_verify_catches_tampered_elements(tmp_path, capsys):
    corpus = build_corpus(tmp_path)
    obj = read_json(corpus / "sample.json")
    obj["elements"] = obj["elements"][:-1]
    write_json(corpus / "sample.json", obj)
    assert main(["verify", str(corpus)]) == 4
    assert "[FAIL]" in capsys.readouterr().out
