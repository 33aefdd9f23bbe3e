import json

import pytest

import ontohyp


def test_generate_is_deterministic():
    a = ontohyp.generate(height=2, seed=5)
    assert a == ontohyp.generate(height=2, seed=5)
    assert a["height"] == 2
    assert a["truth"] and a["observations"]


def test_truth_grades_perfectly():
    record = ontohyp.generate(height=3, seed=11)
    answer = "\n".join(ontohyp.render(t) for t in record["truth"])
    result = ontohyp.grade(record, answer)
    assert result["strong"] and result["weak"]
    assert result["quality"] == 1.0


def test_empty_response_scores_zero():
    result = ontohyp.grade(ontohyp.generate(seed=1), "")
    assert not result["weak"]
    assert result["quality"] == 0.0


def test_parse_and_render():
    assert ontohyp.parse("All mammals are hairy.") == "property(mammal, hairy)"
    assert ontohyp.parse("Wumpus is Amy.") is None
    assert ontohyp.render("subtype(ragdoll, cat)") == "All ragdolls are cats."


def test_explain_and_close():
    visible = ["member(Jack, rat)", "subtype(rat, rodent)"]
    trees = ontohyp.explain(visible, ["subtype(rodent, mammal)"], ["member(Jack, mammal)"])
    assert trees is not None and len(trees) == 1
    assert ontohyp.explain(visible, [], ["member(Jack, mammal)"]) is None
    assert "member(Jack, rodent)" in ontohyp.close(visible)


def test_wilson_interval():
    lo, hi = ontohyp.wilson_interval(0, 100)
    assert lo == 0.0 and abs(hi - 0.0370) < 1e-4
    with pytest.raises(ontohyp.InvalidCounts):
        ontohyp.wilson_interval(1, 0)


def test_errors_map_to_python():
    with pytest.raises(ontohyp.Infeasible):
        ontohyp.generate(height=1, mode="single", subtask="infer-subtype", subtype_style="hide-edge")
    assert issubclass(ontohyp.Infeasible, ontohyp.Error)
    with pytest.raises(ontohyp.FormatError):
        ontohyp.render("nonsense")


def test_cli(tmp_path):
    out = tmp_path / "d.jsonl"
    code, stdout, _ = ontohyp.run_cli(["generate", "--count", "3", "--out", str(out)])
    assert code == 0 and "wrote 3 examples" in stdout
    assert len([json.loads(line) for line in out.read_text().splitlines()]) == 3
    code, _, _ = ontohyp.run_cli(["generate"])
    assert code == 1
