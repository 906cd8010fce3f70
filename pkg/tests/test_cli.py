from __future__ import annotations

import json

from click.testing import CliRunner

from csdiv.cli import EXIT_INCONCLUSIVE, EXIT_PARSE, EXIT_PRECONDITION, canonical_divisors, main


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_invariants_text():
    res = run("invariants", "(1,1,1)")
    assert res.exit_code == 0
    assert "q            0" in res.output
    assert "b+=1 b-=0 b0=2" in res.output


def test_invariants_json():
    res = run("invariants", "(0,-5)", "--format", "json")
    obj = json.loads(res.output)
    assert obj["invariants"]["q"] == 11
    assert obj["invariants"]["H1"] == {"free_rank": 1, "torsion": [4]}


def test_parse_error_shows_caret():
    res = run("invariants", "(1,,2)")
    assert res.exit_code == EXIT_PARSE
    assert "^" in res.output


def test_precondition_exit():
    res = run("dual", "(-2,-2)")
    assert res.exit_code == EXIT_PRECONDITION


def test_classify_fillable():
    res = run("classify", "(1,-2,-3,-3,-2,-3,-2)", "--format", "json")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    f = obj["verdicts"]["fillability"]
    assert f["status"] == "fillable" and f["family"] == 4
    h = obj["fillings"]["minimal_filling"]
    assert (h["b1"], h["b2"], h["b_minus"]) == (0, 4, 3)


def test_classify_convex_and_semidefinite():
    res = run("classify", "(-2,-5)")
    assert res.exit_code == 0
    assert "stein case 3" in res.output
    res = run("classify", "(-2,-2,-2,-2)", "--format", "json")
    obj = json.loads(res.output)
    assert obj["verdicts"]["anti_canonical"]["status"] == "anti_canonical"


def test_equiv_trace_and_distinct():
    res = run("equiv", "(3,-2,0)", "(2,-1,0)")
    assert res.exit_code == 0
    assert "equivalent" in res.output and "-[" in res.output
    res = run("equiv", "(0,4)", "(0,-4)", "--format", "json")
    obj = json.loads(res.output)
    assert obj["kind"] == "distinct" and obj["witness"]["invariant"] == "bundle_class"


def test_equiv_inconclusive_exit():
    # equivalent, but the normal forms differ so a search is needed
    res = run("equiv", "(0,-4,2)", "(-2,-1,-5,1,-1)", "--max-bfs-nodes", "1")
    assert res.exit_code == EXIT_INCONCLUSIVE
    assert "budget exhausted" in res.output
    res = run("equiv", "(0,-4,2)", "(-2,-1,-5,1,-1)")
    assert res.exit_code == 0 and "equivalent" in res.output


def test_budget_env():
    res = run("equiv", "(1,4)", "(1,1,0)", env={"MAX_BFS_NODES": "0"})
    assert res.exit_code == EXIT_PRECONDITION


def test_dual():
    res = run("dual", "(-5,-2)")
    assert res.output.strip() == "(-4,-2,-2)"
    res = run("dual", "(-3,-2)", "--format", "json")
    assert json.loads(res.output)["dual"] == {"entries": [-4], "irreducible_nodal": True}


def test_enumerate(tmp_path):
    out = tmp_path / "list.jsonl"
    res = run("enumerate", "--max-length", "3", "--entries=-2..1", "--invariants-only", "--output", str(out))
    assert res.exit_code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == len(list(canonical_divisors(3, -2, 1)))
    assert all("invariants" in json.loads(x) for x in lines)
