import json

import pytest

from esgames import bang_game, validate_game
from esgames.cli import main
from esgames.fixtures import (
    build_choice_game,
    build_example_65,
    build_paper_strategy,
    build_swap_game,
    build_token_game,
    catalog_path,
)
from esgames.serialize import Bundle, dumps, encode, write_bundle
from esgames.workbench import minimal_conflicts, to_dot, validate_bundle


@pytest.fixture
def catalog(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(catalog_path().read_text(encoding="utf-8"), encoding="utf-8")
    return path


def _write(tmp_path, name, objects, expect_fail=None):
    path = tmp_path / name
    write_bundle(encode(objects, expect_fail), path)
    return path


def test_validate_catalog(catalog, capsys):
    assert main(["validate", str(catalog)]) == 0
    assert capsys.readouterr().out.startswith(f"{catalog}: PASS")


def test_validate_json_report(catalog, capsys):
    assert main(["validate", str(catalog), "--report", "json", "--kind", "game"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["schema_version"] == 1 and report["passed"]
    kinds = {d["kind"] for f in report["files"] for d in f["documents"]}
    assert kinds == {"game"}


def test_cli_matches_library(catalog, capsys):
    main(["validate", str(catalog), "--report", "json"])
    cli = json.loads(capsys.readouterr().out)
    lib = validate_bundle(Bundle.load(catalog))
    assert [d["passed"] for d in cli["files"][0]["documents"]] == [d.passed for d in lib.documents]


def test_corrupted_law_exits_one(tmp_path, capsys):
    path = _write(tmp_path, "token.json", {"token": build_token_game(2)})
    data = json.loads(path.read_text())
    rows = data["documents"]["token.law"]["table"]
    rows[3][2] = [0, 1]
    path.write_text(json.dumps(data))
    assert main(["validate", str(path)]) == 1
    assert "law:multiplication" in capsys.readouterr().out


def test_nonlocal_example_bundle(tmp_path):
    path = _write(tmp_path, "ex.json", {"ex": build_example_65()[1]}, {"ex": ["locality"]})
    assert main(["validate", str(path)]) == 0
    untagged = _write(tmp_path, "ex2.json", {"ex": build_example_65()[1]})
    assert main(["validate", str(untagged)]) == 1


def test_input_errors_exit_two(tmp_path):
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate", str(bad)]) == 2
    dangling = tmp_path / "dangling.json"
    dangling.write_text(json.dumps({"documents": {"s": {"kind": "strategy", "internal": "x",
                                                        "game": "y", "projection": {}}}}))
    assert main(["validate", str(dangling)]) == 2


def test_build_bang(catalog, tmp_path):
    out = tmp_path / "bang.json"
    assert main(["build", "bang", str(catalog), "--name", "swap-game", "-n", "2", "--out", str(out)]) == 0
    bundle = Bundle.load(out)
    assert validate_game(bundle.get("bang2-swap-game")).ok
    assert bundle.get("bang2-swap-game") == bang_game(build_swap_game(), 2)
    assert main(["validate", str(out)]) == 0


def test_build_bang_on_mixed_game(catalog, capsys):
    assert main(["build", "bang", str(catalog), "--name", "token-2"]) == 1
    assert "initial moves all have the same polarity" in capsys.readouterr().err


def test_build_tcg(catalog, tmp_path):
    out = tmp_path / "tcg.json"
    assert main(["build", "tcg", str(catalog), "--name", "token-2", "--out", str(out)]) == 0
    bundle = Bundle.load(out)
    assert len(bundle.names("family")) == 3
    assert main(["validate", str(out)]) == 0


@pytest.mark.parametrize("construction", ["dual", "copycat", "uniform-copycat"])
def test_build_revalidates(catalog, tmp_path, construction):
    out = tmp_path / "out.json"
    assert main(["build", construction, str(catalog), "--name", "swap-game", "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0


def test_build_par(catalog, tmp_path):
    out = tmp_path / "par.json"
    assert main(["build", "par", str(catalog), str(catalog), "--name", "swap-game", "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0


@pytest.mark.parametrize("construction,name", [("colift", "counit-forks"), ("lift", "bang-split-swap")])
def test_build_lifts(catalog, tmp_path, construction, name):
    out = tmp_path / "lift.json"
    assert main(["build", construction, str(catalog), "--name", name, "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0


def test_build_wrong_kind(catalog):
    assert main(["build", "dual", str(catalog), "--name", "strategy-1-n2"]) == 2


def test_search_uniform(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"s1": build_paper_strategy(1, 2), "s4": build_paper_strategy(4, 3)})
    out = tmp_path / "u.json"
    assert main(["search-uniform", str(path), "--name", "s1", "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0
    capsys.readouterr()
    cert = tmp_path / "cert.json"
    assert main(["search-uniform", str(path), "--name", "s4", "--certificate", str(cert)]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["result"] == "none"
    assert json.loads(cert.read_text())["exhaustive"] is True
    assert main(["search-uniform", str(path), "--name", "s1", "--bound", "3"]) == 3


def test_strategy_two_is_trivial(tmp_path):
    path = _write(tmp_path, "s.json", {"s2": build_paper_strategy(2, 2)})
    out = tmp_path / "u.json"
    assert main(["search-uniform", str(path), "--out", str(out)]) == 0
    u = Bundle.load(out).get("uniform-s2")
    game = u.game
    # with no Player moves every response is the unit and φ_α is α itself
    assert {r for r, _ in u.phi.values()} == {game.P.unit}
    for alpha in game.N.elements:
        perm = game.n_action.perms[alpha]
        assert u.event_map(alpha) == {e: perm[e] for e in u.strategy.internal.events}


def test_dot_strategy_one(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"s1": build_paper_strategy(1, 2)})
    assert main(["export-dot", str(path)]) == 0
    dot = capsys.readouterr().out
    arrows = [line for line in dot.splitlines() if "->" in line]
    assert arrows == ['  "n0" -> "p0";', '  "n1" -> "p1";']
    assert '"n0" [label="⊖0"]' in dot


def test_dot_empty_structure(catalog, capsys):
    assert main(["export-dot", str(catalog), "--name", "empty-game"]) == 0
    assert capsys.readouterr().out == "digraph G {\n}\n"


def test_dot_views(catalog, capsys):
    assert main(["export-dot", str(catalog), "--name", "choice-game", "--view", "conflict"]) == 0
    dot = capsys.readouterr().out
    assert '"a" -> "b" [dir=none, style=dashed];' in dot
    # inherited conflicts are not drawn
    assert dot.count("dashed") == 1
    assert main(["export-dot", str(catalog), "--name", "swap-game", "--view", "family"]) == 0
    assert capsys.readouterr().out.count("subgraph cluster_") == 8


def test_minimal_conflicts():
    assert minimal_conflicts(build_choice_game().es) == [("a", "b")]


def test_dot_is_deterministic(catalog):
    bundle = Bundle.load(catalog)
    obj = bundle.get("forks-game")
    assert to_dot(obj, "family") == to_dot(Bundle.load(catalog).get("forks-game"), "family")
    assert dumps(encode({"x": obj})) == dumps(encode({"x": obj}))
