import json

import numpy as np
import pytest

from germlab.actions import DirectedGraph, universal_action
from germlab.algebra import GroupoidFunction
from germlab.builtins import builtin, corpus
from germlab.cli import main
from germlab.errors import ParseError, NotAssociative, UnknownName
from germlab.extensions import universal_germs
from germlab.groupoids import pair_groupoid
from germlab.io import (
    export_dot,
    groupoid_dot,
    load_action,
    load_function,
    load_graph,
    load_groupoid,
    load_semigroup,
    save_action,
    save_function,
    save_graph,
    save_groupoid,
    save_semigroup,
)



def test_semigroup_roundtrip(tmp_path):
    for name, S in corpus()[:6]:
        path = tmp_path / "s.json"
        save_semigroup(S, str(path))
        loaded = load_semigroup(str(path))
        assert (loaded.table == S.table).all()
        assert loaded.labels == S.labels
        assert loaded.zero == S.zero


def test_load_rejects_ragged_table(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"table": [[0, 1], [1]]}))
    with pytest.raises(ParseError):
        load_semigroup(str(path))


def test_load_rejects_non_integer_entries(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"table": [[0, "x"], [1, 0]]}))
    with pytest.raises(ParseError):
        load_semigroup(str(path))


def test_load_propagates_validation_failure(tmp_path):
    path = tmp_path / "assoc.json"
    # a non-associative magma table
    path.write_text(json.dumps({"table": [[0, 1], [0, 0]]}))
    with pytest.raises(NotAssociative) as err:
        load_semigroup(str(path))
    assert len(err.value.triple) == 3


def test_relation_roundtrip(tmp_path):
    from germlab.congruences import mu_relation
    from germlab.io import load_relation, save_relation

    S = builtin("clifford_chain:identity")
    mu = mu_relation(S)
    path = tmp_path / "r.json"
    save_relation(mu.blocks, str(path))
    assert tuple(load_relation(str(path))) == mu.blocks


def test_graph_roundtrip(tmp_path):
    g = DirectedGraph(3, ((0, 2), (1, 2)))
    path = tmp_path / "g.json"
    save_graph(g, str(path))
    assert load_graph(str(path)) == g


def test_action_roundtrip(tmp_path):
    S = builtin("b2")
    action = universal_action(S)
    path = tmp_path / "a.json"
    save_action(action, str(path))
    loaded = load_action(str(path), S)
    assert [m.images for m in loaded.maps] == [m.images for m in action.maps]


def test_groupoid_roundtrip(tmp_path):
    G = universal_germs(builtin("diamond_munn")).groupoid
    path = tmp_path / "g.json"
    save_groupoid(G, str(path))
    loaded = load_groupoid(str(path))
    assert loaded.n_arrows == G.n_arrows
    assert loaded.comp == G.comp
    assert loaded.basis == G.basis


def test_function_roundtrip(tmp_path):
    G = pair_groupoid(2)
    f = GroupoidFunction(G, np.array([1 + 2j, 0, -1.5, 0.25j]))
    path = tmp_path / "f.json"
    save_function(f, str(path))
    assert load_function(str(path), G).close_to(f)


def test_dot_export_marks_units_and_interior(tmp_path):
    G = universal_germs(builtin("diamond_munn")).groupoid
    text = groupoid_dot(G)
    assert text.startswith("digraph")
    assert "shape=box" in text
    assert "color=red" in text  # the swap germ is interior isotropy
    path = tmp_path / "g.gv"
    export_dot(G, str(path))
    assert path.read_text() == text


def test_builtin_unknown_name():
    with pytest.raises(UnknownName):
        builtin("nonsense")
    with pytest.raises(UnknownName):
        builtin("clifford_chain:bogus")


def test_builtin_graph_from_file(tmp_path):
    path = tmp_path / "graph.json"
    save_graph(DirectedGraph(1, ()), str(path))
    S = builtin(f"graph:{path}")
    assert S.size == 2


def test_cli_check_valid_and_exit_codes(tmp_path, capsys):
    assert main(["check", "builtin:b2"]) == 0
    out = capsys.readouterr().out
    assert "5 elements" in out

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"table": [[0, 0], [1, 1]]}))  # left-zero table
    assert main(["check", str(bad)]) == 2


def test_cli_verify_pass_and_corrupt(tmp_path, capsys):
    assert main(["verify", "builtin:b2", "--suite", "all"]) == 0
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad), "--suite", "universal"]) == 2


def test_cli_analyze_and_germs(tmp_path, capsys):
    assert main(["analyze", "builtin:b2"]) == 0
    out = capsys.readouterr().out
    assert "cryptic" in out
    dot = tmp_path / "g.gv"
    assert main(["germs", "builtin:diamond_munn", "--action", "tight",
                 "--dot", str(dot)]) == 0
    assert dot.exists()


def test_cli_example_emits_loadable_json(tmp_path, capsys):
    assert main(["example", "symmetric:2", "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["table"]) == 7
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    assert load_semigroup(str(path)).size == 7


def test_cli_verify_csv(tmp_path, capsys):
    csv = tmp_path / "norms.csv"
    assert main(["verify", "builtin:b2", "--suite", "algebra",
                 "--csv", str(csv)]) == 0
    capsys.readouterr()
    lines = csv.read_text().splitlines()
    assert lines[0] == "subject,check,sample,norm_sq,norm_star,deviation"
    assert len(lines) > 100


def test_cli_unknown_builtin_is_input_error(capsys):
    assert main(["verify", "builtin:wat", "--suite", "universal"]) == 2
