import json

import numpy as np
import pytest

from copchase import (
    ParseError,
    ValidationError,
    gen_random_gamble,
    gen_random_graph,
    parse_instance,
    serialize_instance,
)
from conftest import CHAIN_EDGE_LIST, CHAIN_JSON


def test_parse_chain_json():
    g, gamble = parse_instance(CHAIN_JSON)
    assert not g.directed
    assert g.labels == ("v0", "v1", "v2", "v3")
    assert g.out_adj == ((1,), (0, 2), (1, 3), (2,))
    assert gamble.p == (0.3, 0.7, 0.0, 0.0)


def test_parse_chain_edge_list_matches_json():
    g_json, gam_json = parse_instance(CHAIN_JSON)
    g_el, gam_el = parse_instance(CHAIN_EDGE_LIST)
    assert g_el.labels == g_json.labels
    assert g_el.out_adj == g_json.out_adj
    assert gam_el.p == gam_json.p


def test_parse_rejects_empty_vertex_list():
    with pytest.raises(ParseError, match="empty instance"):
        parse_instance('{"directed": false, "vertices": [], "edges": [], "gamble": {}}')


def test_parse_json_syntax_error_reports_position():
    with pytest.raises(ParseError, match=r"line 1 column"):
        parse_instance('{"directed": false,,}')


def test_parse_json_unknown_gamble_label():
    doc = '{"directed": false, "vertices": ["a"], "edges": [], "gamble": {"b": 1.0}}'
    with pytest.raises(ParseError, match="'b'"):
        parse_instance(doc)


def test_parse_json_duplicate_gamble_key():
    doc = '{"directed": false, "vertices": ["a"], "edges": [], "gamble": {"a": 0.5, "a": 0.5}}'
    with pytest.raises(ParseError, match="duplicate key"):
        parse_instance(doc)


def test_parse_json_missing_gamble_entries_strict():
    doc = '{"directed": false, "vertices": ["a", "b"], "edges": [["a","b"]], "gamble": {"a": 0.5}}'
    with pytest.raises(ValidationError, match="without a gamble entry"):
        parse_instance(doc)
    # permissive accepts the same file as a sub-distribution
    g, gamble = parse_instance(doc, mode="permissive")
    assert gamble.p == (0.5, 0.0)


def test_parse_json_missing_entries_fine_when_rest_sums_to_one():
    doc = '{"directed": false, "vertices": ["a", "b"], "edges": [["a","b"]], "gamble": {"a": 1.0}}'
    _, gamble = parse_instance(doc)
    assert gamble.p == (1.0, 0.0)


def test_parse_json_unknown_edge_label():
    doc = '{"directed": false, "vertices": ["a"], "edges": [["a","z"]], "gamble": {"a": 1.0}}'
    with pytest.raises(ParseError, match="'z'"):
        parse_instance(doc)


def test_parse_json_duplicate_vertex_label():
    doc = '{"directed": false, "vertices": ["a", "a"], "edges": [], "gamble": {"a": 1.0}}'
    with pytest.raises(ParseError, match="duplicate vertex label"):
        parse_instance(doc)


def test_parse_json_missing_field():
    with pytest.raises(ParseError, match="'gamble'"):
        parse_instance('{"directed": false, "vertices": ["a"], "edges": []}')


def test_parse_edge_list_unknown_gamble_vertex():
    doc = "undirected\ne a b\np z 1.0\n"
    with pytest.raises(ParseError, match=r"line 3.*'z'"):
        parse_instance(doc)


def test_parse_edge_list_duplicate_gamble_entry():
    doc = "undirected\ne a b\np a 0.5\np a 0.5\n"
    with pytest.raises(ParseError, match=r"line 4.*duplicate"):
        parse_instance(doc)


def test_parse_edge_list_requires_header_first():
    with pytest.raises(ParseError, match="line 1"):
        parse_instance("e a b\n")


def test_parse_edge_list_rejects_duplicate_header():
    with pytest.raises(ParseError, match="duplicate graph-direction"):
        parse_instance("undirected\ndirected\n")


def test_parse_edge_list_bad_probability():
    with pytest.raises(ParseError, match=r"line 3.*'x'"):
        parse_instance("undirected\ne a b\np a x\n")


def test_parse_edge_list_unknown_directive():
    with pytest.raises(ParseError, match="'edge'"):
        parse_instance("undirected\nedge a b\n")


def test_parse_edge_list_directed_and_default_probabilities():
    doc = "directed\ne a b\ne b c\np a 1.0\n"
    g, gamble = parse_instance(doc)
    assert g.directed
    assert g.labels == ("a", "b", "c")
    assert g.out_adj == ((1,), (2,), ())
    assert gamble.p == (1.0, 0.0, 0.0)


def test_parse_edge_list_comments_and_blanks():
    doc = "# header\n\nundirected  # mode\ne a b  # trailing comment\np a 0.5\np b 0.5\n"
    g, gamble = parse_instance(doc)
    assert g.labels == ("a", "b")
    assert gamble.p == (0.5, 0.5)


def test_round_trip_random_instances():
    rng = np.random.default_rng(77)
    for i in range(40):
        n = int(rng.integers(1, 15))
        g = gen_random_graph(
            n,
            float(rng.random()),
            ensure_connected=bool(rng.integers(2)),
            seed=int(rng.integers(2**63)),
        )
        gamble = gen_random_gamble(
            n, ("uniform", "dirichlet", "sparse_support")[i % 3], seed=int(rng.integers(2**63))
        )
        g2, gamble2 = parse_instance(serialize_instance(g, gamble))
        assert g2.directed == g.directed
        assert g2.out_adj == g.out_adj
        assert g2.in_adj == g.in_adj
        assert gamble2.p == gamble.p  # bit-identical through JSON round-trip


def test_serialize_uses_exact_field_names():
    g, gamble = parse_instance(CHAIN_JSON)
    doc = json.loads(serialize_instance(g, gamble))
    assert set(doc) == {"directed", "vertices", "edges", "gamble"}
    assert doc["vertices"] == ["v0", "v1", "v2", "v3"]
    assert doc["gamble"]["v1"] == 0.7
