import pytest

from tangles.builtin import load, schema_text
from tangles.graphs import GraphParseError
from tangles.schema import parse_schema, parse_vertex, vertex_text


def test_builtin_suite_parses(schemas):
    assert schemas["ray"].rays[0].hub is None
    assert schemas["dray"].core.vertices == {"o"}
    assert schemas["spider"].families[0].is_ray_family
    assert schemas["comb"].families[0].ray_attach == (("R", "t"),)
    assert schemas["cliq"].cliques[0].attach == ()


def test_free_ray_schema():
    s = parse_schema("ray R\n")
    assert len(s.rays) == 1 and not s.core.vertices


def test_star_schema_valid():
    s = parse_schema("core:\nv c\nfamily L pattern { v p } attach c p\n")
    assert s.families[0].core_attach == (("c", "p"),)


def test_unknown_attachment_vertex():
    with pytest.raises(GraphParseError, match="unknown core vertex"):
        parse_schema("core:\nv c\nfamily L pattern { v p } attach z p\n")


def test_duplicate_names_rejected():
    bad = "core:\nv c\nray R at c\nclique R attach c\n"
    with pytest.raises(GraphParseError, match="duplicate part name"):
        parse_schema(bad)


def test_empty_pattern_rejected():
    with pytest.raises(GraphParseError, match="empty pattern"):
        parse_schema("core:\nv c\nfamily L pattern { } attach c p\n")


def test_disconnected_schema_rejected():
    with pytest.raises(GraphParseError, match="not connected"):
        parse_schema("core:\nv c\nray R\nray Q at c\n")
    with pytest.raises(GraphParseError, match="disconnect"):
        parse_schema("core:\nv c\nrayfam L\n")


def test_multiline_pattern_block():
    s = parse_schema(
        """core:
v c
family F pattern {
  v p
  v q
  e p q
} attach c p
attach c q
"""
    )
    assert len(s.families[0].pattern.vertices) == 2
    assert set(s.families[0].core_attach) == {("c", "p"), ("c", "q")}


def test_disconnected_pattern_rejected():
    with pytest.raises(GraphParseError, match="pattern must be connected"):
        parse_schema("core:\nv c\nfamily F pattern { v p ; v q } attach c p\n")


def test_truncate_examples(schemas):
    assert len(schemas["ray"].truncate(3).vertices) == 3
    assert len(schemas["ray"].truncate(3).edges) == 2
    star5 = schemas["star"].truncate(5)
    assert len(star5.vertices) == 6 and len(star5.edges) == 5
    cliq4 = schemas["cliq"].truncate(4)
    assert len(cliq4.vertices) == 4 and len(cliq4.edges) == 6


def test_truncate_monotone(schemas):
    for s in schemas.values():
        small, big = s.truncate(4), s.truncate(7)
        assert small.vertices <= big.vertices
        assert small.edges <= big.edges


def test_truncation_edges_match_has_edge(schemas):
    for s in schemas.values():
        g = s.truncate(5)
        verts = s.vertices_below(5)
        expect = set()
        for i, u in enumerate(verts):
            for w in verts[i + 1 :]:
                if s.has_edge(u, w):
                    a, b = sorted((vertex_text(u), vertex_text(w)))
                    expect.add((a, b))
        assert expect == set(g.edges)


def test_vertex_text_roundtrip(schemas):
    for s in schemas.values():
        for v in s.vertices_below(4):
            assert parse_vertex(s, vertex_text(v)) == v
    with pytest.raises(ValueError):
        parse_vertex(schemas["ray"], "ray:R:-1")
    with pytest.raises(ValueError):
        parse_vertex(schemas["ray"], "cliq:K:0")


def test_depth(schemas):
    spider = schemas["spider"]
    assert spider.depth(("core", "c")) == 0
    assert spider.depth(("fam", "L", 2, 9)) == 9
    comb = schemas["comb"]
    assert comb.depth(("fam", "T", 4, "t")) == 4
    assert comb.depth(("ray", "R", 6)) == 6


def test_to_text_reparses(schemas):
    for name, s in schemas.items():
        again = parse_schema(s.to_text())
        assert again.to_text() == s.to_text()
        assert again.digest() == s.digest()


def test_schema_text_matches_bundled_files():
    assert "rayfam L at c" in schema_text("spider")
    assert load("spider").digest() == parse_schema(schema_text("spider")).digest()
