import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cest.errors import (
    DuplicateEdge,
    DuplicateVertexInEdge,
    IndexOutOfRange,
    IsolatedVertex,
    OddOrder,
    ParseError,
)
from cest.hypergraph import (
    SimpleGraph,
    format_hypergraph,
    gen_blowup,
    gen_grid,
    gen_icosahedron,
    gen_petersen,
    gen_squid,
    gen_sunflower,
    icosahedron_mesh,
    is_odd_bipartite,
    parse_hypergraph,
    read_hypergraph,
    validate_and_build,
    write_hypergraph,
)


def test_sunflower3ure_degrees(sunflower3):
    assert sunflower3.k == 4 and sunflower3.n == 10 and sunflower3.m == 3
    assert sunflower3.degrees[0] == 3
    assert np.all(sunflower3.degrees[1:] == 1)
    assert sunflower3.max_degree == 3


def test_single_edge_degrees(single_edge):
    assert single_edge.degrees.tolist() == [1, 1, 1, 1]


def test_isolated_vertex_rejected():
    with pytest.raises(IsolatedVertex):
        validate_and_build(4, 5, [(1, 2, 3, 4)], one_based=True)
    h = validate_and_build(4, 5, [(1, 2, 3, 4)], one_based=True, allow_isolated=True)
    assert h.has_isolated and h.degrees[4] == 0


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([(0, 1, 2, 4)], IndexOutOfRange),
        ([(0, 1, 2, -1)], IndexOutOfRange),
        ([(0, 1, 1, 2)], DuplicateVertexInEdge),
        ([(0, 1, 2, 3), (3, 2, 1, 0)], DuplicateEdge),
    ],
)
def test_validation_errors(edges, exc):
    with pytest.raises(exc):
        validate_and_build(4, 4, edges)


def test_edges_canonical_order():
    h = validate_and_build(2, 3, [(2, 1), (1, 0)])
    assert h.edges.tolist() == [[0, 1], [1, 2]]
    assert h == validate_and_build(2, 3, [(0, 1), (2, 1)])


def test_hypergraph_is_immutable(sunflower3):
    with pytest.raises(ValueError):
        sunflower3.edges[0, 0] = 5
    with pytest.raises(Exception):
        sunflower3.k = 6


# ----------------------------------------------------------- generators


def _distinct(h):
    return len(set(h.edges.ravel().tolist()))


def test_squid_4():
    h = gen_squid(4)
    assert (h.n, h.m, h.k) == (13, 4, 4)
    head = [e for e in h.edges.tolist() if e == [0, 4, 8, 12]]
    assert head, "head edge missing"
    legs = [set(e) for e in h.edges.tolist() if e != [0, 4, 8, 12]]
    assert all(len(leg & set(head[0])) == 1 for leg in legs)


def test_squid_6_counts():
    h = gen_squid(6)
    assert _distinct(h) == 31 == h.n
    assert h.m == 6


def test_squid_odd_order():
    with pytest.raises(OddOrder):
        gen_squid(5)


@pytest.mark.parametrize("k, delta, n", [(4, 3, 10), (4, 1, 4), (4, 10, 31), (6, 10, 51)])
def test_sunflower_sizes(k, delta, n):
    h = gen_sunflower(k, delta)
    assert h.n == n and h.m == delta
    assert h.degrees.sum() == k * delta
    assert np.count_nonzero(h.degrees == delta) == 1 or delta == 1
    rows = [set(e) for e in h.edges.tolist()]
    for a, b in itertools.combinations(rows, 2):
        assert a & b == {0}


def test_sunflower_matches_figure(sunflower3):
    assert gen_sunflower(4, 3) == sunflower3


def test_sunflower_odd_order():
    with pytest.raises(OddOrder):
        gen_sunflower(3, 2)


@pytest.mark.parametrize("s, n, m", [(0, 4, 1), (1, 9, 4), (2, 25, 16), (3, 81, 64)])
def test_grid_sizes(s, n, m):
    h = gen_grid(s)
    assert (h.n, h.m) == (n, m)
    assert h.degrees.sum() == 4 * 4**s


def test_grid_3_interior_degrees_by_lattice_count():
    h = gen_grid(3)
    side = 8
    # count cells touching each lattice point directly
    count = np.zeros((side + 1, side + 1), dtype=int)
    for r in range(side):
        for c in range(side):
            for dr, dc in ((0, 0), (0, 1), (1, 0), (1, 1)):
                count[r + dr, c + dc] += 1
    assert np.array_equal(h.degrees.reshape(side + 1, side + 1), count)
    assert np.all(count[1:-1, 1:-1] == 4)


def test_petersen():
    g = gen_petersen()
    assert g.n == 10 and len(g.edges) == 15
    assert np.all(g.degrees() == 3)
    a = g.adjacency_matrix()
    q = np.diag(g.degrees()) + a
    assert np.linalg.eigvalsh(q)[0] == pytest.approx(1.0, abs=1e-12)


def test_petersen_non_bipartite():
    g = gen_petersen()
    # a graph is bipartite iff its adjacency spectrum is symmetric; odd cycle check via 2-colouring
    colour = {0: 0}
    stack = [0]
    adj = {v: [] for v in range(g.n)}
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    conflict = False
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in colour:
                colour[v] = 1 - colour[u]
                stack.append(v)
            elif colour[v] == colour[u]:
                conflict = True
    assert conflict


def test_blowup_petersen_2():
    h = gen_blowup(gen_petersen(), 2)
    assert (h.k, h.n, h.m) == (4, 20, 15)
    assert np.array_equal(h.degrees, np.repeat(gen_petersen().degrees(), 2))


def test_blowup_identity():
    g = gen_petersen()
    h = gen_blowup(g, 1)
    assert h.k == 2
    assert {tuple(e) for e in h.edges.tolist()} == {tuple(sorted(e)) for e in g.edges}


def test_blowup_triangle_3_enumerated():
    tri = SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))
    h = gen_blowup(tri, 3)
    sets = [set(range(3 * v, 3 * v + 3)) for v in range(3)]
    expect = sorted(sorted(sets[u] | sets[v]) for u, v in itertools.combinations(range(3), 2))
    assert (h.k, h.n, h.m) == (6, 9, 3)
    assert h.edges.tolist() == expect


@pytest.mark.parametrize("s, n, m", [(0, 32, 20), (1, 122, 80), (2, 482, 320), (3, 1922, 1280)])
def test_icosahedron_sizes(s, n, m):
    h = gen_icosahedron(s)
    assert (h.n, h.m) == (n, m)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_icosahedron_mesh_is_closed_surface(s):
    nv, faces = icosahedron_mesh(s)
    edge_count = {}
    for f in faces:
        for a, b in itertools.combinations(f, 2):
            key = (min(a, b), max(a, b))
            edge_count[key] = edge_count.get(key, 0) + 1
    assert set(edge_count.values()) == {2}
    assert nv - len(edge_count) + len(faces) == 2  # Euler characteristic of the sphere


@pytest.mark.parametrize("s", [0, 1, 2])
def test_icosahedron_degrees(s):
    h = gen_icosahedron(s)
    nv = 10 * 4**s + 2
    centres = h.degrees[nv:]
    mesh = h.degrees[:nv]
    assert np.all(centres == 1)
    assert np.all(mesh[:12] == 5)
    assert np.all(mesh[12:] == 6)
    assert h.max_degree == (5 if s == 0 else 6)


@pytest.mark.parametrize(
    "make",
    [lambda: gen_squid(4), lambda: gen_squid(6), lambda: gen_sunflower(4, 5), lambda: gen_grid(2),
     lambda: gen_blowup(gen_petersen(), 3), lambda: gen_icosahedron(1)],
)
def test_generators_pass_validation(make):
    h = make()
    again = validate_and_build(h.k, h.n, h.edges.tolist())
    assert again == h and not again.has_isolated


@pytest.mark.parametrize("h, expect", [(gen_sunflower(4, 3), True), (gen_squid(4), True),
                                       (gen_grid(1), True)])
def test_odd_bipartite_families(h, expect):
    assert is_odd_bipartite(h) is expect


def test_blowup_petersen_not_odd_bipartite():
    assert not is_odd_bipartite(gen_blowup(gen_petersen(), 1))


# ------------------------------------------------------------------ I/O

FIG_TEXT = "4 3 10\n1 2 3 4\n1 5 6 7\n1 8 9 10\n"


def test_parse_figure(sunflower3):
    assert parse_hypergraph(FIG_TEXT) == sunflower3


def test_comments_and_blank_lines(sunflower3):
    text = "# sunflower\n4 3 10\n\n1 2 3 4\n# petals\n1 5 6 7\n  1 8 9 10  \n"
    assert parse_hypergraph(text) == sunflower3


def test_roundtrip_file(tmp_path, sunflower3):
    p = tmp_path / "h.txt"
    write_hypergraph(sunflower3, p)
    assert p.read_text() == FIG_TEXT
    assert read_hypergraph(p) == sunflower3


def test_writer_normalizes():
    text = "4 2 7\n7 6 5 1\n4 3 1 2\n"
    assert format_hypergraph(parse_hypergraph(text)) == "4 2 7\n1 2 3 4\n1 5 6 7\n"


def test_duplicate_edge_in_file():
    with pytest.raises(DuplicateEdge):
        parse_hypergraph("4 2 4\n1 2 3 4\n4 3 2 1\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("4 1\n1 2 3 4\n", 1),
        ("4 1 4\n1 2 x 4\n", 2),
        ("4 1 4\n1 2 3\n", 2),
        ("4 1 4\n1 2 3 5\n", 2),
        ("4 1 4\n1 2 3 4\n1 2 3 4\n", 3),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_hypergraph(text)
    assert info.value.lineno == line


def test_edge_count_mismatch():
    with pytest.raises(ParseError):
        parse_hypergraph("4 2 4\n1 2 3 4\n")


@st.composite
def hypergraphs(draw):
    k = draw(st.sampled_from([2, 3, 4]))
    n = draw(st.integers(k, 9))
    all_edges = list(itertools.combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(all_edges), min_size=1, max_size=8, unique=True))
    return validate_and_build(k, n, edges, allow_isolated=True)


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_roundtrip_property(h):
    again = parse_hypergraph(format_hypergraph(h), allow_isolated=True)
    assert again == h
    assert np.array_equal(again.degrees, h.degrees)
    assert h.degrees.sum() == h.k * h.m
