from math import comb

import pytest

from psts.constructions import (
    ALL_TRIANGLE_PERMS,
    GraphOnSet,
    ID,
    NoFixedSymbol,
    RHO,
    RHO_INV,
    SIGMA_A,
    SIGMA_B,
    SIGMA_C,
    TrianglePerm,
    XiMatrix,
    grassmannian,
    mu_toggle,
    multiveblen,
    mvc_to_stp,
    remark_212_mvc,
    stp,
    stp_pair,
    stp_pair_type,
    stp_to_mvc,
    stp_triple,
    veronesian,
)
from psts.core import induced_substructure, validate_psts
from psts.isomorphism import are_isomorphic, canonical_form


def test_triangle_perm_table():
    assert RHO("a") == "b" and RHO("b") == "c" and RHO("c") == "a"
    assert RHO.inverse() == RHO_INV
    for x, sigma in (("a", SIGMA_A), ("b", SIGMA_B), ("c", SIGMA_C)):
        assert sigma(x) == x
        others = [y for y in "abc" if y != x]
        assert sigma(others[0]) == others[1]
    assert len(set(ALL_TRIANGLE_PERMS)) == 6
    assert TrianglePerm.from_token("rho-") == RHO_INV
    with pytest.raises(ValueError):
        TrianglePerm.from_token("nope")


def test_xi_matrix_skew_consistency():
    xi = XiMatrix.from_entries((1, 2, 3), {(2, 1): RHO, (2, 3): ID, (3, 1): SIGMA_A})
    assert xi(1, 2) == RHO_INV and xi(1, 3) == SIGMA_A.inverse()
    assert xi(2, 2) == ID
    with pytest.raises(ValueError):
        XiMatrix.from_entries((1, 2), {(1, 2): RHO, (2, 1): RHO})
    with pytest.raises(ValueError):
        XiMatrix((1, 2, 3), (((1, 2), ID),))


def test_grassmannian_examples():
    assert validate_psts(grassmannian(4)).v == 6
    ok, _ = are_isomorphic(grassmannian(4), veronesian(3, 2))
    assert ok
    assert len(grassmannian(3).lines) == 1
    with pytest.raises(ValueError):
        grassmannian(5, k=3)


def test_grassmannian_parameter_identity():
    for n in range(3, 8):
        params = validate_psts(grassmannian(n))
        assert (params.v, params.r, params.b) == (comb(n, 2), n - 2, comb(n, 3))
        assert params.binomial


def test_veronesian_parameter_identity():
    for m in range(1, 6):
        params = validate_psts(veronesian(3, m))
        assert (params.v, params.r, params.b) == (comb(m + 2, 2), m, comb(m + 2, 3))
        assert params.binomial


def test_veronesian_rejects_other_variable_counts():
    with pytest.raises(ValueError):
        veronesian(2, 3)
    with pytest.raises(ValueError):
        veronesian(4, 2)


def test_veronesian_examples():
    assert len(veronesian(3, 3).points) == 10
    params = validate_psts(veronesian(3, 4))
    assert (params.v, params.r, params.b) == (15, 4, 20)


def test_multiveblen_parameters(rng):
    for n in (3, 4, 5):
        elements = tuple(range(1, n + 1))
        edges = {
            frozenset(e)
            for e in [
                tuple(rng.sample(elements, 2)) for _ in range(rng.randrange(0, n * 2))
            ]
        }
        graph = GraphOnSet(elements, frozenset(edges))
        cfg = multiveblen(elements, graph, grassmannian(elements))
        params = validate_psts(cfg)
        assert (params.v, params.r, params.b) == (comb(n + 2, 2), n, comb(n + 2, 3))


def test_multiveblen_pairs_span_veblen_subconfigurations():
    elements = (1, 2, 3, 4)
    graph = GraphOnSet.linear(elements)
    cfg = multiveblen(elements, graph, grassmannian(elements))
    veblen = canonical_form(grassmannian(4)).canonical_lines
    for i in elements:
        for j in elements:
            if i >= j:
                continue
            pts = [
                cfg.index_of(label)
                for label in ("p", f"a_{i}", f"a_{j}", f"b_{i}", f"b_{j}", "c_{%s,%s}" % (i, j))
            ]
            sub = induced_substructure(cfg, pts)
            assert canonical_form(sub).canonical_lines == veblen


def test_multiveblen_complete_graph_is_grassmannian():
    for n in (3, 4):
        elements = tuple(range(1, n + 1))
        cfg = multiveblen(elements, GraphOnSet.complete(elements), grassmannian(elements))
        ok, _ = are_isomorphic(cfg, grassmannian(n + 2))
        assert ok


def test_multiveblen_accepts_other_center_structures():
    elements = (0, 1, 2, 3)
    cfg = multiveblen(elements, GraphOnSet.complete(elements), remark_212_h())
    params = validate_psts(cfg)
    assert (params.v, params.r, params.b) == (15, 4, 20) and params.binomial


def test_stp_accepts_other_center_structures():
    from psts.constructions import pair_label
    from psts.core import Configuration

    index_set = (1, 2, 3, 4)
    pl = pair_label
    lines = [
        (pl(2, 3), pl(2, 4), pl(3, 4)),
        (pl(1, 2), pl(1, 3), pl(3, 4)),
        (pl(1, 3), pl(1, 4), pl(2, 4)),
        (pl(1, 4), pl(1, 2), pl(2, 3)),
    ]
    points = [pl(i, j) for i in index_set for j in index_set if i < j]
    center = Configuration.from_label_lines(lines, points=points)
    entries = {(i, j): RHO for i in index_set for j in index_set if i < j}
    params = validate_psts(stp(XiMatrix.from_entries(index_set, entries), center))
    assert (params.v, params.r, params.b) == (comb(7, 2), 5, comb(7, 3))


def test_multiveblen_input_validation():
    elements = (1, 2, 3)
    with pytest.raises(ValueError):
        multiveblen(elements, GraphOnSet.complete((1, 2)), grassmannian(elements))
    with pytest.raises(ValueError):
        multiveblen(elements, GraphOnSet.complete(elements), grassmannian(4))


def test_stp_parameters():
    for size in (2, 3, 4):
        index_set = tuple(range(1, size + 1))
        entries = {
            (i, j): ALL_TRIANGLE_PERMS[(i + j) % 6]
            for i in index_set
            for j in index_set
            if i < j
        }
        params = validate_psts(stp(XiMatrix.from_entries(index_set, entries)))
        n = size
        assert (params.v, params.r, params.b) == (comb(n + 3, 2), n + 1, comb(n + 3, 3))
        assert params.binomial


def test_stp_identity_triple_is_grassmannian():
    ok, _ = are_isomorphic(stp_triple(ID, ID, ID), grassmannian(6))
    assert ok


def test_two_triangle_types():
    assert stp_pair_type(ID) == "DES"
    assert stp_pair_type(SIGMA_C) == "DES'"
    assert stp_pair_type(RHO) == "DES''"
    assert stp_pair_type(RHO_INV) == "DES''"
    ok, _ = are_isomorphic(stp_pair(SIGMA_C), veronesian(3, 3))
    assert ok
    ok, _ = are_isomorphic(stp_pair(ID), grassmannian(5))
    assert ok


def test_pairwise_spans_match_pair_types(rng):
    refs = {
        kind: canonical_form(stp_pair(perm)).canonical_lines
        for perm, kind in ((ID, "DES"), (SIGMA_C, "DES'"), (RHO, "DES''"))
    }
    for _ in range(5):
        trip = [rng.choice(ALL_TRIANGLE_PERMS) for _ in range(3)]
        xi = XiMatrix.from_triple(*trip)
        cfg = stp(xi)
        for i, j in ((1, 2), (2, 3), (1, 3)):
            labels = [f"q^{x}" for x in "abc"]
            labels += [f"{x}_{i}" for x in "abc"] + [f"{x}_{j}" for x in "abc"]
            labels.append("q^{%s,%s}" % (i, j))
            sub = induced_substructure(cfg, [cfg.index_of(l) for l in labels])
            assert canonical_form(sub).canonical_lines == refs[stp_pair_type(xi(i, j))]


def test_mu_toggle_basics():
    vertices = (1, 2, 3, 4)
    empty = GraphOnSet.empty(vertices)
    star = mu_toggle(empty, 2)
    assert star.edges == frozenset(frozenset((2, j)) for j in (1, 3, 4))
    assert mu_toggle(star, 2) == empty
    with pytest.raises(ValueError):
        mu_toggle(empty, 9)


def test_mu_toggle_preserves_multiveblen_class(rng):
    for n in (3, 4, 5):
        elements = tuple(range(1, n + 1))
        edges = {
            frozenset(rng.sample(elements, 2)) for _ in range(rng.randrange(0, n * 2))
        }
        graph = GraphOnSet(elements, frozenset(edges))
        h = grassmannian(elements)
        base = multiveblen(elements, graph, h)
        i0 = rng.choice(elements)
        toggled = multiveblen(elements, mu_toggle(graph, i0), h)
        ok, _ = are_isomorphic(base, toggled)
        assert ok


def test_mvc_to_stp_complete_and_empty():
    elements = (0, 1, 2, 3)
    h = grassmannian(elements)
    res = mvc_to_stp(elements, GraphOnSet.complete(elements), h, zero=0)
    assert all(perm == ID for _, perm in res.xi.upper)
    res = mvc_to_stp(elements, GraphOnSet.empty(elements), h, zero=0)
    assert all(perm == SIGMA_C for _, perm in res.xi.upper)


def test_mvc_to_stp_requires_hypothesis_lines():
    elements = (0, 1, 2, 3)
    bad = veronesian(3, 2)  # right size, wrong point labels entirely
    with pytest.raises(ValueError):
        mvc_to_stp(elements, GraphOnSet.complete(elements), bad, zero=0)
    # A proper structure on the 2-subsets that misses the {0,i} bundle.
    with pytest.raises(ValueError):
        mvc_to_stp(elements, GraphOnSet.complete(elements), remark_212_h(), zero=0)


def remark_212_h():
    """The Veblen structure of the non-simple example, relabeled onto the
    2-subsets of {0, 1, 2, 3}: it misses the {0,i} hypothesis bundle."""
    from psts.constructions import pair_label
    from psts.core import Configuration

    z = (0, 1, 2, 3)
    pl = pair_label
    lines = [
        (pl(1, 2), pl(1, 3), pl(2, 3)),
        (pl(0, 1), pl(0, 2), pl(2, 3)),
        (pl(0, 2), pl(0, 3), pl(1, 3)),
        (pl(0, 3), pl(0, 1), pl(1, 2)),
    ]
    points = [pl(i, j) for i in z for j in z if i < j]
    return Configuration.from_label_lines(lines, points=points)


def test_stp_to_mvc_round_trip(rng):
    for _ in range(10):
        entries = {}
        fixed = rng.choice("abc")
        for pair in ((1, 2), (2, 3), (1, 3)):
            perm = rng.choice([p for p in ALL_TRIANGLE_PERMS if p.fixes(fixed)])
            entries[pair] = perm
        xi = XiMatrix.from_entries((1, 2, 3), entries)
        res = stp_to_mvc(xi)
        back = mvc_to_stp(res.graph.vertices, res.graph, res.center_structure, zero=0)
        ok, _ = are_isomorphic(stp(xi), back.stp_cfg)
        assert ok


def test_stp_to_mvc_linear_graph_case():
    res = stp_to_mvc(XiMatrix.from_triple(SIGMA_A, SIGMA_A, ID))
    linear = multiveblen((1, 2, 3, 4), GraphOnSet.linear((1, 2, 3, 4)), grassmannian((1, 2, 3, 4)))
    ok, _ = are_isomorphic(res.mvc_cfg, linear)
    assert ok


def test_stp_to_mvc_no_fixed_symbol():
    with pytest.raises(NoFixedSymbol):
        stp_to_mvc(XiMatrix.from_triple(RHO, RHO, RHO))


def test_remark_212_example():
    cfg = remark_212_mvc()
    params = validate_psts(cfg)
    assert (params.v, params.r, params.b) == (15, 4, 20) and params.binomial
    ok, _ = are_isomorphic(cfg, stp_triple(ID, RHO, RHO))
    assert ok
    for tokens_cfg in (
        stp_triple(ID, ID, ID),
        stp_triple(SIGMA_A, SIGMA_A, SIGMA_A),
        stp_triple(ID, ID, SIGMA_A),
    ):
        ok, _ = are_isomorphic(cfg, tokens_cfg)
        assert not ok
