import itertools

import pytest

from dualembed.maps import (
    BinRel,
    Endomap,
    EquivRelation,
    PartialMap,
    all_endomaps,
    all_partial_maps,
    all_permutations,
    all_relations,
    compose_maps,
    compose_partial,
    compose_rel,
    endomaps_rank_exact,
    endomaps_rank_le,
    inverse_image_map,
    kernel_and_range,
    separating_idempotents,
    theta_of_subset,
    transpose,
    two_block_equivalences,
)


def test_endomap_basics():
    f = Endomap(3, (1, 2, 0))
    assert f(0) == 1 and f(2) == 0
    assert f.rank() == 3
    assert f.is_permutation()
    assert not f.is_idempotent()
    c = Endomap.constant(4, 2)
    assert c.rank() == 1
    assert c.is_idempotent()
    assert Endomap.identity(3).images == (0, 1, 2)


def test_endomap_validation():
    with pytest.raises(ValueError):
        Endomap(2, (0, 2))
    with pytest.raises(ValueError):
        Endomap(2, (0,))
    with pytest.raises(ValueError):
        Endomap.from_index(2, 4)


def test_compose_maps_order():
    # compose_maps(f, g) applies f first.
    f = Endomap(3, (1, 1, 2))
    g = Endomap(3, (2, 0, 0))
    h = compose_maps(f, g)
    assert h.images == tuple(g(f(x)) for x in range(3))
    assert h.images == (0, 0, 0)


def test_compose_maps_associative_exhaustive():
    maps = all_endomaps(3)
    for f, g, h in itertools.product(maps[::5], maps[::7], maps[::3]):
        assert compose_maps(compose_maps(f, g), h) == compose_maps(f, compose_maps(g, h))


def test_endomap_encode_roundtrip():
    for n in (1, 2, 3):
        for k, f in enumerate(all_endomaps(n)):
            assert f.encode() == k
            assert Endomap.from_index(n, k) == f


def test_endomap_counts():
    assert len(all_endomaps(3)) == 27
    assert len(all_permutations(3)) == 6
    assert len(endomaps_rank_le(3, 2)) == 21
    assert len(endomaps_rank_exact(3, 2)) == 18
    # constants + rank 2: 4 + (2^4 - 2 choose kernels) * injections
    assert len(endomaps_rank_le(4, 2)) == 88


def test_endomap_json_roundtrip():
    f = Endomap(3, (2, 0, 2))
    assert Endomap.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        Endomap.from_json({"n": 2})


def test_partial_map_basics():
    f = PartialMap(3, (1, 3, 0))
    assert f.undefined_at(1)
    assert f.domain() == (0, 2)
    assert PartialMap.empty(2).domain() == ()
    assert PartialMap.identity(3).images == (0, 1, 2)


def test_compose_partial_oracle():
    # defined exactly where both steps are defined
    for f in all_partial_maps(2):
        for g in all_partial_maps(2):
            h = compose_partial(f, g)
            for x in range(2):
                if f.undefined_at(x) or (not f.undefined_at(x) and g.undefined_at(f.images[x])):
                    assert h.undefined_at(x)
                else:
                    assert h.images[x] == g.images[f.images[x]]


def test_partial_counts_and_encode():
    assert len(all_partial_maps(2)) == 9
    assert len(all_partial_maps(3)) == 64
    for k, f in enumerate(all_partial_maps(2)):
        assert f.encode() == k
        assert PartialMap.from_index(2, k) == f


def test_partial_totalize_is_homomorphism():
    # totalizing with a fresh sink point turns composition of partial maps
    # into composition of endomaps
    n = 2
    for f in all_partial_maps(n):
        for g in all_partial_maps(n):
            lhs = compose_partial(f, g).totalize(n + 1)
            rhs = compose_maps(f.totalize(n + 1), g.totalize(n + 1))
            assert lhs == rhs


def test_partial_json_roundtrip():
    f = PartialMap(3, (1, 3, 0))
    obj = f.to_json()
    assert obj["images"] == [1, None, 0]
    assert PartialMap.from_json(obj) == f


def test_equiv_relation_canonical_labels():
    e = EquivRelation.from_blocks(4, [[0, 2], [1, 3]])
    assert e.labels == (0, 1, 0, 1)
    assert e.blocks() == ((0, 2), (1, 3))
    assert e.n_blocks() == 2
    assert e.related(0, 2) and not e.related(0, 1)
    with pytest.raises(ValueError):
        EquivRelation(3, (1, 1, 2))
    with pytest.raises(ValueError):
        EquivRelation.from_blocks(3, [[0, 1]])


def test_equiv_refines():
    fine = EquivRelation.discrete(3)
    mid = EquivRelation.from_blocks(3, [[0, 1], [2]])
    coarse = EquivRelation.coarse(3)
    assert fine.refines(mid) and mid.refines(coarse) and fine.refines(coarse)
    assert not coarse.refines(mid)
    assert mid.refines(mid)


def test_kernel_and_range():
    f = Endomap(4, (1, 1, 3, 3))
    ker, rng = kernel_and_range(f)
    assert ker.blocks() == ((0, 1), (2, 3))
    assert rng == (1, 3)


def test_theta_of_subset():
    t = theta_of_subset(4, 0b0101)
    assert t.blocks() == ((0, 2), (1, 3))
    assert theta_of_subset(3, 0) == EquivRelation.coarse(3)
    assert theta_of_subset(3, 7) == EquivRelation.coarse(3)


def test_two_block_equivalences_count():
    # 2^(n-1) - 1 splittings of the ground set
    assert len(two_block_equivalences(3)) == 3
    assert len(two_block_equivalences(4)) == 7
    for e in two_block_equivalences(4):
        assert e.n_blocks() == 2


def test_separating_idempotents_all_pairs():
    # for every pair of distinct 2-block kernels the recipe yields idempotent
    # rank-2 maps with the right kernels whose product f-after-g is constant
    for n in (3, 4):
        eqs = two_block_equivalences(n)
        for alpha, beta in itertools.permutations(eqs, 2):
            f, g = separating_idempotents(alpha, beta)
            assert f.is_idempotent() and g.is_idempotent()
            assert f.rank() == 2 and g.rank() == 2
            assert kernel_and_range(f)[0] == alpha
            assert kernel_and_range(g)[0] == beta
            assert compose_maps(g, f).rank() == 1


def test_binrel_encode_matches_pair_bits():
    r = BinRel.from_pairs(2, [(0, 1), (1, 0)])
    assert r.encode() == (1 << (0 * 2 + 1)) + (1 << (1 * 2 + 0))
    for k in range(16):
        assert BinRel.from_index(2, k).encode() == k


def test_binrel_compose_oracle():
    # (x,y) in compose_rel(a, b) iff some z has (x,z) in b and (z,y) in a
    rels = all_relations(2)
    for a in rels:
        for b in rels:
            c = compose_rel(a, b)
            for x in range(2):
                for y in range(2):
                    expect = any(b.has(x, z) and a.has(z, y) for z in range(2))
                    assert c.has(x, y) == expect


def test_binrel_identity_and_graph():
    e = BinRel.identity(3)
    for r in all_relations(2):
        e2 = BinRel.identity(2)
        assert compose_rel(r, e2) == r
        assert compose_rel(e2, r) == r
    f = Endomap(3, (1, 2, 2))
    g = BinRel.graph_of(f)
    assert g.pairs() == ((0, 1), (1, 2), (2, 2))
    assert compose_rel(g, e) == g


def test_graph_of_respects_composition():
    # graph is a monoid homomorphism Self(n) -> Rel(n) for the shared
    # "second argument acts first" product
    for f in all_endomaps(2):
        for g in all_endomaps(2):
            fg = compose_maps(g, f)  # f after g
            assert BinRel.graph_of(fg) == compose_rel(BinRel.graph_of(f), BinRel.graph_of(g))


def test_transpose_involution_and_antihomomorphism():
    rels = all_relations(2)
    for a in rels:
        assert transpose(transpose(a)) == a
    for a in rels:
        for b in rels:
            assert transpose(compose_rel(a, b)) == compose_rel(transpose(b), transpose(a))


def test_binrel_json_roundtrip():
    r = BinRel.from_pairs(3, [(0, 2), (2, 1)])
    obj = r.to_json()
    assert obj["rows"] == ["001", "000", "010"]
    assert BinRel.from_json(obj) == r


def test_inverse_image_map():
    f = Endomap(2, (1, 1))
    inv = inverse_image_map(f)
    # subsets coded as masks over {0,1}; f^-1({1}) = {0,1}, f^-1({0}) = {}
    assert inv.n == 4
    assert inv.images[0b10] == 0b11
    assert inv.images[0b01] == 0b00
    assert inv.images[0b11] == 0b11


def test_inverse_image_reverses_composition():
    # S -> f^-1(S) turns "f after g" into "inv_g after inv_f"
    for f in all_endomaps(2):
        for g in all_endomaps(2):
            fg = compose_maps(g, f)
            assert inverse_image_map(fg) == compose_maps(inverse_image_map(f), inverse_image_map(g))
