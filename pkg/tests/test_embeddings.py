import numpy as np
import pytest

from dualembed.embeddings import (
    EmbeddingWitness,
    FullMonoidHandle,
    canonical_powerset_witness,
    mu_certificate,
    random_pair_corpus,
    restrict_witness_to_rank_le2,
    search_embedding,
    selfmap_dual_threshold,
    verify_embedding,
)
from dualembed.maps import Endomap, inverse_image_map
from dualembed.semigroups import FiniteSemigroup, named_monoid


def test_witness_validation_and_json():
    w = EmbeddingWitness(mode="semigroup", dual=True, mapping=(2, 0, 1))
    assert EmbeddingWitness.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        EmbeddingWitness(mode="weird", dual=False, mapping=(0,))
    with pytest.raises(ValueError):
        EmbeddingWitness.from_json({"mode": "semigroup"})


def test_verify_identity_witness():
    sg = named_monoid("full", 2)
    w = EmbeddingWitness(mode="monoid", dual=False, mapping=tuple(range(4)))
    rep = verify_embedding(sg, sg, w)
    assert rep["ok"]
    assert rep["pairs"] == 16


def test_verify_violation_kinds():
    sg = named_monoid("full", 2)
    short = EmbeddingWitness(mode="semigroup", dual=False, mapping=(0, 1))
    assert verify_embedding(sg, sg, short)["violations"][0]["kind"] == "length"
    squash = EmbeddingWitness(mode="semigroup", dual=False, mapping=(0, 0, 1, 2))
    assert any(
        v["kind"] == "injectivity" for v in verify_embedding(sg, sg, squash)["violations"]
    )
    # the identity map read as a dual witness breaks the law on some pair
    # (Self(2) is noncommutative)
    w = EmbeddingWitness(mode="semigroup", dual=True, mapping=tuple(range(4)))
    rep = verify_embedding(sg, sg, w)
    assert not rep["ok"]
    assert all(v["kind"] == "law" for v in rep["violations"])


def test_verify_identity_image_check():
    sg = named_monoid("sym", 2)
    # swap the labels of identity and transposition: a group automorphism
    # candidate failing only the identity clause would be caught; here the
    # swap is not even a homomorphism, but identity-image is checked first
    w = EmbeddingWitness(mode="monoid", dual=False, mapping=(1, 0))
    rep = verify_embedding(sg, sg, w)
    assert any(v["kind"] == "identity-image" for v in rep["violations"])


def test_full_monoid_handle_matches_dense():
    dense = named_monoid("full", 2)
    handle = FullMonoidHandle(2)
    assert handle.size == dense.size
    assert handle.identity == dense.identity
    for a in range(4):
        for b in range(4):
            assert handle.product(a, b) == dense.product(a, b)


def test_canonical_powerset_witness_small():
    for n in (1, 2):
        source, target, w = canonical_powerset_witness(n)
        assert target.size == (1 << n) ** (1 << n)
        rep = verify_embedding(source, target, w)
        assert rep["ok"], rep["violations"]
    # the mapping is literally the inverse-image construction
    source, _, w = canonical_powerset_witness(2)
    for i, f in enumerate(source.element_data):
        assert w.mapping[i] == inverse_image_map(f).encode()


def test_restricted_witness_verifies():
    source, target, w = canonical_powerset_witness(2)
    sub, wr = restrict_witness_to_rank_le2(2, w)
    assert sub.size == 4
    assert wr.mode == "semigroup"
    assert verify_embedding(sub, target, wr)["ok"]


def test_mu_certificate_small():
    source, target, w = canonical_powerset_witness(2)
    sub, wr = restrict_witness_to_rank_le2(2, w)
    cert = mu_certificate(sub, target, wr)
    assert cert.ok, cert.checks
    assert cert.n == 2
    assert cert.gamma_size == 4
    assert cert.bound == 4
    assert cert.mu_one_size == 2
    obj = cert.to_json()
    assert obj["ok"] and obj["bound"] == 4


def test_mu_certificate_rejects_direct_witness():
    source, target, w = canonical_powerset_witness(2)
    sub, wr = restrict_witness_to_rank_le2(2, w)
    direct = EmbeddingWitness(mode="semigroup", dual=False, mapping=wr.mapping)
    with pytest.raises(ValueError):
        mu_certificate(sub, target, direct)


def test_search_finds_group_embedding():
    c2 = FiniteSemigroup([[0, 1], [1, 0]])
    s3 = named_monoid("sym", 3)
    out = search_embedding(c2, s3, mode="semigroup", dual=False)
    assert out.status == "witness"
    assert verify_embedding(c2, s3, out.witness)["ok"]
    # groups embed into their own dual via inversion, so dual search works too
    out2 = search_embedding(c2, s3, mode="semigroup", dual=True)
    assert out2.status == "witness"
    assert verify_embedding(c2, s3, out2.witness)["ok"]


def test_search_none_is_complete():
    # Self(2) does not embed into the dual of Self(3)
    src = named_monoid("full", 2)
    tgt = named_monoid("full", 3)
    out = search_embedding(src, tgt, mode="semigroup", dual=True)
    assert out.status == "none"
    assert out.certificate.complete
    assert out.certificate.nodes > 0
    # the direct embedding exists (restriction of maps is the wrong direction;
    # extend-by-fixing gives one)
    out2 = search_embedding(src, tgt, mode="semigroup", dual=False)
    assert out2.status == "witness"
    assert verify_embedding(src, tgt, out2.witness)["ok"]


def test_search_budget_stop():
    src = named_monoid("self_le2", 3)
    tgt = named_monoid("full", 4)
    out = search_embedding(src, tgt, mode="semigroup", dual=True, budget=3)
    assert out.status == "budget"
    assert not out.certificate.complete
    # the node that crosses the line is still counted
    assert 3 <= out.certificate.nodes <= 4
    assert out.certificate.budget == 3


def test_search_prune_matches_noprune():
    src = named_monoid("full", 2)
    tgt = named_monoid("full", 3)
    for dual in (False, True):
        a = search_embedding(src, tgt, dual=dual, prune=True)
        b = search_embedding(src, tgt, dual=dual, prune=False)
        assert a.status == b.status
        if a.status == "witness":
            assert verify_embedding(src, tgt, b.witness)["ok"]


def test_search_deterministic_across_jobs():
    src = named_monoid("full", 2)
    tgt = named_monoid("full", 4)
    one = search_embedding(src, tgt, mode="monoid", dual=True, jobs=1)
    two = search_embedding(src, tgt, mode="monoid", dual=True, jobs=2)
    assert one.status == two.status == "witness"
    assert one.witness.mapping == two.witness.mapping


def test_monoid_mode_needs_identities():
    src = named_monoid("self_le2", 3)  # no identity
    tgt = named_monoid("full", 3)
    with pytest.raises(ValueError):
        search_embedding(src, tgt, mode="monoid")


def test_threshold_n2():
    rep = selfmap_dual_threshold(2, 4)
    assert rep["complete"] and rep["ok"]
    assert rep["min_semigroup"] == 4
    assert rep["min_monoid"] == 4
    assert [row["semigroup"]["status"] for row in rep["rows"]] == [
        "none",
        "none",
        "none",
        "witness",
    ]
    assert rep["rows"][3]["semigroup"]["verified"]
    assert rep["rows"][3]["monoid"]["verified"]


def test_random_pair_corpus_deterministic():
    a = random_pair_corpus(5, seed=11)
    b = random_pair_corpus(5, seed=11)
    assert len(a) == 5
    for (s1, t1), (s2, t2) in zip(a, b):
        assert s1.table == s2.table
        assert t1.table == t2.table
        assert s1.size <= 6 and t1.size <= 12
    c = random_pair_corpus(5, seed=12)
    assert any(x.table != y.table for (x, _), (y, _) in zip(a, c))
