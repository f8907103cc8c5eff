import numpy as np
import pytest

from dualembed.errors import BudgetError
from dualembed.freeacts import FiniteMonoid
from dualembed.indep import (
    FreeActHandle,
    VectorSpaceHandle,
    extract_c_independent,
    fin_lattice_embedding_from_s_independent,
    independence_report,
    matroid_check,
    max_c_independent_size,
    sc_rank_report,
)
from dualembed.semigroups import FiniteSemigroup, named_monoid


def vspace23():
    return VectorSpaceHandle(2, 3)


def c2_act():
    return FreeActHandle(FiniteMonoid(FiniteSemigroup([[0, 1], [1, 0]])), 2)


def semilattice_act():
    return FreeActHandle(FiniteMonoid(FiniteSemigroup([[0, 1], [1, 1]])), 2)


def right_zero_act():
    sg = FiniteSemigroup([[0, 1, 2], [1, 1, 2], [2, 1, 2]])
    return FreeActHandle(FiniteMonoid(sg), 2)


def test_vspace_handle_closure():
    h = vspace23()
    assert h.size == 8
    # closure of nothing is the zero vector alone
    assert h.empty_closure() == frozenset({0})
    e1 = h._index[(1, 0, 0)]
    e2 = h._index[(0, 1, 0)]
    span = h.closure([e1, e2])
    assert len(span) == 4
    assert h._index[(1, 1, 0)] in span


def test_vspace_handle_budget():
    with pytest.raises(BudgetError):
        VectorSpaceHandle(2, 13)


def test_act_handle_closure():
    h = c2_act()
    assert h.size == 4
    assert h.empty_closure() == frozenset()
    pts = h.act.point_elements()
    assert h.closure([pts[0]]) == h.act.orbit(pts[0])


def test_report_on_vector_basis():
    h = vspace23()
    basis = [h._index[(1, 0, 0)], h._index[(0, 1, 0)], h._index[(0, 0, 1)]]
    rep = independence_report(h, basis)
    assert rep["c_independent"]
    assert rep["s_independent"]
    assert rep["m_independent"]
    assert rep["non_degenerate"]
    assert not rep["skipped"]


def test_report_degenerate_zero_vector():
    h = vspace23()
    rep = independence_report(h, [0])
    assert not rep["non_degenerate"]
    assert rep["witnesses"]["degenerate_element"] == 0
    # the zero vector alone is also closure-dependent: it lies in <empty>
    assert not rep["c_independent"]


def test_report_dependent_triple():
    h = vspace23()
    a = h._index[(1, 0, 0)]
    b = h._index[(0, 1, 0)]
    c = h._index[(1, 1, 0)]
    rep = independence_report(h, [a, b, c])
    assert not rep["c_independent"]
    assert rep["witnesses"]["c_failure_element"] in (a, b, c)
    assert rep["s_independent"] is False
    assert "s_failure_map" in rep["witnesses"]


def test_report_skips_oversized_sweeps():
    h = VectorSpaceHandle(2, 4)
    # seven elements: 7^7 > 50000 skips the self-map sweep, and 16^7 skips
    # the full-carrier sweep
    subset = list(range(1, 8))
    rep = independence_report(h, subset)
    assert rep["s_independent"] is None
    assert rep["m_independent"] is None
    assert set(rep["skipped"]) == {"s_independent", "m_independent"}
    assert rep["c_independent"] is not None


def test_implication_m_implies_s_implies_c_random():
    # random subsets over the zoo: map-independence forces self-map
    # independence, and with non-degeneracy closure-independence
    rng = np.random.default_rng(3)
    handles = [
        VectorSpaceHandle(2, 2),
        VectorSpaceHandle(3, 2),
        vspace23(),
        c2_act(),
        semilattice_act(),
        right_zero_act(),
    ]
    for _ in range(60):
        h = handles[int(rng.integers(0, len(handles)))]
        k = int(rng.integers(1, 4))
        subset = sorted(set(int(v) for v in rng.integers(0, h.size, k)))
        rep = independence_report(h, subset)
        if rep["m_independent"]:
            assert rep["s_independent"]
        if rep["s_independent"] and rep["non_degenerate"]:
            assert rep["c_independent"]


def test_degenerate_s_independent_forces_singleton():
    # a self-map-independent degenerate set must be a single element inside
    # the empty closure
    h = vspace23()
    rep = independence_report(h, [0])
    assert not rep["non_degenerate"]
    assert rep["s_independent"]  # only map 0 -> 0 exists and it extends


def test_matroid_vector_space():
    rep = matroid_check(vspace23())
    assert rep["matroid"]
    assert rep["agree"]
    assert rep["strong_checked"]
    for cond in rep["conditions"].values():
        assert cond["holds"]
        assert cond["witness"] is None


def test_matroid_group_act_holds():
    rep = matroid_check(c2_act())
    assert rep["matroid"] and rep["agree"]


def test_matroid_semilattice_act_fails_with_witness():
    h = semilattice_act()
    rep = matroid_check(h)
    assert not rep["matroid"]
    assert rep["agree"]
    w = rep["conditions"]["exchange"]["witness"]
    assert w is not None
    # replay the witness against the raw definition
    x = list(w["x"])
    u, v = w["u"], w["v"]
    assert u in h.closure(x + [v])
    assert u not in h.closure(x)
    assert v not in h.closure(x + [u])


def test_matroid_strong_flag():
    h = semilattice_act()
    weak = matroid_check(h, strong=False)
    assert not weak["strong_checked"]
    assert set(weak["conditions"]) == {"exchange", "extend_independent"}
    strong = matroid_check(h, strong=True)
    assert set(strong["conditions"]) == {
        "exchange",
        "extend_independent",
        "maximal_generates",
        "completion",
    }


def test_lattice_embedding_from_basis():
    h = vspace23()
    basis = [h._index[(1, 0, 0)], h._index[(0, 1, 0)], h._index[(0, 0, 1)]]
    phi, rep = fin_lattice_embedding_from_s_independent(h, basis)
    assert rep["ok"], rep
    # phi(empty) is the intersection of the single spans: just zero
    assert phi[0] == frozenset({0})
    assert phi[(1 << 3) - 1] == frozenset(range(8))


def test_lattice_embedding_singleton_uses_empty_closure():
    h = c2_act()
    pts = h.act.point_elements()
    phi, rep = fin_lattice_embedding_from_s_independent(h, [pts[0]])
    assert rep["ok"]
    # with one index there is no intersection to take: the empty set maps to
    # the closure of nothing, which is empty for acts
    assert phi[0] == frozenset()
    assert phi[1] == h.act.orbit(pts[0])


def test_lattice_embedding_on_act_points():
    h = c2_act()
    pts = h.act.point_elements()
    phi, rep = fin_lattice_embedding_from_s_independent(h, pts)
    assert rep["ok"], rep
    assert phi[0] == frozenset()  # orbits of distinct points are disjoint
    assert phi[0b11] == frozenset(range(h.size))


def test_lattice_embedding_rejects_bad_input():
    h = vspace23()
    with pytest.raises(ValueError):
        fin_lattice_embedding_from_s_independent(h, [0])  # degenerate
    a = h._index[(1, 0, 0)]
    b = h._index[(0, 1, 0)]
    c = h._index[(1, 1, 0)]
    with pytest.raises(ValueError):
        fin_lattice_embedding_from_s_independent(h, [a, b, c])  # dependent


def test_extract_c_independent_roundtrip():
    h = vspace23()
    basis = [h._index[(1, 0, 0)], h._index[(0, 1, 0)]]
    phi, rep = fin_lattice_embedding_from_s_independent(h, basis)
    got = extract_c_independent(h, phi, 2)
    assert len(got) == 2
    check = independence_report(h, got)
    assert check["c_independent"]


def test_max_c_independent_sizes():
    best, witness = max_c_independent_size(vspace23())
    assert best == 3
    assert len(witness) == 3
    best_act, _ = max_c_independent_size(c2_act())
    assert best_act == 2
    best_rz, _ = max_c_independent_size(right_zero_act())
    assert best_rz == 4


def test_sc_rank_report():
    h = c2_act()
    rep = sc_rank_report(h, h.act.point_elements())
    assert rep["generates"] and rep["s_independent"] and rep["is_s_basis"]
    assert rep["sc_ranked"]
    rz = right_zero_act()
    rep2 = sc_rank_report(rz, rz.act.point_elements())
    assert rep2["is_s_basis"]
    assert rep2["max_c_independent_size"] == 4
    assert not rep2["sc_ranked"]
