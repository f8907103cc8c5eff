"""Free acts over finite monoids and their endomorphism monoids.

A free act on n points over a monoid M has carrier M x {0..n-1}; the monoid
acts on the left coordinate only.  Its endomorphisms are in bijection with
pairs (alpha, x) where alpha is a point map and x labels each point with a
monoid element; the pair acts by (t, p) -> (t * x[p], alpha[p]).  The product
on pairs is fixed so that pair products match composition "first factor
after second factor", the same order as Cayley tables elsewhere in the
package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError
from . import _kernels
from .embeddings import EmbeddingWitness, verify_embedding
from .maps import BinRel, Endomap, all_endomaps, compose_rel
from .semigroups import SIZE_CEILING, FiniteSemigroup, named_monoid

CLASSIFY_SUBSET_LIMIT = 14  # exhaustive subset sweeps need 2^(|M|*n) sets
ANTICHAIN_LIMIT = 16


class FiniteMonoid:
    """A finite semigroup with a two-sided identity."""

    def __init__(self, semigroup):
        if semigroup.identity is None:
            raise ValueError("no identity element: not a monoid")
        self.semigroup = semigroup
        self.table = semigroup.table
        self.size = semigroup.size
        self.identity = semigroup.identity

    def product(self, a, b):
        return self.table[a][b]

    def is_group(self):
        return self.semigroup.is_group()

    def __eq__(self, other):
        return isinstance(other, FiniteMonoid) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        name = self.semigroup.name or f"monoid of order {self.size}"
        return f"FiniteMonoid({name})"


def left_divisibility(monoid):
    """div[u][v] iff v = t*u for some t (v is a left multiple of u)."""
    m = monoid.size
    div = [[False] * m for _ in range(m)]
    for u in range(m):
        for t in range(m):
            div[u][monoid.table[t][u]] = True
    return div


def is_left_uniserial(monoid):
    div = left_divisibility(monoid)
    m = monoid.size
    return all(div[u][v] or div[v][u] for u in range(m) for v in range(u + 1, m))


def max_antichain(monoid):
    """Largest set of pairwise incomparable elements under left divisibility,
    by exact search; returns (size, witness)."""
    m = monoid.size
    if m > ANTICHAIN_LIMIT:
        raise BudgetError(f"antichain search capped at order {ANTICHAIN_LIMIT}")
    div = left_divisibility(monoid)
    compat = [
        [not div[u][v] and not div[v][u] for v in range(m)] for u in range(m)
    ]
    best = (0, ())

    def extend(chosen, start):
        nonlocal best
        if len(chosen) > best[0]:
            best = (len(chosen), tuple(chosen))
        if len(chosen) + (m - start) <= best[0]:
            return
        for v in range(start, m):
            if all(compat[u][v] for u in chosen):
                chosen.append(v)
                extend(chosen, v + 1)
                chosen.pop()

    extend([], 0)
    return best


class FreeMAct:
    """Carrier element (t, p) is encoded as t * n_points + p."""

    def __init__(self, monoid, n_points):
        if n_points < 1:
            raise ValueError("need at least one point")
        self.monoid = monoid
        self.n_points = n_points
        self.size = monoid.size * n_points
        self._orbits = None

    def encode(self, t, p):
        assert 0 <= t < self.monoid.size and 0 <= p < self.n_points
        return t * self.n_points + p

    def decode(self, elem):
        return divmod(elem, self.n_points)

    def act(self, m, elem):
        t, p = self.decode(elem)
        return self.encode(self.monoid.table[m][t], p)

    def point_elements(self):
        """The images of the points under p -> (identity, p)."""
        return [self.encode(self.monoid.identity, p) for p in range(self.n_points)]

    def orbit(self, elem):
        """All monoid multiples of one element (memoized)."""
        if self._orbits is None:
            self._orbits = [
                frozenset(self.act(m, z) for m in range(self.monoid.size))
                for z in range(self.size)
            ]
        return self._orbits[elem]

    def closure(self, subset):
        """Subuniverse generated: one application of every monoid element
        suffices because m1*(m2*y) = (m1*m2)*y."""
        out = set()
        for y in subset:
            out |= self.orbit(y)
        return frozenset(out)

    def hom_extends(self, elements, images):
        """Whether y_i -> image_i extends to a homomorphism on the generated
        subact: every coincidence m1*y1 = m2*y2 must be preserved."""
        if len(elements) != len(images):
            raise ValueError("length mismatch")
        k = len(elements)
        msize = self.monoid.size
        for i in range(k):
            for j in range(k):
                for m1 in range(msize):
                    a = self.act(m1, elements[i])
                    for m2 in range(msize):
                        if a == self.act(m2, elements[j]) and self.act(
                            m1, images[i]
                        ) != self.act(m2, images[j]):
                            return False
        return True

    def is_equivariant(self, endomap):
        if endomap.n != self.size:
            raise ValueError("endomap acts on the wrong carrier")
        return all(
            endomap.images[self.act(m, z)] == self.act(m, endomap.images[z])
            for m in range(self.monoid.size)
            for z in range(self.size)
        )


@dataclass(frozen=True)
class ActEndoPair:
    """(alpha, x): point map alpha plus a monoid label per point."""

    monoid: FiniteMonoid
    alpha: tuple
    x: tuple

    def __post_init__(self):
        n = len(self.alpha)
        if len(self.x) != n:
            raise ValueError("alpha and x must have the same length")
        if any(not (0 <= a < n) for a in self.alpha):
            raise ValueError("alpha image out of range")
        if any(not (0 <= v < self.monoid.size) for v in self.x):
            raise ValueError("monoid label out of range")

    @property
    def n_points(self):
        return len(self.alpha)

    @staticmethod
    def identity(monoid, n_points):
        return ActEndoPair(
            monoid, tuple(range(n_points)), (monoid.identity,) * n_points
        )


def e_product(a, b):
    """Product of endomorphism pairs: the result acts like a after b.

    Point part composes b first; the label at p is x_b[p] * x_a[alpha_b[p]].
    """
    if a.monoid != b.monoid or a.n_points != b.n_points:
        raise ValueError("pairs live over different acts")
    t = a.monoid.table
    alpha = tuple(a.alpha[b.alpha[p]] for p in range(a.n_points))
    x = tuple(t[b.x[p]][a.x[b.alpha[p]]] for p in range(a.n_points))
    return ActEndoPair(a.monoid, alpha, x)


def pair_to_endo(act, pair):
    if pair.monoid != act.monoid or pair.n_points != act.n_points:
        raise ValueError("pair does not match the act")
    images = []
    for elem in range(act.size):
        t, p = act.decode(elem)
        images.append(act.encode(act.monoid.table[t][pair.x[p]], pair.alpha[p]))
    return Endomap(act.size, tuple(images))


def endo_to_pair(act, endomap):
    if not act.is_equivariant(endomap):
        raise ValueError("endomap does not commute with the monoid action")
    alpha = []
    x = []
    for p in range(act.n_points):
        t, q = act.decode(endomap.images[act.encode(act.monoid.identity, p)])
        alpha.append(q)
        x.append(t)
    return ActEndoPair(act.monoid, tuple(alpha), tuple(x))


class EndoMonoid:
    """All endomorphism pairs of a free act, as a concrete finite monoid.

    Pair (alpha, x) gets the element code alpha_rank * |M|^n + x_rank, both
    ranks big-endian in point order.
    """

    def __init__(self, monoid, n_points, check=True):
        size = n_points**n_points * monoid.size**n_points
        if size > SIZE_CEILING:
            raise BudgetError(f"size {size} above the {SIZE_CEILING} element ceiling")
        self.monoid = monoid
        self.n_points = n_points
        self.size = size
        m = monoid.size
        codes = np.arange(size, dtype=np.int64)
        a_codes = codes // m**n_points
        x_codes = codes % m**n_points
        alpha_of = np.empty((size, n_points), dtype=np.int64)
        x_of = np.empty((size, n_points), dtype=np.int64)
        for p in range(n_points - 1, -1, -1):
            alpha_of[:, p] = a_codes % n_points
            a_codes = a_codes // n_points
            x_of[:, p] = x_codes % m
            x_codes = x_codes // m
        self._alpha_of = alpha_of
        self._x_of = x_of
        table = _kernels.emonoid_table(
            np.asarray(monoid.table, dtype=np.int64), alpha_of, x_of, n_points, m
        )
        self.semigroup = FiniteSemigroup(
            table,
            name=f"endo(free act, {n_points} points, base order {m})",
            check=check,
        )
        assert self.semigroup.identity == self.encode_pair(
            ActEndoPair.identity(monoid, n_points)
        )

    def encode_pair(self, pair):
        n, m = self.n_points, self.monoid.size
        a_code = 0
        x_code = 0
        for p in range(n):
            a_code = a_code * n + pair.alpha[p]
            x_code = x_code * m + pair.x[p]
        return a_code * m**n + x_code

    def decode_pair(self, elem):
        return ActEndoPair(
            self.monoid,
            tuple(int(v) for v in self._alpha_of[elem]),
            tuple(int(v) for v in self._x_of[elem]),
        )


def mop_embedding_witness(monoid, n_points, check=True):
    """Embed the monoid, product order reversed, into the endomorphism monoid
    of its free act: x -> (identity point map, constant label x).

    Returns (witness, endo_monoid); the witness is in monoid mode with the
    order-reversing flag set, and is verified before being returned.
    """
    em = EndoMonoid(monoid, n_points, check=check)
    mapping = tuple(
        em.encode_pair(ActEndoPair(monoid, tuple(range(n_points)), (x,) * n_points))
        for x in range(monoid.size)
    )
    witness = EmbeddingWitness(
        mode="monoid",
        dual=True,
        mapping=mapping,
        source_ref=monoid.semigroup.name or f"monoid of order {monoid.size}",
        target_ref=em.semigroup.name,
    )
    report = verify_embedding(monoid.semigroup, em.semigroup, witness)
    if not report["ok"]:
        raise AssertionError(f"constant-label embedding failed: {report['violations']}")
    return witness, em


def _rel_monoid(n_points):
    sg = named_monoid("rel", n_points)
    return FiniteMonoid(sg)


def eta_embedding(n_points, pair):
    """Encode an endomorphism pair over the full binary-relation monoid as one
    relation on n*(n+1) points.

    Point (p, q) has index p*(n+1)+q, where q = n stands for the extra
    absorbing point added to make labels recoverable.  The output relates
    (p0, q0) to (p1, q1) iff p1 = alpha[p0] and (q1, q0) lies in the label
    relation at p0 extended with the loop on the extra point.
    """
    rel = _rel_monoid(n_points)
    if pair.monoid != rel:
        raise ValueError("pair is not over the full relation monoid")
    n = n_points
    nbar = n + 1
    size = n * nbar
    rows = [0] * size
    for p0 in range(n):
        p1 = pair.alpha[p0]
        label = pair.x[p0]  # relation index == bitmask with bit q1*n+q0
        for q0 in range(nbar):
            bits = 0
            for q1 in range(nbar):
                if q1 == n and q0 == n:
                    bits |= 1 << (p1 * nbar + q1)
                elif q1 < n and q0 < n and label >> (q1 * n + q0) & 1:
                    bits |= 1 << (p1 * nbar + q1)
            rows[p0 * nbar + q0] = bits
    return BinRel(size, tuple(rows))


def eta_sweep(n_points, check=False):
    """Injectivity and multiplicativity of the relation encoding across the
    whole endomorphism monoid of the free act over the relation monoid.

    Returns a report dict; multiplicativity is checked for every product pair
    by the batch kernel.
    """
    rel = _rel_monoid(n_points)
    em = EndoMonoid(rel, n_points, check=check)
    e = em.size
    rows = np.zeros((e, n_points * (n_points + 1)), dtype=np.uint64)
    seen = set()
    for i in range(e):
        r = eta_embedding(n_points, em.decode_pair(i))
        seen.add(r.rows)
        rows[i] = np.array(r.rows, dtype=np.uint64)
    bad = _kernels.eta_mult_sweep(em.semigroup.np_table(), rows, n_points * (n_points + 1))
    report = {
        "n_points": n_points,
        "e_size": e,
        "injective": len(seen) == e,
        "multiplicative": bad == -1,
    }
    if bad != -1:
        report["violation_pair"] = (bad // e, bad % e)
    report["ok"] = report["injective"] and report["multiplicative"]
    return report, em


def _c_independent(act, subset):
    items = list(subset)
    for y in items:
        rest = [z for z in items if z != y]
        if y in act.closure(rest):
            return False
    return True


def _antichain_characterization(act, subset, div):
    """subset is C-independent iff, for each point, the monoid labels landing
    on that point form an antichain for left divisibility."""
    by_point = {}
    for y in subset:
        t, p = act.decode(y)
        by_point.setdefault(p, []).append(t)
    for labels in by_point.values():
        for u, v in itertools.combinations(labels, 2):
            if div[u][v] or div[v][u]:
                return False
    return True


def _is_s_basis(act):
    points = act.point_elements()
    if act.closure(points) != frozenset(range(act.size)):
        return False
    return all(
        act.hom_extends(points, [points[i] for i in images])
        for images in itertools.product(range(act.n_points), repeat=act.n_points)
    )


def _max_c_independent(act):
    """Exact maximum size of a C-independent subset (they are closed under
    taking subsets, so plain DFS with extension tests is sound)."""
    size = act.size
    best = 0

    def extend(chosen, start):
        nonlocal best
        best = max(best, len(chosen))
        for z in range(start, size):
            if len(chosen) + (size - z) <= best:
                break
            if _c_independent(act, chosen + [z]):
                chosen.append(z)
                extend(chosen, z + 1)
                chosen.pop()

    extend([], 0)
    return best


def _matroid_exchange_direct(act):
    """Exchange condition over every subset X of the carrier: u in <X+{v}>
    but not in <X> forces v in <X+{u}>; returns (holds, witness)."""
    size = act.size
    for mask in range(1 << size):
        x = [i for i in range(size) if mask >> i & 1]
        cx = act.closure(x)
        for v in range(size):
            cxv = act.closure(x + [v])
            for u in range(size):
                if u in cxv and u not in cx and v not in act.closure(x + [u]):
                    return False, {"x": tuple(x), "u": u, "v": v}
    return True, None


def classify_free_act(monoid, n_points):
    """Check the structural criteria for a free act against the raw
    definitions, on the full carrier.

    Direct route: exact max C-independent size vs the point count, the
    exchange condition over all subsets, and the antichain description of
    C-independence.  Criterion route: left uniserial base monoid for the
    rank bound, group base monoid for the exchange property.  Reports both
    and whether they agree.
    """
    act = FreeMAct(monoid, n_points)
    if act.size > CLASSIFY_SUBSET_LIMIT:
        raise BudgetError(
            f"carrier of {act.size} elements exceeds the exhaustive sweep cap "
            f"of {CLASSIFY_SUBSET_LIMIT}"
        )
    div = left_divisibility(monoid)
    char_ok = all(
        _c_independent(act, [i for i in range(act.size) if mask >> i & 1])
        == _antichain_characterization(
            act, [i for i in range(act.size) if mask >> i & 1], div
        )
        for mask in range(1 << act.size)
    )
    max_c = _max_c_independent(act)
    s_basis = _is_s_basis(act)
    sc_direct = s_basis and max_c <= n_points
    sc_criterion = is_left_uniserial(monoid)
    matroid_direct, matroid_witness = _matroid_exchange_direct(act)
    matroid_criterion = monoid.is_group()
    report = {
        "base_order": monoid.size,
        "n_points": n_points,
        "sc_ranked": {
            "direct": sc_direct,
            "criterion": sc_criterion,
            "agree": sc_direct == sc_criterion,
        },
        "matroid": {
            "direct": matroid_direct,
            "criterion": matroid_criterion,
            "agree": matroid_direct == matroid_criterion,
        },
        "c_indep_characterization_ok": char_ok,
        "max_c_independent": max_c,
        "is_s_basis": s_basis,
        "left_uniserial": sc_criterion,
        "is_group": matroid_criterion,
        "max_antichain": max_antichain(monoid)[0],
    }
    if matroid_witness is not None:
        report["matroid"]["witness"] = matroid_witness
    report["ok"] = (
        report["sc_ranked"]["agree"]
        and report["matroid"]["agree"]
        and char_ok
    )
    return report


def classify_sweep(max_order, n_points):
    """classify_free_act over every monoid of each order up to the cap, using
    the exhaustive small-monoid tables."""
    from .semigroups import monoids_up_to_iso

    out = []
    for order in range(1, max_order + 1):
        for sg in monoids_up_to_iso(order):
            report = classify_free_act(FiniteMonoid(sg), n_points)
            report["name"] = sg.name
            out.append(report)
    return out
