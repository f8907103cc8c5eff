"""Closure-, map-, and substitution-style independence over finite algebras.

Algebras are exposed through two oracles: a closure operator (subuniverse
generated by a subset) and a hom-extension test (does a map defined on a
subset extend to a homomorphism on the subuniverse it generates).  Carrier
elements are plain indices so reports serialize directly.

The three notions, for a subset I:
  - closure-independent: no x in I lies in the closure of I minus x;
  - map-independent: every map I -> carrier extends to a homomorphism;
  - self-map-independent: every map I -> I extends to a homomorphism.
I is degenerate when it meets the closure of the empty set.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import BudgetError
from .freeacts import FreeMAct
from .linal import ENUM_CEILING, Subspace, all_vectors, check_prime

MAP_CHECK_LIMIT = 50000  # number of candidate maps an extension sweep may try
EXCHANGE_LIMIT = 16  # carrier cap for the subset-exhaustive exchange checks
STRONG_EXCHANGE_LIMIT = 10  # carrier cap for the maximal-subset conditions
TABLE_LIMIT_DISTRIBUTIVE = 20  # closure tables for union-distributive closures
LATTICE_LIMIT = 8  # index-set cap for subset-lattice verification


class VectorSpaceHandle:
    """F_p^n with carrier indices enumerating vectors lexicographically."""

    union_distributive = False

    def __init__(self, p, n):
        check_prime(p)
        if p**n > 4096:
            raise BudgetError("carrier too large for exhaustive independence work")
        self.p = p
        self.n = n
        self.vectors = all_vectors(p, n)
        self.size = len(self.vectors)
        self._index = {v: i for i, v in enumerate(self.vectors)}
        self._closure_cache = {}

    def closure(self, subset):
        key = frozenset(subset)
        hit = self._closure_cache.get(key)
        if hit is not None:
            return hit
        span = Subspace.from_vectors(self.p, self.n, [self.vectors[i] for i in key])
        out = frozenset(self._index[v] for v in span.vector_list())
        self._closure_cache[key] = out
        return out

    def empty_closure(self):
        return self.closure(())

    def hom_extends(self, elements, images):
        """Linear extendability: every dependence among the chosen vectors
        must be satisfied by the images, i.e. stacking images beside sources
        must not raise the rank."""
        if len(elements) != len(images):
            raise ValueError("length mismatch")
        src = [list(self.vectors[e]) for e in elements]
        aug = [list(self.vectors[e]) + list(self.vectors[f]) for e, f in zip(elements, images)]
        rank_src = Subspace.from_vectors(self.p, self.n, src).dim
        rank_aug = Subspace.from_vectors(self.p, 2 * self.n, aug).dim
        return rank_src == rank_aug

    def describe(self):
        return {"kind": "vspace", "p": self.p, "n": self.n}


class FreeActHandle:
    """Free act carrier; closure distributes over unions (unary operations)."""

    union_distributive = True

    def __init__(self, monoid, n_points):
        self.act = FreeMAct(monoid, n_points)
        self.monoid = monoid
        self.n_points = n_points
        self.size = self.act.size

    def closure(self, subset):
        return self.act.closure(subset)

    def empty_closure(self):
        return frozenset()

    def hom_extends(self, elements, images):
        return self.act.hom_extends(list(elements), list(images))

    def describe(self):
        return {
            "kind": "mact",
            "monoid": self.monoid.semigroup.to_json(),
            "omega": self.n_points,
        }


def _c_independent_with_witness(handle, items):
    for x in items:
        if x in handle.closure([z for z in items if z != x]):
            return False, x
    return True, None


def independence_report(handle, subset):
    """All three independence flags plus degeneracy, each with a concrete
    failure witness; map sweeps above the budget are skipped, not guessed."""
    items = sorted(set(subset))
    k = len(items)
    report = {"subset": items, "skipped": [], "witnesses": {}}

    empty = handle.empty_closure()
    degenerate_hits = [x for x in items if x in empty]
    report["non_degenerate"] = not degenerate_hits
    if degenerate_hits:
        report["witnesses"]["degenerate_element"] = degenerate_hits[0]

    c_ok, c_wit = _c_independent_with_witness(handle, items)
    report["c_independent"] = c_ok
    if not c_ok:
        report["witnesses"]["c_failure_element"] = c_wit

    def map_sweep(codomain):
        for images in itertools.product(codomain, repeat=k):
            if not handle.hom_extends(items, list(images)):
                return False, dict(zip(items, images))
        return True, None

    if k**k <= MAP_CHECK_LIMIT:
        s_ok, s_wit = map_sweep(items) if k else (True, None)
        report["s_independent"] = s_ok
        if not s_ok:
            report["witnesses"]["s_failure_map"] = s_wit
    else:
        report["s_independent"] = None
        report["skipped"].append("s_independent")

    if handle.size**k <= MAP_CHECK_LIMIT:
        m_ok, m_wit = map_sweep(range(handle.size))
        report["m_independent"] = m_ok
        if not m_ok:
            report["witnesses"]["m_failure_map"] = m_wit
    else:
        report["m_independent"] = None
        report["skipped"].append("m_independent")
    return report


def _closure_masks(handle, limit):
    """Bitmask closure table over every subset of the carrier."""
    size = handle.size
    if size > limit:
        raise BudgetError(f"carrier of {size} elements exceeds the cap of {limit}")
    cl = np.zeros(1 << size, dtype=np.int64)
    empty = 0
    for x in handle.empty_closure():
        empty |= 1 << x
    cl[0] = empty
    if handle.union_distributive:
        orb = [0] * size
        for x in range(size):
            for y in handle.closure([x]):
                orb[x] |= 1 << y
        for mask in range(1, 1 << size):
            low = mask & -mask
            cl[mask] = cl[mask ^ low] | orb[low.bit_length() - 1]
    else:
        memo = {}
        for mask in range(1, 1 << size):
            low = mask & -mask
            key = int(cl[mask ^ low]) | low
            hit = memo.get(key)
            if hit is None:
                hit = 0
                for y in handle.closure([i for i in range(size) if key >> i & 1]):
                    hit |= 1 << y
                memo[key] = hit
            cl[mask] = hit
    return cl


def _c_independent_masks(cl, size):
    masks = np.arange(1 << size, dtype=np.int64)
    ok = np.ones(1 << size, dtype=bool)
    for x in range(size):
        bit = 1 << x
        has = (masks & bit) != 0
        inside = (cl[masks ^ bit] >> x) & 1 == 1
        ok &= ~(has & inside)
    return ok


def _mask_elems(mask):
    return tuple(i for i in range(64) if mask >> i & 1)


def matroid_check(handle, strong=None):
    """Exchange conditions checked exhaustively over all carrier subsets.

    Condition 1: u in <X + v> and u not in <X> forces v in <X + u>.
    Condition 2: closure-independent X plus any u outside <X> stays
    closure-independent.  With `strong` (default: small carriers only), also:
    Condition 3: every maximal closure-independent subset of X generates <X>.
    Condition 4: every closure-independent Y inside X extends to a
    closure-independent Z inside X with <Z> = <X>.
    """
    size = handle.size
    cl = _closure_masks(handle, EXCHANGE_LIMIT)
    masks = np.arange(1 << size, dtype=np.int64)
    cind = _c_independent_masks(cl, size)
    if strong is None:
        strong = size <= STRONG_EXCHANGE_LIMIT
    conditions = {}

    witness = None
    for u in range(size):
        for v in range(size):
            with_v = cl[masks | (1 << v)]
            with_u = cl[masks | (1 << u)]
            bad = (
                ((with_v >> u) & 1 == 1)
                & ((cl[masks] >> u) & 1 == 0)
                & ((with_u >> v) & 1 == 0)
            )
            if bad.any() and witness is None:
                m = int(masks[bad][0])
                witness = {"x": _mask_elems(m), "u": u, "v": v}
    conditions["exchange"] = {"holds": witness is None, "witness": witness}

    witness = None
    for u in range(size):
        bad = cind & ((cl[masks] >> u) & 1 == 0) & ~cind[masks | (1 << u)]
        if bad.any() and witness is None:
            m = int(masks[bad][0])
            witness = {"x": _mask_elems(m), "u": u}
    conditions["extend_independent"] = {"holds": witness is None, "witness": witness}

    if strong:
        if size > STRONG_EXCHANGE_LIMIT:
            raise BudgetError(
                f"strong conditions capped at carrier size {STRONG_EXCHANGE_LIMIT}"
            )
        witness3 = None
        witness4 = None
        for x in range(1 << size):
            sub = x
            found_z = set()
            while True:
                if cind[sub]:
                    maximal = all(
                        not cind[sub | (1 << z)]
                        for z in _mask_elems(x & ~sub)
                    )
                    if maximal and cl[sub] != cl[x] and witness3 is None:
                        witness3 = {"x": _mask_elems(x), "y": _mask_elems(sub)}
                    if cl[sub] == cl[x]:
                        found_z.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & x
            # condition 4: every independent y must extend to some witness z
            sub = x
            while True:
                if cind[sub] and witness4 is None:
                    extendable = any((z & sub) == sub for z in found_z)
                    if not extendable:
                        witness4 = {"x": _mask_elems(x), "y": _mask_elems(sub)}
                if sub == 0:
                    break
                sub = (sub - 1) & x
        conditions["maximal_generates"] = {"holds": witness3 is None, "witness": witness3}
        conditions["completion"] = {"holds": witness4 is None, "witness": witness4}

    verdicts = [c["holds"] for c in conditions.values()]
    return {
        "size": size,
        "conditions": conditions,
        "strong_checked": strong,
        "agree": len(set(verdicts)) == 1,
        "matroid": conditions["exchange"]["holds"],
    }


def fin_lattice_embedding_from_s_independent(handle, subset):
    """The subset-lattice embedding induced by a non-degenerate
    self-map-independent family.

    phi(nonempty X) is the subuniverse generated by X; phi(empty) is the
    intersection of the single-element subuniverses (two or more indices),
    or the closure of nothing (at most one index).  Verifies joins, meets,
    and injectivity over every pair of subsets.
    """
    items = sorted(set(subset))
    k = len(items)
    if k > LATTICE_LIMIT:
        raise BudgetError(f"index set capped at {LATTICE_LIMIT}")
    pre = independence_report(handle, items)
    if not pre["non_degenerate"]:
        raise ValueError(
            f"degenerate subset: element {pre['witnesses']['degenerate_element']} "
            "lies in the empty closure"
        )
    if pre["s_independent"] is not True:
        raise ValueError(
            f"subset is not self-map-independent: {pre['witnesses'].get('s_failure_map')}"
        )
    phi = {}
    if k >= 2:
        base = None
        for p in items:
            single = handle.closure([p])
            base = single if base is None else (base & single)
        phi[0] = frozenset(base)
    else:
        phi[0] = handle.empty_closure()
    for mask in range(1, 1 << k):
        phi[mask] = handle.closure([items[i] for i in range(k) if mask >> i & 1])
    joins = meets = True
    for a in range(1 << k):
        for b in range(1 << k):
            if handle.closure(phi[a] | phi[b]) != phi[a | b]:
                joins = False
            if (phi[a] & phi[b]) != phi[a & b]:
                meets = False
    report = {
        "joins": joins,
        "meets": meets,
        "injective": len(set(phi.values())) == 1 << k,
    }
    report["ok"] = all(report.values())
    return phi, report


def extract_c_independent(handle, phi, k):
    """Least element of phi({i}) minus phi(empty) per index; the family is
    verified closure-independent before being returned."""
    base = phi[0]
    out = []
    for i in range(k):
        diff = sorted(phi[1 << i] - base)
        if not diff:
            raise ValueError(f"phi({{{i}}}) adds nothing over phi(empty)")
        out.append(diff[0])
    ok, bad = _c_independent_with_witness(handle, out)
    if not ok:
        raise ValueError(f"extracted family is not closure-independent at {bad}")
    return out


def max_c_independent_size(handle):
    """Exact maximum size of a closure-independent subset via the full
    closure table (subsets of independent sets stay independent)."""
    limit = TABLE_LIMIT_DISTRIBUTIVE if handle.union_distributive else EXCHANGE_LIMIT
    cl = _closure_masks(handle, limit)
    cind = _c_independent_masks(cl, handle.size)
    masks = np.arange(1 << handle.size, dtype=np.int64)
    sizes = np.zeros(1 << handle.size, dtype=np.int64)
    for x in range(handle.size):
        sizes += (masks >> x) & 1
    best = int(sizes[cind].max())
    arg = int(masks[cind & (sizes == best)][0])
    return best, _mask_elems(arg)


def sc_rank_report(handle, basis_candidate):
    """Whether the candidate is a self-map-independent generating set and
    whether every closure-independent subset fits inside it by cardinality."""
    items = sorted(set(basis_candidate))
    generates = handle.closure(items) == frozenset(range(handle.size))
    rep = independence_report(handle, items)
    s_ok = rep["s_independent"]
    if s_ok is None:
        raise BudgetError("candidate too large for the self-map sweep")
    is_s_basis = generates and s_ok
    max_size, witness = max_c_independent_size(handle)
    return {
        "basis_candidate": items,
        "generates": generates,
        "s_independent": s_ok,
        "is_s_basis": is_s_basis,
        "max_c_independent_size": max_size,
        "max_c_independent_witness": list(witness),
        "sc_ranked": bool(is_s_basis and max_size <= len(items)),
    }
