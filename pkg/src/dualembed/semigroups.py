"""Finite semigroups as dense Cayley tables over elements 0..size-1.

table[a][b] is the product a*b, read as "a after b" for transformation
semigroups (the second factor acts first); see maps.py for the convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BudgetError
from . import _kernels
from .maps import (
    BinRel,
    Endomap,
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
)

# 16-bit element indices; dense tables above this are rejected outright.
SIZE_CEILING = 65535
DEFAULT_CLOSURE_BUDGET = 4096
ASSOC_EXHAUSTIVE_LIMIT = 512
ASSOC_SAMPLES = 10**6


class MonogenicSignature(NamedTuple):
    index: int
    period: int


@dataclass(frozen=True)
class ElementSignature:
    """Embedding-invariant data of one element.

    index/period describe the power sequence a, a^2, ... (a^(i+p) = a^i with i,
    p minimal); any injective homomorphism preserves them exactly.  The
    multiple counts only grow under embeddings, so they are hints, not filters.
    """

    idempotent: bool
    index: int
    period: int
    n_left_multiples: int
    n_right_multiples: int


class FiniteSemigroup:
    def __init__(
        self,
        table,
        labels=None,
        generators=None,
        element_data=None,
        name=None,
        check=True,
        sample_seed=0,
    ):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.size = len(self.table)
        if self.size == 0:
            raise ValueError("empty semigroup not supported")
        if self.size > SIZE_CEILING:
            raise BudgetError(f"size {self.size} above the {SIZE_CEILING} element ceiling")
        for row in self.table:
            if len(row) != self.size:
                raise ValueError("table is not square")
            if any(not (0 <= v < self.size) for v in row):
                raise ValueError("table entry out of range")
        self.labels = None if labels is None else tuple(str(l) for l in labels)
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("label count must equal size")
        self.generators = None if generators is None else tuple(int(g) for g in generators)
        if self.generators is not None and any(
            not (0 <= g < self.size) for g in self.generators
        ):
            raise ValueError("generator index out of range")
        self.element_data = None if element_data is None else tuple(element_data)
        self.name = name
        self._np = None
        self._sigs = None
        if check:
            self._check_associative(sample_seed)
        self.identity = self._find_identity()

    def _check_associative(self, sample_seed):
        if self.size <= ASSOC_EXHAUSTIVE_LIMIT:
            packed = _kernels.assoc_violation(self.np_table())
            if packed != -1:
                c = packed % self.size
                ab = packed // self.size
                raise ValueError(
                    f"not associative at ({ab // self.size},{ab % self.size},{c})"
                )
        else:
            t = self.np_table()
            rng = np.random.default_rng(sample_seed)
            a, b, c = rng.integers(0, self.size, size=(3, ASSOC_SAMPLES), dtype=np.int64)
            bad = t[t[a, b], c] != t[a, t[b, c]]
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise ValueError(
                    f"not associative at ({int(a[i])},{int(b[i])},{int(c[i])}) [sampled]"
                )

    def _find_identity(self):
        for e in range(self.size):
            if all(
                self.table[e][x] == x and self.table[x][e] == x for x in range(self.size)
            ):
                return e
        return None

    def np_table(self):
        if self._np is None:
            self._np = np.ascontiguousarray(np.asarray(self.table, dtype=np.int32))
        return self._np

    def product(self, a, b):
        return self.table[a][b]

    def is_monoid(self):
        return self.identity is not None

    def is_commutative(self):
        t = self.np_table()
        return bool((t == t.T).all())

    def is_group(self):
        e = self.identity
        if e is None:
            return False
        for a in range(self.size):
            if not any(
                self.table[a][x] == e and self.table[x][a] == e for x in range(self.size)
            ):
                return False
        return True

    def dual(self):
        """The opposite semigroup: same elements, transposed table."""
        name = None if self.name is None else f"dual({self.name})"
        return FiniteSemigroup(
            self.np_table().T,
            labels=self.labels,
            generators=self.generators,
            element_data=self.element_data,
            name=name,
            check=False,
        )

    def monogenic_signature(self, a):
        seen = {a: 1}
        cur = a
        k = 1
        while True:
            cur = self.table[cur][a]
            k += 1
            if cur in seen:
                return MonogenicSignature(seen[cur], k - seen[cur])
            seen[cur] = k

    def element_signatures(self):
        if self._sigs is None:
            t = self.np_table()
            left = [len(np.unique(t[:, a])) for a in range(self.size)]
            right = [len(np.unique(t[a])) for a in range(self.size)]
            sigs = []
            for a in range(self.size):
                ms = self.monogenic_signature(a)
                sigs.append(
                    ElementSignature(
                        idempotent=self.table[a][a] == a,
                        index=ms.index,
                        period=ms.period,
                        n_left_multiples=left[a],
                        n_right_multiples=right[a],
                    )
                )
            self._sigs = tuple(sigs)
        return self._sigs

    def closure_of(self, seed_indices):
        """Subsemigroup generated by the given element indices, as a sorted
        tuple of indices."""
        have = set(seed_indices)
        queue = list(have)
        members = list(queue)
        while queue:
            x = queue.pop()
            for y in list(members):
                for p in (self.table[x][y], self.table[y][x]):
                    if p not in have:
                        have.add(p)
                        members.append(p)
                        queue.append(p)
        return tuple(sorted(have))

    def greedy_generating_set(self, monoid=False):
        """Scan elements in index order, keeping those outside the closure so
        far.  With monoid=True the identity is assumed given and is excluded."""
        gens = []
        closed = set()
        if monoid:
            if self.identity is None:
                raise ValueError("no identity element")
            closed = set(self.closure_of([self.identity]))
        for a in range(self.size):
            if a not in closed:
                gens.append(a)
                closed = set(self.closure_of(gens + ([self.identity] if monoid else [])))
        return tuple(gens)

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return self.table == other.table and self.labels == other.labels

    def __repr__(self):
        base = self.name or "semigroup"
        return f"<{base}: {self.size} elements>"

    def to_json(self):
        out = {
            "size": self.size,
            "identity": self.identity,
            "table": [list(row) for row in self.table],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        if self.generators is not None:
            out["generators"] = list(self.generators)
        return out

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict):
            raise ValueError("semigroup JSON must be an object")
        required = {"size", "identity", "table"}
        allowed = required | {"labels", "generators"}
        if not required <= set(obj) or not set(obj) <= allowed:
            raise ValueError(
                "semigroup JSON needs keys size/identity/table (labels, generators optional)"
            )
        sg = FiniteSemigroup(
            obj["table"], labels=obj.get("labels"), generators=obj.get("generators")
        )
        if sg.size != int(obj["size"]):
            raise ValueError("declared size does not match the table")
        declared = obj["identity"]
        if declared is not None:
            declared = int(declared)
        if declared != sg.identity:
            raise ValueError(
                f"declared identity {declared} but computed {sg.identity}"
            )
        return sg


def close_under_product(seeds, product, budget=DEFAULT_CLOSURE_BUDGET, labeler=None, name=None):
    """Close the seed elements under the given product and return the Cayley
    table semigroup.  Elements are kept in discovery order (seeds first); the
    seeds are recorded as generators."""
    elements = []
    index = {}
    for e in seeds:
        if e not in index:
            index[e] = len(elements)
            elements.append(e)
    if not elements:
        raise ValueError("need at least one seed")
    prods = {}
    qi = 0
    while qi < len(elements):
        x = elements[qi]
        j = 0
        while j < len(elements):  # grows during the scan
            y = elements[j]
            for u, v in ((x, y), (y, x)):
                key = (index[u], index[v])
                if key not in prods:
                    r = product(u, v)
                    if r not in index:
                        if len(elements) >= budget:
                            raise BudgetError(
                                f"closure exceeded the budget of {budget} elements"
                            )
                        index[r] = len(elements)
                        elements.append(r)
                    prods[key] = index[r]
            j += 1
        qi += 1
    n = len(elements)
    table = [[prods[(i, j)] for j in range(n)] for i in range(n)]
    labels = None if labeler is None else [labeler(e) for e in elements]
    n_seeds = len({e for e in seeds})
    return FiniteSemigroup(
        table,
        labels=labels,
        generators=range(n_seeds),
        element_data=elements,
        name=name,
    )


def _map_label(f):
    return "".join("_" if y == f.n else str(y) for y in f.images)


def _rel_label(r):
    return "|".join(
        "".join("1" if row >> y & 1 else "0" for y in range(r.n)) for row in r.rows
    )


NAMED_KINDS = ("full", "partial", "rel", "self_le2", "self_2", "sym")

_named_cache = {}


def _named_size(kind, n):
    if kind == "full":
        return n**n
    if kind == "partial":
        return (n + 1) ** n
    if kind == "rel":
        return 1 << (n * n)
    if kind == "self_le2":
        return len(endomaps_rank_le(n, 2)) if n <= 8 else None
    if kind == "self_2":
        return len(endomaps_rank_exact(n, 2)) if n <= 8 else None
    if kind == "sym":
        import math

        return math.factorial(n)
    raise ValueError(f"unknown family {kind!r}; pick one of {NAMED_KINDS}")


def _full_table(images_rows, base):
    """Vectorized composition table for families of (possibly partial) maps.

    images_rows[a] lists a's images, sentinel values included; base is the
    digit base of the element encoding (n for total maps, n+1 for partial)."""
    a = np.asarray(images_rows, dtype=np.int64)
    s, n = a.shape
    # append a sentinel row so sentinel digits map to themselves
    ext = np.concatenate([a, np.full((s, 1), n, dtype=np.int64)], axis=1) if base > n else a
    pow_ = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out = np.empty((s, s), dtype=np.int64)
    chunk = max(1, (1 << 22) // max(1, s * n))
    for lo in range(0, s, chunk):
        hi = min(s, lo + chunk)
        # (a*b)(p) = a(b(p)): rows of the acting-second factor are indexed first
        comp = ext[lo:hi][:, a]
        out[lo:hi] = comp @ pow_
    return out


def named_monoid(kind, n, budget=DEFAULT_CLOSURE_BUDGET):
    """Build one of the named transformation families on n points.

    full = all endomaps, partial = all partial maps, rel = all binary
    relations, self_le2 = endomaps of rank at most 2 (no identity once n >= 3),
    self_2 = endomaps of rank exactly 2 (n <= 2 only: for n >= 3 the set is
    not closed, two rank-2 maps can compose to a constant), sym = bijections.
    Element order is lexicographic in the image tuples / relation codes.
    """
    if n < 1:
        raise ValueError("need at least one point")
    if kind not in NAMED_KINDS:
        raise ValueError(f"unknown family {kind!r}; pick one of {NAMED_KINDS}")
    if kind == "self_2" and n >= 3:
        raise ValueError(
            "rank-exactly-2 maps are not closed under composition for n >= 3"
        )
    size = _named_size(kind, n)
    if size == 0:
        raise ValueError(f"{kind} on {n} points is empty")
    if size is None or size > SIZE_CEILING:
        raise BudgetError(f"{kind} on {n} points is above the {SIZE_CEILING} ceiling")
    if size > budget:
        raise BudgetError(
            f"{kind} on {n} points has {size} elements, above the budget {budget}"
        )
    key = (kind, n)
    cached = _named_cache.get(key)
    if cached is not None:
        return cached

    name = f"{kind}:{n}"
    if kind == "full":
        elems = all_endomaps(n)
        table = _full_table([f.images for f in elems], n)
        sg = FiniteSemigroup(
            table, labels=[_map_label(f) for f in elems], element_data=elems, name=name
        )
    elif kind == "partial":
        elems = all_partial_maps(n)
        table = _full_table([f.images for f in elems], n + 1)
        sg = FiniteSemigroup(
            table, labels=[_map_label(f) for f in elems], element_data=elems, name=name
        )
    elif kind == "rel":
        elems = all_relations(n)
        table = [
            [compose_rel(a, b).encode() for b in elems] for a in elems
        ]
        sg = FiniteSemigroup(
            table, labels=[_rel_label(r) for r in elems], element_data=elems, name=name
        )
    else:
        if kind == "self_le2":
            elems = endomaps_rank_le(n, 2)
        elif kind == "self_2":
            elems = endomaps_rank_exact(n, 2)
        else:
            elems = all_permutations(n)
        idx = {f.images: i for i, f in enumerate(elems)}
        table = [
            [idx[compose_maps(b, a).images] for b in elems] for a in elems
        ]
        sg = FiniteSemigroup(
            table, labels=[_map_label(f) for f in elems], element_data=elems, name=name
        )
    _named_cache[key] = sg
    return sg


def element_signatures(sg):
    return sg.element_signatures()


def div_equivalent(sg, a, b):
    """True iff a and b divide each other on both sides: a = x1*b = b*x2 and
    b = y1*a = a*y2 for some x1, x2, y1, y2 in the semigroup."""
    t = sg.table
    s = sg.size
    return (
        any(t[x][b] == a for x in range(s))
        and any(t[b][x] == a for x in range(s))
        and any(t[y][a] == b for y in range(s))
        and any(t[a][y] == b for y in range(s))
    )


def monoids_up_to_iso(order):
    """All monoid Cayley tables of the given order with identity element 0,
    one representative per isomorphism class, in lexicographic table order.

    Isomorphisms must fix the identity, so candidates are deduplicated by the
    minimum relabeling over permutations fixing 0.
    """
    if order < 1:
        raise ValueError("order must be positive")
    n = order
    if n == 1:
        return [FiniteSemigroup([[0]], name="monoid1#0")]
    free = [(a, b) for a in range(1, n) for b in range(1, n)]
    tables = []
    # identity row and column are forced; fill the rest and filter assoc
    base = np.zeros((n, n), dtype=np.int64)
    base[0] = np.arange(n)
    base[:, 0] = np.arange(n)
    fills = np.array(
        list(itertools.product(range(n), repeat=len(free))), dtype=np.int64
    )
    all_tabs = np.broadcast_to(base, (len(fills), n, n)).copy()
    for k, (a, b) in enumerate(free):
        all_tabs[:, a, b] = fills[:, k]
    ok = np.ones(len(fills), dtype=bool)
    idx = np.arange(len(fills))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                t = all_tabs
                lhs = t[idx, t[idx, a, b], c]
                rhs = t[idx, a, t[idx, b, c]]
                ok &= lhs == rhs
    tables = [tuple(map(tuple, t)) for t in all_tabs[ok]]

    perms = [
        (0,) + p for p in itertools.permutations(range(1, n))
    ]

    def canon(tab):
        best = None
        for p in perms:
            inv = [0] * n
            for i, v in enumerate(p):
                inv[v] = i
            relab = tuple(
                tuple(inv[tab[p[a]][p[b]]] for b in range(n)) for a in range(n)
            )
            if best is None or relab < best:
                best = relab
        return best

    reps = sorted({canon(tab) for tab in tables})
    return [
        FiniteSemigroup(t, name=f"monoid{n}#{i}", check=False)
        for i, t in enumerate(reps)
    ]
