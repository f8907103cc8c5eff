"""Endomaps, partial maps, equivalence relations and binary relations on {0..n-1}.

Composition convention, used package-wide: ``compose_maps(f, g)`` is "g after f",
x -> g(f(x)).  Products of transformation semigroups are written the other way
round: a*b means "a after b" (b acts first), so a*b == compose_maps(b, a).
Relation composition follows the same rule: in ``compose_rel(a, b)`` the second
argument acts first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def _check_point(x, n):
    if not (0 <= x < n):
        raise ValueError(f"point {x} outside ground set of size {n}")


@dataclass(frozen=True)
class Endomap:
    """A total map {0..n-1} -> {0..n-1}, stored as its image tuple."""

    n: int
    images: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.images) != self.n:
            raise ValueError("image tuple length must equal n")
        if any(not (0 <= y < self.n) for y in self.images):
            raise ValueError("image outside ground set")
        object.__setattr__(self, "images", tuple(self.images))

    @staticmethod
    def identity(n):
        return Endomap(n, tuple(range(n)))

    @staticmethod
    def constant(n, c):
        _check_point(c, n)
        return Endomap(n, (c,) * n)

    def __call__(self, x):
        return self.images[x]

    def rank(self):
        return len(set(self.images))

    def range_set(self):
        return tuple(sorted(set(self.images)))

    def is_idempotent(self):
        return all(self.images[y] == y for y in set(self.images))

    def is_permutation(self):
        return len(set(self.images)) == self.n

    # Lexicographic rank among all n^n image tuples; point 0 is the most
    # significant digit.  This is the canonical element index in Self(n).
    def encode(self):
        k = 0
        for y in self.images:
            k = k * self.n + y
        return k

    @staticmethod
    def from_index(n, k):
        if n == 0:
            if k != 0:
                raise ValueError("index out of range")
            return Endomap(0, ())
        if not (0 <= k < n**n):
            raise ValueError("index out of range")
        digits = []
        for _ in range(n):
            digits.append(k % n)
            k //= n
        return Endomap(n, tuple(reversed(digits)))

    def to_json(self):
        return {"n": self.n, "images": list(self.images)}

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or set(obj) != {"n", "images"}:
            raise ValueError("endomap JSON needs exactly the keys 'n' and 'images'")
        return Endomap(int(obj["n"]), tuple(int(y) for y in obj["images"]))


def compose_maps(f, g):
    """Return "g after f": x -> g(f(x)).  Both maps must share a ground set."""
    if f.n != g.n:
        raise ValueError("ground sets differ")
    return Endomap(f.n, tuple(g.images[y] for y in f.images))


# Partial maps use the sentinel value n ("one past the ground set") for
# undefined points, never None, so image tuples stay plain ints.
@dataclass(frozen=True)
class PartialMap:
    n: int
    images: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.images) != self.n:
            raise ValueError("image tuple length must equal n")
        if any(not (0 <= y <= self.n) for y in self.images):
            raise ValueError("image outside ground set and not the undefined sentinel")
        object.__setattr__(self, "images", tuple(self.images))

    @staticmethod
    def identity(n):
        return PartialMap(n, tuple(range(n)))

    @staticmethod
    def empty(n):
        return PartialMap(n, (n,) * n)

    def undefined_at(self, x):
        return self.images[x] == self.n

    def domain(self):
        return tuple(x for x in range(self.n) if self.images[x] != self.n)

    def encode(self):
        k = 0
        for y in self.images:
            k = k * (self.n + 1) + y
        return k

    @staticmethod
    def from_index(n, k):
        if not (0 <= k < (n + 1) ** n):
            raise ValueError("index out of range")
        digits = []
        for _ in range(n):
            digits.append(k % (n + 1))
            k //= n + 1
        return PartialMap(n, tuple(reversed(digits)))

    def totalize(self, sink_n):
        """Extend to a total map on {0..sink_n-1}, sending undefined points and
        every new point to the sink sink_n-1.  Requires sink_n > n."""
        if sink_n <= self.n:
            raise ValueError("need at least one fresh point for the sink")
        sink = sink_n - 1
        images = tuple(sink if y == self.n else y for y in self.images)
        return Endomap(sink_n, images + (sink,) * (sink_n - self.n))

    def to_json(self):
        return {
            "n": self.n,
            "images": [None if y == self.n else y for y in self.images],
        }

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or set(obj) != {"n", "images"}:
            raise ValueError("partial map JSON needs exactly the keys 'n' and 'images'")
        n = int(obj["n"])
        return PartialMap(n, tuple(n if y is None else int(y) for y in obj["images"]))


def compose_partial(f, g):
    """Return "g after f" on partial maps; defined where both steps are."""
    if f.n != g.n:
        raise ValueError("ground sets differ")
    n = f.n
    images = tuple(n if y == n else g.images[y] for y in f.images)
    return PartialMap(n, images)


@dataclass(frozen=True)
class EquivRelation:
    """An equivalence relation on {0..n-1}.

    labels[x] is the least member of x's block, which makes the label tuple a
    canonical form: two relations are equal iff their label tuples are.
    """

    n: int
    labels: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.labels) != self.n:
            raise ValueError("label tuple length must equal n")
        seen = set()
        for x, l in enumerate(self.labels):
            if l > x or self.labels[l] != l:
                raise ValueError("labels must be least block members")
            if l == x:
                seen.add(x)
        if any(l not in seen for l in self.labels):
            raise ValueError("label is not a block member")
        object.__setattr__(self, "labels", tuple(self.labels))

    @staticmethod
    def discrete(n):
        return EquivRelation(n, tuple(range(n)))

    @staticmethod
    def coarse(n):
        if n == 0:
            return EquivRelation(0, ())
        return EquivRelation(n, (0,) * n)

    @staticmethod
    def from_blocks(n, blocks):
        labels = [-1] * n
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            least = min(block)
            for x in block:
                _check_point(x, n)
                if labels[x] != -1:
                    raise ValueError(f"point {x} in two blocks")
                labels[x] = least
        if -1 in labels:
            raise ValueError("blocks do not cover the ground set")
        return EquivRelation(n, tuple(labels))

    def blocks(self):
        """Blocks as sorted tuples, ordered by least member."""
        out = {}
        for x, l in enumerate(self.labels):
            out.setdefault(l, []).append(x)
        return tuple(tuple(out[l]) for l in sorted(out))

    def n_blocks(self):
        return len(set(self.labels))

    def related(self, x, y):
        return self.labels[x] == self.labels[y]

    def refines(self, other):
        """True iff self <= other as relation sets (every block of self lies
        inside a block of other)."""
        if self.n != other.n:
            raise ValueError("ground sets differ")
        return all(other.labels[l] == other.labels[x] for x, l in enumerate(self.labels))

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks()]}

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or set(obj) != {"n", "blocks"}:
            raise ValueError("equivalence JSON needs exactly the keys 'n' and 'blocks'")
        e = EquivRelation.from_blocks(int(obj["n"]), [[int(x) for x in b] for b in obj["blocks"]])
        if [list(b) for b in e.blocks()] != obj["blocks"]:
            raise ValueError("blocks not in canonical order (least members ascending)")
        return e


def kernel_and_range(f):
    """Kernel (as an equivalence) and sorted range of an endomap."""
    first = {}
    labels = []
    for x, y in enumerate(f.images):
        first.setdefault(y, x)
        labels.append(first[y])
    return EquivRelation(f.n, tuple(labels)), f.range_set()


def theta_of_subset(n, zmask):
    """The equivalence with blocks Z and its complement (one block if either
    is empty).  Z is given as a bitmask over {0..n-1}."""
    if n <= 0:
        raise ValueError("need a nonempty ground set")
    if not (0 <= zmask < (1 << n)):
        raise ValueError("bitmask outside the ground set")
    full = (1 << n) - 1
    if zmask in (0, full):
        return EquivRelation.coarse(n)
    in_least = (zmask & -zmask).bit_length() - 1
    out_mask = full & ~zmask
    out_least = (out_mask & -out_mask).bit_length() - 1
    labels = tuple(in_least if zmask >> x & 1 else out_least for x in range(n))
    return EquivRelation(n, labels)


def two_block_equivalences(n):
    """All equivalences with exactly two blocks, in ascending order of the
    bitmask of the block containing point 0."""
    out = []
    for zmask in range(1, 1 << n, 2):  # masks containing point 0
        if zmask != (1 << n) - 1:
            out.append(theta_of_subset(n, zmask))
    return out


def separating_idempotents(alpha, beta):
    """For distinct two-block kernels alpha, beta, build idempotent rank-2 maps
    (f, g) with kernel(f) = alpha, kernel(g) = beta such that "f after g",
    compose_maps(g, f), is constant.

    Deterministic recipe: A0 is the first alpha-block (least-member order)
    meeting both beta-blocks; f collapses A0 to b0 = min(A0 & B0) and the other
    alpha-block A1 to a = min(A1); g collapses the beta-blocks B0, B1 to
    b0 and b1 = min(A0 & B1).  Since b0, b1 both lie in A0, f maps every
    g-value to b0.
    """
    if alpha.n != beta.n:
        raise ValueError("ground sets differ")
    if alpha == beta:
        raise ValueError("kernels must be distinct")
    if alpha.n_blocks() != 2 or beta.n_blocks() != 2:
        raise ValueError("both equivalences must have exactly two blocks")
    n = alpha.n
    b_blocks = beta.blocks()
    a0 = a1 = None
    for block in alpha.blocks():
        s = set(block)
        if a0 is None and all(s & set(bb) for bb in b_blocks):
            a0 = s
        else:
            a1 = set(block) if a1 is None else a1
    # alpha != beta forces some alpha-block to meet both beta-blocks
    assert a0 is not None and a1 is not None
    b0 = min(a0 & set(b_blocks[0]))
    b1 = min(a0 & set(b_blocks[1]))
    a = min(a1)
    f = Endomap(n, tuple(b0 if x in a0 else a for x in range(n)))
    g = Endomap(n, tuple(b0 if x in set(b_blocks[0]) else b1 for x in range(n)))
    return f, g


@dataclass(frozen=True)
class BinRel:
    """A binary relation on {0..n-1}; rows[x] is the bitmask {y : (x,y) in r}."""

    n: int
    rows: tuple

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError("row count must equal n")
        if any(not (0 <= r < (1 << self.n)) for r in self.rows):
            raise ValueError("row bits outside the ground set")
        object.__setattr__(self, "rows", tuple(self.rows))

    @staticmethod
    def identity(n):
        return BinRel(n, tuple(1 << x for x in range(n)))

    @staticmethod
    def empty(n):
        return BinRel(n, (0,) * n)

    @staticmethod
    def full(n):
        return BinRel(n, ((1 << n) - 1,) * n)

    @staticmethod
    def from_pairs(n, pairs):
        rows = [0] * n
        for x, y in pairs:
            _check_point(x, n)
            _check_point(y, n)
            rows[x] |= 1 << y
        return BinRel(n, tuple(rows))

    @staticmethod
    def graph_of(f):
        return BinRel(f.n, tuple(1 << y for y in f.images))

    def has(self, x, y):
        return bool(self.rows[x] >> y & 1)

    def pairs(self):
        return tuple(
            (x, y) for x in range(self.n) for y in range(self.n) if self.rows[x] >> y & 1
        )

    # Single-integer code: bit x*n + y set iff (x,y) in the relation.  Numeric
    # code order is the canonical element order of the relation monoid.
    def encode(self):
        k = 0
        for x, r in enumerate(self.rows):
            k |= r << (x * self.n)
        return k

    @staticmethod
    def from_index(n, k):
        if not (0 <= k < (1 << (n * n))):
            raise ValueError("index out of range")
        mask = (1 << n) - 1
        return BinRel(n, tuple(k >> (x * n) & mask for x in range(n)))

    def to_json(self):
        return {
            "n": self.n,
            "rows": [
                "".join("1" if r >> y & 1 else "0" for y in range(self.n)) for r in self.rows
            ],
        }

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or set(obj) != {"n", "rows"}:
            raise ValueError("relation JSON needs exactly the keys 'n' and 'rows'")
        n = int(obj["n"])
        rows = []
        for s in obj["rows"]:
            if not isinstance(s, str) or len(s) != n or set(s) - {"0", "1"}:
                raise ValueError("relation rows must be 0/1 strings of length n")
            rows.append(sum(1 << y for y, c in enumerate(s) if c == "1"))
        return BinRel(n, tuple(rows))


def compose_rel(a, b):
    """Relation product "a after b": (x,y) in the result iff there is a z with
    (x,z) in b and (z,y) in a."""
    if a.n != b.n:
        raise ValueError("ground sets differ")
    rows = []
    for x in range(b.n):
        acc = 0
        r = b.rows[x]
        while r:
            z = (r & -r).bit_length() - 1
            acc |= a.rows[z]
            r &= r - 1
        rows.append(acc)
    return BinRel(a.n, tuple(rows))


def transpose(a):
    rows = [0] * a.n
    for x in range(a.n):
        r = a.rows[x]
        while r:
            y = (r & -r).bit_length() - 1
            rows[y] |= 1 << x
            r &= r - 1
    return BinRel(a.n, tuple(rows))


def inverse_image_map(f):
    """The map S -> f^-1(S) on the 2^n subsets of f's ground set, as an endomap
    of {0..2^n-1} with subsets coded as bitmasks."""
    n = f.n
    images = []
    for s in range(1 << n):
        images.append(sum(1 << x for x in range(n) if s >> f.images[x] & 1))
    return Endomap(1 << n, tuple(images))


def all_endomaps(n):
    """All of Self(n) in canonical (lexicographic image tuple) order."""
    return [Endomap(n, t) for t in itertools.product(range(n), repeat=n)]


def all_partial_maps(n):
    """All partial maps in canonical order; the undefined sentinel n sorts
    after every genuine image."""
    return [PartialMap(n, t) for t in itertools.product(range(n + 1), repeat=n)]


def all_relations(n):
    return [BinRel.from_index(n, k) for k in range(1 << (n * n))]


def all_permutations(n):
    out = [Endomap(n, t) for t in itertools.permutations(range(n))]
    out.sort(key=lambda f: f.images)
    return out


def endomaps_rank_le(n, r):
    return [f for f in all_endomaps(n) if f.rank() <= r]


def endomaps_rank_exact(n, r):
    return [f for f in all_endomaps(n) if f.rank() == r]
