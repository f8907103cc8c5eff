"""Exact linear algebra over prime fields F_p (p <= 251).

Vectors are coordinate tuples; maps act on the right, so apply(f, v) is the
row vector v times f's matrix, and compose(f, g) ("g after f") has matrix
f.rows @ g.rows.  Subspaces are canonical: reduced row echelon bases, which
makes equality structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from .errors import BudgetError

MAX_FIELD = 251
ENUM_CEILING = 65536


def check_prime(p):
    if not (2 <= p <= MAX_FIELD):
        raise ValueError(f"field order must be a prime in [2, {MAX_FIELD}]")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


def _rref(rows, p, ncols):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[v % p for v in row] for row in rows]
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], tuple(pivots)


def _nullspace(rows, p, n):
    """Canonical basis of {x : row . x = 0 for every row}."""
    red, pivots = _rref(rows, p, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][fc]) % p
        basis.append(v)
    out, _ = _rref(basis, p, n)
    return out


@dataclass(frozen=True)
class Subspace:
    p: int
    n: int
    rows: tuple  # reduced row echelon basis, no zero rows

    def __post_init__(self):
        check_prime(self.p)
        canon, _ = _rref(self.rows, self.p, self.n)
        if tuple(canon) != tuple(tuple(r) for r in self.rows):
            raise ValueError("rows are not a reduced echelon basis")

    @staticmethod
    def from_vectors(p, n, vectors):
        check_prime(p)
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != n for v in vectors):
            raise ValueError("vector length mismatch")
        rows, _ = _rref(vectors, p, n)
        return Subspace(p, n, tuple(rows))

    @staticmethod
    def zero(p, n):
        return Subspace(p, n, ())

    @staticmethod
    def full(p, n):
        return Subspace.from_vectors(p, n, np.eye(n, dtype=int).tolist())

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec):
        v = [x % self.p for x in vec]
        for row in self.rows:
            c = next(i for i, x in enumerate(row) if x == 1 and all(row[j] == 0 for j in range(i)))
            f = v[c]
            if f:
                v = [(a - f * b) % self.p for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def vector_list(self):
        """Every vector of the subspace, sorted coordinate-lexicographically."""
        if self.p**self.dim > ENUM_CEILING:
            raise BudgetError("subspace too large to enumerate")
        base = np.asarray(self.rows, dtype=np.int64).reshape(self.dim, self.n)
        out = set()
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = (np.asarray(coeffs, dtype=np.int64) @ base) % self.p if self.dim else np.zeros(self.n, dtype=np.int64)
            out.add(tuple(int(x) for x in v))
        return sorted(out)


def all_vectors(p, n):
    if p**n > ENUM_CEILING:
        raise BudgetError("vector space too large to enumerate")
    return [t for t in itertools.product(range(p), repeat=n)]


def sum_and_intersection(x, y):
    """Both lattice operations at once (echelon bookkeeping is shared)."""
    if (x.p, x.n) != (y.p, y.n):
        raise ValueError("subspaces live in different spaces")
    p, n = x.p, x.n
    block = [list(r) + list(r) for r in x.rows] + [list(r) + [0] * n for r in y.rows]
    red, _ = _rref(block, p, 2 * n)
    sum_rows = [r[:n] for r in red if any(r[:n])]
    int_rows = [r[n:] for r in red if not any(r[:n])]
    return Subspace.from_vectors(p, n, sum_rows), Subspace.from_vectors(p, n, int_rows)


def orthogonal(x):
    """The annihilator {f : f(v) = 0 on x}, as a subspace of coefficient rows."""
    return Subspace(x.p, x.n, tuple(tuple(r) for r in _nullspace(list(x.rows), x.p, x.n)))


@dataclass(frozen=True)
class LinearMap:
    """Matrix rows are the images of the standard basis; v goes to v @ rows."""

    p: int
    rows: tuple

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(
            self, "rows", tuple(tuple(v % self.p for v in row) for row in self.rows)
        )
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("ragged matrix")

    @property
    def n_in(self):
        return len(self.rows)

    @property
    def n_out(self):
        return len(self.rows[0]) if self.rows else 0

    def apply(self, vec):
        if len(vec) != self.n_in:
            raise ValueError("vector length mismatch")
        m = np.asarray(self.rows, dtype=np.int64)
        v = np.asarray(vec, dtype=np.int64)
        return tuple(int(x) for x in (v @ m) % self.p)

    def matrix(self):
        return np.asarray(self.rows, dtype=np.int64)

    def kernel(self):
        cols = [tuple(self.rows[i][j] for i in range(self.n_in)) for j in range(self.n_out)]
        return Subspace(self.p, self.n_in, tuple(tuple(r) for r in _nullspace(cols, self.p, self.n_in)))

    def image(self):
        return Subspace.from_vectors(self.p, self.n_out, self.rows)

    def is_idempotent(self):
        m = self.matrix()
        return self.n_in == self.n_out and bool(((m @ m) % self.p == m).all())


def compose_linear(f, g):
    """"g after f": apply f, then g."""
    if f.p != g.p or f.n_out != g.n_in:
        raise ValueError("maps do not compose")
    return LinearMap(f.p, ((f.matrix() @ g.matrix()) % f.p).tolist())


@dataclass(frozen=True)
class Functional:
    p: int
    coeffs: tuple

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "coeffs", tuple(v % self.p for v in self.coeffs))

    def apply(self, vec):
        if len(vec) != len(self.coeffs):
            raise ValueError("vector length mismatch")
        return sum(a * b for a, b in zip(self.coeffs, vec)) % self.p

    def kernel(self):
        return Subspace(
            self.p,
            len(self.coeffs),
            tuple(tuple(r) for r in _nullspace([list(self.coeffs)], self.p, len(self.coeffs))),
        )


def dual_dimension_check(p, n):
    """Standard dual basis and the canonical pairing; the pairing matrix must
    be the identity and the dual have dimension n."""
    check_prime(p)
    duals = [Functional(p, tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    pairing = [[duals[i].apply(basis[j]) for j in range(n)] for i in range(n)]
    rank = len(_rref(pairing, p, n)[0]) if n else 0
    ok = rank == n and all(
        pairing[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )
    return {"p": p, "n": n, "dual_dim": rank, "pairing_identity": ok, "ok": ok}


def _masks(k):
    return range(1 << k)


def phi_from_functionals(p, n, functionals):
    """The map X -> intersection of ker l_i over i in X, on all subsets of the
    functional family; phi(empty) is the whole space.

    The family must be linearly independent.  Returns the table (by subset
    bitmask) plus checks: reverse-order lattice laws, codim phi(X) = |X|,
    injectivity.
    """
    fns = [Functional(p, tuple(f)) if not isinstance(f, Functional) else f for f in functionals]
    k = len(fns)
    stacked = [list(f.coeffs) for f in fns]
    if len(_rref(stacked, p, n)[0]) != k:
        raise ValueError("functionals are not linearly independent")
    phi = {}
    for mask in _masks(k):
        rows = [list(fns[i].coeffs) for i in range(k) if mask >> i & 1]
        phi[mask] = Subspace(p, n, tuple(tuple(r) for r in _nullspace(rows, p, n)))
    checks = {
        "codim": all(phi[m].dim == n - bin(m).count("1") for m in _masks(k)),
        "empty_is_full": phi[0] == Subspace.full(p, n),
        "injective": len({phi[m].rows for m in _masks(k)}) == 1 << k,
    }
    join_ok = meet_ok = True
    for a in _masks(k):
        for b in _masks(k):
            s, i = sum_and_intersection(phi[a], phi[b])
            if i != phi[a | b]:
                join_ok = False
            if s != phi[a & b]:
                meet_ok = False
    checks["union_to_intersection"] = join_ok
    checks["intersection_to_sum"] = meet_ok
    return {"phi": phi, "checks": checks, "ok": all(checks.values())}


def span_embedding(p, n, vectors):
    """The map X -> span{v_i : i in X} on subsets of an independent family;
    joins go to sums and meets to intersections."""
    vectors = [tuple(v) for v in vectors]
    k = len(vectors)
    if len(_rref([list(v) for v in vectors], p, n)[0]) != k:
        raise ValueError("vectors are not linearly independent")
    phi = {
        mask: Subspace.from_vectors(
            p, n, [vectors[i] for i in range(k) if mask >> i & 1]
        )
        for mask in _masks(k)
    }
    checks = {
        "dim": all(phi[m].dim == bin(m).count("1") for m in _masks(k)),
        "injective": len({phi[m].rows for m in _masks(k)}) == 1 << k,
    }
    join_ok = meet_ok = True
    for a in _masks(k):
        for b in _masks(k):
            s, i = sum_and_intersection(phi[a], phi[b])
            if s != phi[a | b]:
                join_ok = False
            if i != phi[a & b]:
                meet_ok = False
    checks["union_to_sum"] = join_ok
    checks["intersection_to_intersection"] = meet_ok
    return {"phi": phi, "checks": checks, "ok": all(checks.values())}


def extract_independent_vectors(phi, k):
    """From an increasing subset-to-subspace embedding, pick the least vector
    in phi({i}) outside phi(empty) for each i; the family is checked to be
    independent modulo phi(empty)."""
    base = phi[0]
    out = []
    for i in range(k):
        diff = [v for v in phi[1 << i].vector_list() if not base.contains(v)]
        if not diff:
            raise ValueError(f"phi({{{i}}}) adds no vector over phi(empty)")
        out.append(diff[0])
    p, n = base.p, base.n
    joint = Subspace.from_vectors(p, n, list(base.rows) + out)
    if joint.dim != base.dim + k:
        raise ValueError("extracted vectors are not independent over phi(empty)")
    return out


def _extend_basis(current_rows, pool_vectors, p, n):
    """Greedily extend a basis by pool vectors in their listed order; returns
    the added vectors."""
    added = []
    have = list(current_rows)
    rank = len(_rref(have, p, n)[0]) if have else 0
    for v in pool_vectors:
        trial = have + [list(v)]
        r = len(_rref(trial, p, n)[0])
        if r > rank:
            have = trial
            rank = r
            added.append(tuple(v))
    return added


def projection_pair(x, y):
    """Complementary projections for a pair of subspaces.

    Decomposes V as (X&Y) + X' + Y' + T, then f projects onto Y'+T killing X,
    g projects onto X'+T killing Y, and their composite "g after f" is the
    projection onto T killing X+Y.  Returns (f, g, gf, report).
    """
    if (x.p, x.n) != (y.p, y.n):
        raise ValueError("subspaces live in different spaces")
    p, n = x.p, x.n
    s, z = sum_and_intersection(x, y)
    xp = _extend_basis([list(r) for r in z.rows], x.vector_list(), p, n)
    yp = _extend_basis([list(r) for r in z.rows] + [list(v) for v in xp], y.vector_list(), p, n)
    t = _extend_basis(
        [list(r) for r in s.rows], all_vectors(p, n), p, n
    )
    basis = [list(r) for r in z.rows] + [list(v) for v in xp] + [list(v) for v in yp] + [
        list(v) for v in t
    ]
    if len(basis) != n:
        raise ValueError("decomposition does not span the whole space")
    b = np.asarray(basis, dtype=np.int64)
    binv = _matrix_inverse(b, p)
    nz, nx, ny = z.dim, len(xp), len(yp)

    def proj(keep):
        d = b.copy()
        for i in range(n):
            if i not in keep:
                d[i] = 0
        return LinearMap(p, ((binv @ d) % p).tolist())

    keep_f = set(range(nz + nx, n))  # Y' and T rows survive
    keep_g = set(range(nz, nz + nx)) | set(range(nz + nx + ny, n))  # X' and T
    f = proj(keep_f)
    g = proj(keep_g)
    gf = compose_linear(f, g)
    t_space = Subspace.from_vectors(p, n, t)
    report = {
        "f_idempotent": f.is_idempotent(),
        "g_idempotent": g.is_idempotent(),
        "gf_idempotent": gf.is_idempotent(),
        "ker_f_is_x": f.kernel() == x,
        "ker_g_is_y": g.kernel() == y,
        "ker_gf_is_sum": gf.kernel() == s,
        "image_gf_is_complement": gf.image() == t_space,
    }
    report["ok"] = all(report.values())
    return f, g, gf, report


def _matrix_inverse(m, p):
    n = len(m)
    aug = [list(map(int, m[i])) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, piv = _rref(aug, p, 2 * n)
    if list(piv[:n]) != list(range(n)):
        raise ValueError("matrix is singular")
    return np.asarray([r[n:] for r in red], dtype=np.int64)


def all_subspaces(p, n):
    """Every subspace of F_p^n, sorted by (dimension, basis rows)."""
    vecs = [v for v in all_vectors(p, n) if any(v)]
    zero = Subspace.zero(p, n)
    seen = {zero.rows: zero}
    frontier = [zero]
    while frontier:
        new = []
        for s in frontier:
            for v in vecs:
                if not s.contains(v):
                    s2 = Subspace.from_vectors(p, n, list(s.rows) + [v])
                    if s2.rows not in seen:
                        seen[s2.rows] = s2
                        new.append(s2)
        frontier = new
    return sorted(seen.values(), key=lambda s: (s.dim, s.rows))


def subspace_lattice(p, n):
    """The full subspace lattice with dense join/meet tables (index based)."""
    subs = all_subspaces(p, n)
    index = {s.rows: i for i, s in enumerate(subs)}
    size = len(subs)
    join = np.zeros((size, size), dtype=np.int32)
    meet = np.zeros((size, size), dtype=np.int32)
    for i, a in enumerate(subs):
        for j in range(i, size):
            s, m = sum_and_intersection(a, subs[j])
            join[i, j] = join[j, i] = index[s.rows]
            meet[i, j] = meet[j, i] = index[m.rows]
    return {"subspaces": subs, "index": index, "join": join, "meet": meet}


def random_subspace(rng, p, n):
    k = int(rng.integers(0, n + 1))
    vecs = [[int(v) for v in rng.integers(0, p, n)] for _ in range(k)]
    return Subspace.from_vectors(p, n, vecs)
