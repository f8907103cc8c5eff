"""Pure Python/numpy kernel backend.

Same contract as the compiled backend in ``_speedups.pyx``; the two must agree
bit for bit on every output (including node and visit counts of the search).
"""

from __future__ import annotations

import numpy as np

NAME = "python"


# ---------------------------------------------------------------------------
# backtracking search for a semigroup embedding
#
# The caller supplies the source and target Cayley tables, a generator list
# for the source, a per-generator candidate list (ascending target indices),
# and optional pre-assigned (source, target) pairs (the identity in monoid
# mode).  Assigning a generator image triggers incremental closure: products
# of known elements get forced images, with consistency and injectivity
# checked on the fly.  Candidates at depth 0 can be restricted to a slice
# [first_lo, first_hi) so parallel drivers can split the top level.


def _close_from(st, tt, img, inv, known, start):
    qi = start
    while qi < len(known):
        x = known[qi]
        ix = img[x]
        j = 0
        while j < len(known):  # list grows while we scan it
            y = known[j]
            iy = img[y]
            p = st[x][y]
            q = tt[ix][iy]
            w = img[p]
            if w == -1:
                if inv[q] != -1:
                    return False
                img[p] = q
                inv[q] = p
                known.append(p)
            elif w != q:
                return False
            p = st[y][x]
            q = tt[iy][ix]
            w = img[p]
            if w == -1:
                if inv[q] != -1:
                    return False
                img[p] = q
                inv[q] = p
                known.append(p)
            elif w != q:
                return False
            j += 1
        qi += 1
    return True


def _undo_to(img, inv, known, mark):
    while len(known) > mark:
        x = known.pop()
        inv[img[x]] = -1
        img[x] = -1


def search_embedding(s_table, t_table, gens, cands, pre_pairs, first_lo, first_hi, budget):
    """Search for an injective homomorphism determined by generator images.

    Returns (status, mapping, nodes, visits): status 0 = exhausted without a
    witness, 1 = witness found (mapping is the full image list), 2 = node
    budget exceeded.  visits[k] counts entries into depth k.
    """
    st = [list(map(int, row)) for row in np.asarray(s_table)]
    tt = [list(map(int, row)) for row in np.asarray(t_table)]
    s = len(st)
    g = len(gens)
    img = [-1] * s
    inv = [-1] * len(tt)
    known = []
    for a, c in pre_pairs:
        img[a] = c
        inv[c] = a
        known.append(a)
    if not _close_from(st, tt, img, inv, known, 0):
        return 0, None, 0, [0] * g
    if g == 0:
        if len(known) == s:
            return 1, list(img), 0, []
        return 0, None, 0, []

    cand_lists = [list(c) for c in cands]
    cand_lists[0] = cand_lists[0][first_lo:first_hi]
    visits = [0] * g
    nodes = 0
    frame_start = [0] * g
    pos = [0] * g
    forced_done = [False] * g

    k = 0
    visits[0] = 1
    frame_start[0] = len(known)

    while True:
        gk = gens[k]
        advanced = False
        if img[gk] != -1:
            # image already determined by closure of earlier choices
            if not forced_done[k]:
                forced_done[k] = True
                nodes += 1
                if nodes > budget:
                    return 2, None, nodes, visits
                advanced = True
        else:
            lst = cand_lists[k]
            while pos[k] < len(lst):
                c = lst[pos[k]]
                pos[k] += 1
                nodes += 1
                if nodes > budget:
                    return 2, None, nodes, visits
                if inv[c] != -1:
                    continue
                mark = len(known)
                img[gk] = c
                inv[c] = gk
                known.append(gk)
                if _close_from(st, tt, img, inv, known, mark):
                    advanced = True
                    break
                _undo_to(img, inv, known, mark)
        if advanced:
            k += 1
            if k == g:
                assert len(known) == s  # the generators generate the source
                return 1, list(img), nodes, visits
            visits[k] += 1
            frame_start[k] = len(known)
            pos[k] = 0
            forced_done[k] = False
            continue
        if k == 0:
            return 0, None, nodes, visits
        k -= 1
        _undo_to(img, inv, known, frame_start[k])


# ---------------------------------------------------------------------------
# dense-table associativity scan


def assoc_violation(table):
    """First triple (a,b,c) with (ab)c != a(bc), packed as (a*s+b)*s+c, or -1."""
    t = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
    s = t.shape[0]
    for a in range(s):
        left = t[t[a]]  # [b,c] -> t[t[a,b], c]
        right = t[a][t]  # [b,c] -> t[a, t[b,c]]
        bad = left != right
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return (a * s + b) * s + c
    return -1


# ---------------------------------------------------------------------------
# packed-relation batch helpers (rows are uint64 bitmasks)


def _unpack(rows, n):
    rows = np.asarray(rows, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((rows[..., None] >> shifts) & np.uint64(1)).astype(np.uint8)


def _pack(bits):
    n = bits.shape[-1]
    weights = (np.uint64(1) << np.arange(n, dtype=np.uint64))
    return (bits.astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)


def _batch_compose(arows, brows, n):
    # result rows: out[k,x] = OR of arows[k,z] over bits z of brows[k,x]
    bbits = _unpack(brows, n).astype(bool)
    masked = np.where(bbits, np.asarray(arows, dtype=np.uint64)[:, None, :], np.uint64(0))
    return np.bitwise_or.reduce(masked, axis=2)


def _batch_transpose(rows, n):
    return _pack(_unpack(rows, n).transpose(0, 2, 1))


def rel_anti_sweep(n, arows, brows):
    """Check transpose(a.b) == transpose(b).transpose(a) and double-transpose
    identity for each pair; return the first violating pair index or -1."""
    arows = np.asarray(arows, dtype=np.uint64)
    brows = np.asarray(brows, dtype=np.uint64)
    lhs = _batch_transpose(_batch_compose(arows, brows, n), n)
    rhs = _batch_compose(_batch_transpose(brows, n), _batch_transpose(arows, n), n)
    invol = _batch_transpose(_batch_transpose(arows, n), n)
    bad = (lhs != rhs).any(axis=1) | (invol != arows).any(axis=1)
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else -1


def eta_mult_sweep(etable, eta_rows, n_points):
    """Check eta[etable[i,j]] == compose(eta_i, eta_j) for all pairs (i,j);
    return the first violating pair packed as i*E+j, or -1."""
    etable = np.asarray(etable)
    eta_rows = np.asarray(eta_rows, dtype=np.uint64)
    e = etable.shape[0]
    jbits = _unpack(eta_rows, n_points).astype(bool)  # (E, x, z)
    chunk = max(1, (1 << 22) // max(1, e * n_points * n_points))
    for lo in range(0, e, chunk):
        hi = min(e, lo + chunk)
        want = eta_rows[etable[lo:hi]]  # (c, E, P)
        masked = np.where(
            jbits[None, :, :, :], eta_rows[lo:hi][:, None, None, :], np.uint64(0)
        )
        got = np.bitwise_or.reduce(masked, axis=3)  # (c, E, P)
        bad = (got != want).any(axis=2)
        if bad.any():
            i_off, j = map(int, np.argwhere(bad)[0])
            return (lo + i_off) * e + j
    return -1


def emonoid_table(m_table, alpha_of, x_of, n_points, m_size):
    """Cayley table of the wreath-style product monoid Self(n) x M^n.

    Elements are coded as alpha_code * m_size^n + x_code with alpha_code the
    base-n rank of the point map and x_code the base-m rank of the label
    tuple; alpha_of / x_of give the decoded digit rows per element.
    """
    m_table = np.asarray(m_table, dtype=np.int64)
    alpha_of = np.asarray(alpha_of, dtype=np.int64)
    x_of = np.asarray(x_of, dtype=np.int64)
    e, n = alpha_of.shape
    npow = n_points ** np.arange(n - 1, -1, -1, dtype=np.int64)
    mpow = m_size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    x_shift = m_size**n
    out = np.empty((e, e), dtype=np.int64)
    chunk = max(1, (1 << 23) // max(1, e * n))
    for lo in range(0, e, chunk):
        hi = min(e, lo + chunk)
        gamma = alpha_of[lo:hi][:, alpha_of]  # (c, E, n): alpha_a(alpha_b(p))
        t1 = x_of[lo:hi][:, alpha_of]  # (c, E, n): x_a(alpha_b(p))
        z = m_table[x_of[None, :, :], t1]  # (c, E, n): x_b(p) * x_a(alpha_b(p))
        out[lo:hi] = gamma @ npow * x_shift + z @ mpow
    return out
