# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend; bit-for-bit equivalent to pyback.py."""

import numpy as np

NAME = "compiled"


cdef int _close(int[:, ::1] st, int[:, ::1] tt, int[::1] img, int[::1] inv,
                int[::1] known, int start, int* klen_io) noexcept:
    cdef int klen = klen_io[0]
    cdef int qi = start
    cdef int j, x, y, ix, iy, p, q, w
    while qi < klen:
        x = known[qi]
        ix = img[x]
        j = 0
        while j < klen:
            y = known[j]
            iy = img[y]
            p = st[x, y]
            q = tt[ix, iy]
            w = img[p]
            if w == -1:
                if inv[q] != -1:
                    klen_io[0] = klen
                    return 0
                img[p] = q
                inv[q] = p
                known[klen] = p
                klen += 1
            elif w != q:
                klen_io[0] = klen
                return 0
            p = st[y, x]
            q = tt[iy, ix]
            w = img[p]
            if w == -1:
                if inv[q] != -1:
                    klen_io[0] = klen
                    return 0
                img[p] = q
                inv[q] = p
                known[klen] = p
                klen += 1
            elif w != q:
                klen_io[0] = klen
                return 0
            j += 1
        qi += 1
    klen_io[0] = klen
    return 1


cdef void _undo(int[::1] img, int[::1] inv, int[::1] known, int mark, int* klen_io) noexcept:
    cdef int klen = klen_io[0]
    cdef int x
    while klen > mark:
        klen -= 1
        x = known[klen]
        inv[img[x]] = -1
        img[x] = -1
    klen_io[0] = klen


def search_embedding(s_table, t_table, gens, cands, pre_pairs, first_lo, first_hi, budget):
    cdef int[:, ::1] st = np.ascontiguousarray(s_table, dtype=np.intc)
    cdef int[:, ::1] tt = np.ascontiguousarray(t_table, dtype=np.intc)
    cdef int s = st.shape[0]
    cdef int t = tt.shape[0]
    cdef int g = len(gens)

    img_arr = np.full(s, -1, dtype=np.intc)
    inv_arr = np.full(t, -1, dtype=np.intc)
    known_arr = np.zeros(s, dtype=np.intc)
    cdef int[::1] img = img_arr
    cdef int[::1] inv = inv_arr
    cdef int[::1] known = known_arr
    cdef int klen = 0

    cdef int a, c
    for a, c in pre_pairs:
        img[a] = c
        inv[c] = a
        known[klen] = a
        klen += 1
    if not _close(st, tt, img, inv, known, 0, &klen):
        return 0, None, 0, [0] * g
    if g == 0:
        if klen == s:
            return 1, [int(v) for v in img_arr], 0, []
        return 0, None, 0, []

    cand_lists = [list(cands[0])[first_lo:first_hi]] + [list(cc) for cc in cands[1:]]
    offs_arr = np.zeros(g + 1, dtype=np.int64)
    for a in range(g):
        offs_arr[a + 1] = offs_arr[a] + len(cand_lists[a])
    flat_arr = np.asarray(
        [cc for lst in cand_lists for cc in lst] or [0], dtype=np.intc
    )
    cdef long long[::1] offs = offs_arr
    cdef int[::1] flat = flat_arr
    gens_arr = np.asarray(list(gens), dtype=np.intc)
    cdef int[::1] gv = gens_arr

    visits_arr = np.zeros(g, dtype=np.int64)
    cdef long long[::1] visits = visits_arr
    frame_arr = np.zeros(g, dtype=np.intc)
    cdef int[::1] frame_start = frame_arr
    pos_arr = np.zeros(g, dtype=np.int64)
    cdef long long[::1] pos = pos_arr
    forced_arr = np.zeros(g, dtype=np.intc)
    cdef int[::1] forced_done = forced_arr

    cdef long long nodes = 0
    cdef long long budget_ll = budget
    cdef int k = 0
    cdef int gk, mark, advanced
    visits[0] = 1
    frame_start[0] = klen

    while True:
        gk = gv[k]
        advanced = 0
        if img[gk] != -1:
            if not forced_done[k]:
                forced_done[k] = 1
                nodes += 1
                if nodes > budget_ll:
                    return 2, None, int(nodes), [int(v) for v in visits_arr]
                advanced = 1
        else:
            while pos[k] < offs[k + 1] - offs[k]:
                c = flat[offs[k] + pos[k]]
                pos[k] += 1
                nodes += 1
                if nodes > budget_ll:
                    return 2, None, int(nodes), [int(v) for v in visits_arr]
                if inv[c] != -1:
                    continue
                mark = klen
                img[gk] = c
                inv[c] = gk
                known[klen] = gk
                klen += 1
                if _close(st, tt, img, inv, known, mark, &klen):
                    advanced = 1
                    break
                _undo(img, inv, known, mark, &klen)
        if advanced:
            k += 1
            if k == g:
                assert klen == s
                return 1, [int(v) for v in img_arr], int(nodes), [int(v) for v in visits_arr]
            visits[k] += 1
            frame_start[k] = klen
            pos[k] = 0
            forced_done[k] = 0
            continue
        if k == 0:
            return 0, None, int(nodes), [int(v) for v in visits_arr]
        k -= 1
        _undo(img, inv, known, frame_start[k], &klen)


def assoc_violation(table):
    cdef int[:, ::1] t = np.ascontiguousarray(table, dtype=np.intc)
    cdef int s = t.shape[0]
    cdef int a, b, c
    for a in range(s):
        for b in range(s):
            for c in range(s):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    return (<long long> a * s + b) * s + c
    return -1


cdef void _compose_rows(unsigned long long* out, unsigned long long* arow,
                        unsigned long long* brow, int n) noexcept:
    cdef int x, z
    cdef unsigned long long acc, r
    for x in range(n):
        acc = 0
        r = brow[x]
        z = 0
        while r:
            if r & 1:
                acc |= arow[z]
            r >>= 1
            z += 1
        out[x] = acc


cdef void _transpose_rows(unsigned long long* out, unsigned long long* rows, int n) noexcept:
    cdef int x, y
    for y in range(n):
        out[y] = 0
    for x in range(n):
        for y in range(n):
            if rows[x] >> y & 1:
                out[y] |= <unsigned long long> 1 << x


def rel_anti_sweep(n, arows, brows):
    cdef unsigned long long[:, ::1] av = np.ascontiguousarray(arows, dtype=np.uint64)
    cdef unsigned long long[:, ::1] bv = np.ascontiguousarray(brows, dtype=np.uint64)
    cdef int nn = n
    cdef Py_ssize_t count = av.shape[0]
    if nn > 32:
        raise ValueError("ground set too large for packed rows")
    cdef unsigned long long a[32]
    cdef unsigned long long b[32]
    cdef unsigned long long comp[32]
    cdef unsigned long long lhs[32]
    cdef unsigned long long ta[32]
    cdef unsigned long long tb[32]
    cdef unsigned long long rhs[32]
    cdef unsigned long long tta[32]
    cdef Py_ssize_t k
    cdef int x, ok
    for k in range(count):
        for x in range(nn):
            a[x] = av[k, x]
            b[x] = bv[k, x]
        _compose_rows(comp, a, b, nn)
        _transpose_rows(lhs, comp, nn)
        _transpose_rows(ta, a, nn)
        _transpose_rows(tb, b, nn)
        _compose_rows(rhs, tb, ta, nn)
        _transpose_rows(tta, ta, nn)
        ok = 1
        for x in range(nn):
            if lhs[x] != rhs[x] or tta[x] != a[x]:
                ok = 0
                break
        if not ok:
            return k
    return -1


def eta_mult_sweep(etable, eta_rows, n_points):
    cdef int[:, ::1] tv = np.ascontiguousarray(etable, dtype=np.intc)
    cdef unsigned long long[:, ::1] rows = np.ascontiguousarray(eta_rows, dtype=np.uint64)
    cdef int e = tv.shape[0]
    cdef int p = n_points
    cdef int i, j, x, z, ok
    cdef unsigned long long acc, r
    cdef int tgt
    for i in range(e):
        for j in range(e):
            tgt = tv[i, j]
            ok = 1
            for x in range(p):
                acc = 0
                r = rows[j, x]
                z = 0
                while r:
                    if r & 1:
                        acc |= rows[i, z]
                    r >>= 1
                    z += 1
                if acc != rows[tgt, x]:
                    ok = 0
                    break
            if not ok:
                return <long long> i * e + j
    return -1


def emonoid_table(m_table, alpha_of, x_of, n_points, m_size):
    cdef long long[:, ::1] mt = np.ascontiguousarray(m_table, dtype=np.int64)
    cdef long long[:, ::1] av = np.ascontiguousarray(alpha_of, dtype=np.int64)
    cdef long long[:, ::1] xv = np.ascontiguousarray(x_of, dtype=np.int64)
    cdef Py_ssize_t e = av.shape[0]
    cdef int n = av.shape[1]
    cdef long long x_shift = 1
    cdef int i
    for i in range(n):
        x_shift *= m_size
    out_arr = np.empty((e, e), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef Py_ssize_t a, b
    cdef int pnt
    cdef long long acode, xcode, bp
    for a in range(e):
        for b in range(e):
            acode = 0
            xcode = 0
            for pnt in range(n):
                bp = av[b, pnt]
                acode = acode * n_points + av[a, bp]
                xcode = xcode * m_size + mt[xv[b, pnt], xv[a, bp]]
            out[a, b] = acode * x_shift + xcode
    return out_arr
