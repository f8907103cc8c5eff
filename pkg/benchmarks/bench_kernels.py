"""Compare the compiled kernels against the pure Python fallback.

Runs the hot paths on fixed workloads and prints one line per (task, backend)
with wall-clock times and the speedup ratio.  Results are asserted equal
between backends before timing is reported.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from dualembed._kernels import available_backends
from dualembed.embeddings import _signature_candidates, random_pair_corpus
from dualembed.freeacts import EndoMonoid, FiniteMonoid, eta_embedding
from dualembed.semigroups import named_monoid


def time_call(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def search_workload():
    """Arguments for every search in a small mixed corpus, prune on."""
    tasks = []
    for src, tgt in random_pair_corpus(40, seed=7):
        for dual in (False, True):
            eff = tgt.dual() if dual else tgt
            gens = list(src.greedy_generating_set())
            cand_map = _signature_candidates(src, eff, gens, True)
            gens.sort(key=lambda g: (len(cand_map[g]), g))
            cands = [cand_map[g] for g in gens]
            first = len(cands[0]) if gens else 0
            tasks.append(
                (src.np_table(), eff.np_table(), gens, cands, [], 0, first, 10**7)
            )
    return tasks


def bench_search(backend, tasks):
    def run():
        return [backend.search_embedding(*t) for t in tasks]

    return run


def deep_search_workload():
    """One complete exhaustion with a large backtracking tree: the rank <= 2
    maps on 3 points have no product-reversing embedding into Self(5)."""
    src = named_monoid("self_le2", 3)
    eff = named_monoid("full", 5).dual()
    gens = list(src.greedy_generating_set())
    cand_map = _signature_candidates(src, eff, gens, True)
    gens.sort(key=lambda g: (len(cand_map[g]), g))
    cands = [cand_map[g] for g in gens]
    first = len(cands[0]) if gens else 0
    return (src.np_table(), eff.np_table(), gens, cands, [], 0, first, 10**8)


def rel_workload():
    rng = np.random.default_rng(3)
    arows = rng.integers(0, 8, size=(200_000, 3), dtype=np.uint64)
    brows = rng.integers(0, 8, size=(200_000, 3), dtype=np.uint64)
    return arows, brows


def eta_workload():
    n_points = 2
    rel = FiniteMonoid(named_monoid("rel", n_points))
    em = EndoMonoid(rel, n_points, check=False)
    rows = np.zeros((em.size, n_points * (n_points + 1)), dtype=np.uint64)
    for i in range(em.size):
        r = eta_embedding(n_points, em.decode_pair(i))
        rows[i] = np.array(r.rows, dtype=np.uint64)
    return em.semigroup.np_table(), rows, n_points * (n_points + 1)


def emonoid_workload():
    n_points = 2
    rel = FiniteMonoid(named_monoid("rel", n_points))
    em = EndoMonoid(rel, n_points, check=False)
    m_table = np.asarray(rel.table, dtype=np.int64)
    return m_table, em._alpha_of, em._x_of, n_points, rel.size


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; timing the python backend alone")

    rows = []
    results = {}

    tasks = search_workload()
    for name, backend in backends.items():
        dt, out = time_call(bench_search(backend, tasks), args.repeat)
        results.setdefault("search", {})[name] = out
        rows.append(("search corpus (80 runs)", name, dt))

    deep = deep_search_workload()
    for name, backend in backends.items():
        dt, out = time_call(lambda b=backend: b.search_embedding(*deep), args.repeat)
        results.setdefault("deep", {})[name] = out
        rows.append(("exhaustive search (1.3e6 nodes)", name, dt))

    arows, brows = rel_workload()
    for name, backend in backends.items():
        dt, out = time_call(lambda b=backend: b.rel_anti_sweep(3, arows, brows), args.repeat)
        results.setdefault("rel", {})[name] = out
        rows.append(("transpose sweep (2e5 pairs)", name, dt))

    etable, erows, npts = eta_workload()
    for name, backend in backends.items():
        dt, out = time_call(lambda b=backend: b.eta_mult_sweep(etable, erows, npts), args.repeat)
        results.setdefault("eta", {})[name] = out
        rows.append(("relation encoding sweep (1024^2)", name, dt))

    m_table, alpha_of, x_of, npoints, msize = emonoid_workload()
    for name, backend in backends.items():
        dt, out = time_call(
            lambda b=backend: np.asarray(
                b.emonoid_table(m_table, alpha_of, x_of, npoints, msize)
            ),
            args.repeat,
        )
        results.setdefault("etable", {})[name] = out
        rows.append(("endomorphism table build (1024)", name, dt))

    if len(backends) == 2:
        same_search = all(
            a[:2] == b[:2]
            for a, b in zip(results["search"]["compiled"], results["search"]["python"])
        )
        assert same_search, "backends disagree on search results"
        assert results["deep"]["compiled"][:3] == results["deep"]["python"][:3]
        assert results["rel"]["compiled"] == results["rel"]["python"]
        assert results["eta"]["compiled"] == results["eta"]["python"]
        assert (results["etable"]["compiled"] == results["etable"]["python"]).all()
        print("backend agreement: ok")

    print(f"{'task':36} {'backend':10} {'best (s)':>10}")
    base = {}
    for task, name, dt in rows:
        print(f"{task:36} {name:10} {dt:10.4f}")
        base.setdefault(task, {})[name] = dt
    if len(backends) == 2:
        print()
        for task, times in base.items():
            ratio = times["python"] / times["compiled"]
            print(f"{task:36} speedup x{ratio:.1f}")


if __name__ == "__main__":
    main()
