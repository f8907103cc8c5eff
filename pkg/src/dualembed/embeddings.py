"""Semigroup embedding search, verification, and certificates.

A witness maps source element indices to target element indices.  With
dual=True the law is map(a*b) = map(b)*map(a) computed in the plain target;
searches handle this by searching into the transposed table, so there is a
single code path.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .maps import Endomap, compose_maps, inverse_image_map, kernel_and_range
from .semigroups import FiniteSemigroup, close_under_product, named_monoid

DEFAULT_SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class EmbeddingWitness:
    mode: str  # "semigroup" or "monoid"
    dual: bool
    mapping: tuple
    source_ref: str = ""
    target_ref: str = ""

    def __post_init__(self):
        if self.mode not in ("semigroup", "monoid"):
            raise ValueError("mode must be 'semigroup' or 'monoid'")
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))

    def to_json(self):
        return {
            "mode": self.mode,
            "dual": self.dual,
            "map": list(self.mapping),
            "source": self.source_ref,
            "target": self.target_ref,
        }

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or not {"mode", "dual", "map"} <= set(obj):
            raise ValueError("witness JSON needs keys mode, dual, map")
        return EmbeddingWitness(
            mode=obj["mode"],
            dual=bool(obj["dual"]),
            mapping=tuple(int(v) for v in obj["map"]),
            source_ref=str(obj.get("source", "")),
            target_ref=str(obj.get("target", "")),
        )


@dataclass(frozen=True)
class ExhaustionCertificate:
    """Record of a completed (or budget-stopped) exhaustive search."""

    complete: bool
    nodes: int
    pruned: int
    mode: str = "semigroup"
    dual: bool = True
    budget: int = 0
    source_ref: str = ""
    target_ref: str = ""

    def to_json(self):
        return {
            "complete": self.complete,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "mode": self.mode,
            "dual": self.dual,
            "budget": self.budget,
            "source": self.source_ref,
            "target": self.target_ref,
        }


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "witness" | "none" | "budget"
    witness: EmbeddingWitness | None = None
    certificate: ExhaustionCertificate | None = None

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.certificate is not None:
            out["exhaustion"] = self.certificate.to_json()
        return out


class FullMonoidHandle:
    """Self(m) addressed by element index, never materialized as a table.

    Indices are the lexicographic ranks of image tuples, the same coding as
    named_monoid("full", m); usable as a verification target of any size.
    """

    def __init__(self, points):
        if points < 1:
            raise ValueError("need at least one point")
        self.points = points
        self.size = points**points
        self.identity = Endomap.identity(points).encode()
        self.name = f"full:{points}"

    def decode(self, i):
        return Endomap.from_index(self.points, i)

    def product(self, a, b):
        return compose_maps(self.decode(b), self.decode(a)).encode()


def _ref(sg):
    return getattr(sg, "name", None) or f"semigroup({getattr(sg, 'size', '?')})"


def verify_embedding(source, target, witness, max_violations=5):
    """Check a witness against the product law, injectivity, and (in monoid
    mode) identity preservation.  Returns a dict report; report["ok"] is the
    verdict.  The target only needs .size, .product(a, b) and .identity."""
    m = witness.mapping
    violations = []
    if len(m) != source.size:
        violations.append({"kind": "length", "got": len(m), "want": source.size})
    else:
        if any(not (0 <= v < target.size) for v in m):
            violations.append({"kind": "range"})
        if len(set(m)) != len(m):
            violations.append({"kind": "injectivity"})
        if witness.mode == "monoid":
            if source.identity is None or target.identity is None:
                violations.append({"kind": "identity-missing"})
            elif m[source.identity] != target.identity:
                violations.append({"kind": "identity-image"})
        if not violations:
            for a in range(source.size):
                row = source.table[a]
                for b in range(source.size):
                    if witness.dual:
                        want = target.product(m[b], m[a])
                    else:
                        want = target.product(m[a], m[b])
                    if m[row[b]] != want:
                        violations.append({"kind": "law", "a": a, "b": b})
                        if len(violations) >= max_violations:
                            break
                if len(violations) >= max_violations:
                    break
    return {
        "ok": not violations,
        "violations": violations,
        "pairs": source.size**2,
        "mode": witness.mode,
        "dual": witness.dual,
    }


def _signature_candidates(source, effective_target, gens, prune):
    if not prune:
        return {g: list(range(effective_target.size)) for g in gens}
    s_sigs = source.element_signatures()
    t_sigs = effective_target.element_signatures()
    by_sig = {}
    for c, sig in enumerate(t_sigs):
        by_sig.setdefault((sig.index, sig.period), []).append(c)
    return {g: list(by_sig.get((s_sigs[g].index, s_sigs[g].period), [])) for g in gens}


def _search_worker(args):
    s_table, t_table, gens, cand_lists, pre, lo, hi, budget = args
    return _kernels.search_embedding(
        np.asarray(s_table, dtype=np.int32),
        np.asarray(t_table, dtype=np.int32),
        gens,
        cand_lists,
        pre,
        lo,
        hi,
        budget,
    )


def search_embedding(
    source,
    target,
    mode="semigroup",
    dual=True,
    prune=True,
    budget=DEFAULT_SEARCH_BUDGET,
    jobs=1,
    deterministic=True,
):
    """Backtracking search for an embedding of source into target (or its
    dual).  Returns a SearchOutcome: a verified-ready witness, a completed
    exhaustion certificate, or a budget stop.

    The witness found with deterministic=True is the least one in the fixed
    search order (generators sorted most-constrained-first, candidate target
    indices ascending); this is independent of the jobs count.
    """
    if not isinstance(source, FiniteSemigroup) or not isinstance(target, FiniteSemigroup):
        raise ValueError("search needs dense Cayley-table semigroups")
    eff = target.dual() if dual else target
    if mode == "monoid":
        if source.identity is None or eff.identity is None:
            raise ValueError("monoid mode needs identities on both sides")
        pre = [(source.identity, eff.identity)]
        gens = list(source.greedy_generating_set(monoid=True))
    elif mode == "semigroup":
        pre = []
        gens = list(source.greedy_generating_set())
    else:
        raise ValueError("mode must be 'semigroup' or 'monoid'")

    cand_map = _signature_candidates(source, eff, gens, prune)
    gens.sort(key=lambda g: (len(cand_map[g]), g))
    cand_lists = [cand_map[g] for g in gens]

    st = source.np_table()
    tt = eff.np_table()

    def finish(status, mapping, nodes, visits_list):
        if status == 1:
            w = EmbeddingWitness(
                mode=mode,
                dual=dual,
                mapping=mapping,
                source_ref=_ref(source),
                target_ref=_ref(target),
            )
            return SearchOutcome("witness", witness=w)
        pruned = 0
        if gens:
            pruned += eff.size - len(cand_lists[0])
            for k in range(1, len(gens)):
                pruned += visits_list[k] * (eff.size - len(cand_lists[k]))
        cert = ExhaustionCertificate(
            complete=(status == 0),
            nodes=nodes,
            pruned=pruned,
            mode=mode,
            dual=dual,
            budget=budget,
            source_ref=_ref(source),
            target_ref=_ref(target),
        )
        return SearchOutcome("none" if status == 0 else "budget", certificate=cert)

    n_first = len(cand_lists[0]) if gens else 0
    if jobs <= 1 or n_first <= 1:
        status, mapping, nodes, visits = _kernels.search_embedding(
            st, tt, gens, cand_lists, pre, 0, n_first, budget
        )
        return finish(status, mapping, nodes, visits)

    jobs = min(jobs, n_first)
    bounds = [(n_first * i) // jobs for i in range(jobs + 1)]
    tasks = [
        (source.table, eff.table, gens, cand_lists, pre, bounds[i], bounds[i + 1], budget)
        for i in range(jobs)
    ]
    results = [None] * jobs
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        if deterministic:
            for i, res in enumerate(pool.map(_search_worker, tasks)):
                results[i] = res
        else:
            futs = {pool.submit(_search_worker, t): i for i, t in enumerate(tasks)}
            for fut in concurrent.futures.as_completed(futs):
                i = futs[fut]
                results[i] = fut.result()
                if results[i][0] == 1:
                    for other in futs:
                        other.cancel()
                    break
    done = [r for r in results if r is not None]
    for r in results:
        if r is not None and r[0] == 1:
            return finish(1, r[1], r[2], r[3])
    nodes = sum(r[2] for r in done)
    visits = [0] * len(gens)
    for r in done:
        for k, v in enumerate(r[3]):
            visits[k] += v
    status = 2 if any(r[0] == 2 for r in done) else 0
    return finish(status, None, nodes, visits)


def canonical_powerset_witness(n):
    """The inverse-image embedding of Self(n) into the dual of Self(2^n):
    each map goes to the preimage map on subset bitmasks.  Returns
    (source, target_handle, witness); n <= 4."""
    if not (1 <= n <= 4):
        raise ValueError("supported for 1 <= n <= 4")
    source = named_monoid("full", n)
    target = FullMonoidHandle(1 << n)
    mapping = tuple(inverse_image_map(f).encode() for f in source.element_data)
    witness = EmbeddingWitness(
        mode="monoid",
        dual=True,
        mapping=mapping,
        source_ref=source.name,
        target_ref=target.name,
    )
    return source, target, witness


def restrict_witness_to_rank_le2(n, witness):
    """Restrict a witness on all of Self(n) to the rank <= 2 elements,
    re-indexed over the self_le2 family (semigroup mode)."""
    sub = named_monoid("self_le2", n)
    full = named_monoid("full", n)
    if len(witness.mapping) != full.size:
        raise ValueError("witness is not over all of Self(n)")
    mapping = tuple(witness.mapping[f.encode()] for f in sub.element_data)
    return sub, EmbeddingWitness(
        mode="semigroup",
        dual=witness.dual,
        mapping=mapping,
        source_ref=sub.name,
        target_ref=witness.target_ref,
    )


@dataclass(frozen=True)
class MuCertificate:
    """Certificate for the counting argument behind the 2^n threshold.

    mu maps each kernel class of the rank <= 2 maps to the common range of
    the witness images of that class; the checks record the chain from
    well-definedness to the final cardinality bound."""

    n: int
    gamma_size: int
    mu_one_size: int
    bound: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "n": self.n,
            "gamma_size": self.gamma_size,
            "mu_one_size": self.mu_one_size,
            "bound": self.bound,
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def mu_certificate(source, target, witness):
    """Build the certificate for a dual embedding of the rank <= 2 maps on n
    points into endomaps of a gamma_size-point set.

    source must be the self_le2 family (element data present); target is a
    FullMonoidHandle or a dense full transformation monoid with element data.
    """
    if not witness.dual:
        raise ValueError("the certificate is about dual embeddings")
    data = source.element_data
    if not data or any(not isinstance(f, Endomap) or f.rank() > 2 for f in data):
        raise ValueError("source must carry rank <= 2 endomap element data")
    n = data[0].n
    want = {f.images for f in named_monoid("self_le2", n).element_data}
    if {f.images for f in data} != want:
        raise ValueError("source must be the full rank <= 2 family")

    if isinstance(target, FullMonoidHandle):
        gamma = target.points
        decode = target.decode
    else:
        if target.element_data is None:
            raise ValueError("dense target needs endomap element data")
        gamma = target.element_data[0].n
        decode = lambda i: target.element_data[i]

    checks = {}
    checks["witness_verifies"] = verify_embedding(source, target, witness)["ok"]

    # mu: kernel class -> common range of the dual images
    per_class = {}
    for i, f in enumerate(data):
        ker, _ = kernel_and_range(f)
        rng = frozenset(decode(witness.mapping[i]).range_set())
        per_class.setdefault(ker, []).append(rng)
    checks["well_defined"] = all(len(set(v)) == 1 for v in per_class.values())
    mu = {ker: v[0] for ker, v in per_class.items()}

    classes = list(mu)
    # element-level form: finer kernel means larger image range
    checks["kernel_range_reversal"] = all(
        mu[b] <= mu[a] for a in classes for b in classes if a.refines(b)
    )
    checks["antitone"] = all(
        a.refines(b) == (mu[b] <= mu[a]) for a in classes for b in classes
    )
    coarse = None
    for ker in classes:
        if ker.n_blocks() == 1:
            coarse = ker
    if coarse is None:
        raise ValueError("no constant maps in the source family")
    two_blocks = [k for k in classes if k.n_blocks() == 2]
    mu_one = mu[coarse]
    checks["meet_law"] = all(
        mu[a] & mu[b] == mu_one
        for i, a in enumerate(two_blocks)
        for b in two_blocks[i + 1 :]
    )
    checks["core_min_size"] = len(mu_one) >= 2
    margin_ok = True
    for i, f in enumerate(data):
        if f.rank() == 2 and f.is_idempotent():
            rng = frozenset(decode(witness.mapping[i]).range_set())
            if len(rng - mu_one) < 2:
                margin_ok = False
                break
    checks["idempotent_margin"] = margin_ok

    bound = len(mu_one) + 2 * ((1 << (n - 1)) - 1)
    union = set(mu_one)
    for k in two_blocks:
        union |= mu[k]
    checks["count_bound"] = len(union) >= bound and gamma >= len(union)

    return MuCertificate(
        n=n,
        gamma_size=gamma,
        mu_one_size=len(mu_one),
        bound=bound,
        checks=checks,
    )


def selfmap_dual_threshold(n, gamma_max, budget=DEFAULT_SEARCH_BUDGET, jobs=1):
    """For each m <= gamma_max, search for embeddings into the dual of
    Self(m): the rank <= 2 maps in semigroup mode and all of Self(n) in
    monoid mode.  Reports the minimal m for each mode and whether both equal
    2^n."""
    if n < 1 or gamma_max < 1:
        raise ValueError("need positive n and gamma_max")
    sub = named_monoid("self_le2", n)
    full = named_monoid("full", n)
    rows = []
    minima = {"semigroup": None, "monoid": None}
    for m in range(1, gamma_max + 1):
        target = named_monoid("full", m)
        row = {"m": m}
        for mode, source in (("semigroup", sub), ("monoid", full)):
            if mode == "monoid" and target.identity is None:
                row[mode] = {"status": "none"}
                continue
            out = search_embedding(
                source, target, mode=mode, dual=True, budget=budget, jobs=jobs
            )
            entry = {"status": out.status}
            if out.witness is not None:
                rep = verify_embedding(source, target, out.witness)
                entry["witness"] = out.witness.to_json()
                entry["verified"] = rep["ok"]
                if minima[mode] is None:
                    minima[mode] = m
            if out.certificate is not None:
                entry["exhaustion"] = out.certificate.to_json()
            row[mode] = entry
        rows.append(row)
    expected = 1 << n
    complete = all(
        row[mode]["status"] != "budget" for row in rows for mode in ("semigroup", "monoid")
    )
    return {
        "n": n,
        "gamma_max": gamma_max,
        "rows": rows,
        "min_semigroup": minima["semigroup"],
        "min_monoid": minima["monoid"],
        "expected": expected,
        "complete": complete,
        "ok": minima["semigroup"] == expected and minima["monoid"] == expected,
    }


def random_closed_semigroup(rng, max_points, size_cap, max_gens=3):
    """A random transformation semigroup: close random endomaps on a random
    ground set, retrying until the closure fits the cap."""
    while True:
        pts = int(rng.integers(2, max_points + 1))
        k = int(rng.integers(1, max_gens + 1))
        gens = []
        for _ in range(k):
            images = tuple(int(v) for v in rng.integers(0, pts, pts))
            g = Endomap(pts, images)
            if g not in gens:
                gens.append(g)
        try:
            return close_under_product(
                gens,
                lambda a, b: compose_maps(b, a),
                budget=size_cap,
                name=f"rand{pts}",
            )
        except ValueError:
            continue


def random_pair_corpus(count, seed, src_cap=6, tgt_cap=12):
    """Deterministic corpus of (source, target) pairs for search exercises."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        s = random_closed_semigroup(rng, max_points=3, size_cap=src_cap)
        t = random_closed_semigroup(rng, max_points=4, size_cap=tgt_cap)
        out.append((s, t))
    return out
