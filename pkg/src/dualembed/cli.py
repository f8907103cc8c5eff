"""Command-line driver.

Every run emits one JSON artifact of the shape {"config": ..., "result": ...}
(to --output, else stdout); when --output is given, a short human-readable
rendering of the same JSON goes to stdout.  Exit codes: 0 the claim is
established (verified witness, completed exhaustion, or all checks pass),
1 the claim is refuted with a witness in the artifact, 2 inconclusive
(budget or work cap), 64 usage error, 65 malformed data, 66 missing or
unreadable file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .embeddings import (
    DEFAULT_SEARCH_BUDGET,
    EmbeddingWitness,
    FullMonoidHandle,
    canonical_powerset_witness,
    mu_certificate,
    restrict_witness_to_rank_le2,
    search_embedding,
    selfmap_dual_threshold,
    verify_embedding,
)
from .errors import BudgetError
from .freeacts import FiniteMonoid, classify_sweep
from .indep import (
    FreeActHandle,
    VectorSpaceHandle,
    independence_report,
    matroid_check,
)
from .linal import (
    all_subspaces,
    dual_dimension_check,
    phi_from_functionals,
    projection_pair,
    random_subspace,
    span_embedding,
)
from .semigroups import NAMED_KINDS, FiniteSemigroup, named_monoid

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 66


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    deterministic: bool = True
    jobs: int = 1
    output: str | None = None

    def to_json(self):
        return {
            "command": self.command,
            "params": dict(self.params),
            "seed": self.seed,
            "deterministic": self.deterministic,
            "jobs": self.jobs,
            "output": self.output,
        }


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as ex:
        raise _DataError(f"{path}:{ex.lineno}:{ex.colno}: {ex.msg}") from ex


def _unwrap(obj):
    """Accept either a bare payload or a previously emitted artifact."""
    if isinstance(obj, dict) and "config" in obj and "result" in obj:
        return obj["result"]
    return obj


def _resolve_semigroup(ref):
    """A semigroup from 'kind:n' shorthand, 'fullv:m' (virtual full monoid on
    m points, products computed on demand), or a JSON file path."""
    if ":" in ref and not ref.endswith(".json"):
        kind, _, num = ref.partition(":")
        try:
            n = int(num)
        except ValueError as ex:
            raise _DataError(f"bad size in '{ref}'") from ex
        if kind == "fullv":
            return FullMonoidHandle(n)
        if kind not in NAMED_KINDS:
            raise _DataError(f"unknown kind '{kind}' (use one of {NAMED_KINDS} or fullv)")
        return named_monoid(kind, n)
    obj = _unwrap(_load_json(ref))
    try:
        return FiniteSemigroup.from_json(obj)
    except ValueError as ex:
        raise _DataError(f"{ref}: {ex}") from ex


def _resolve_instance(ref):
    """An algebra handle from shorthand ('vspace:p:n' or 'mact:kind:n:omega')
    or a descriptor file {'kind': 'vspace'|'mact', ...}."""
    if ":" in ref and not ref.endswith(".json"):
        parts = ref.split(":")
        if parts[0] == "vspace" and len(parts) == 3:
            return VectorSpaceHandle(int(parts[1]), int(parts[2]))
        if parts[0] == "mact" and len(parts) == 4:
            sg = named_monoid(parts[1], int(parts[2]))
            return FreeActHandle(FiniteMonoid(sg), int(parts[3]))
        raise _DataError(f"bad instance shorthand '{ref}'")
    obj = _unwrap(_load_json(ref))
    if not isinstance(obj, dict) or "kind" not in obj:
        raise _DataError(f"{ref}: instance descriptor needs a 'kind' field")
    if obj["kind"] == "vspace":
        return VectorSpaceHandle(int(obj["p"]), int(obj["n"]))
    if obj["kind"] == "mact":
        m = obj["monoid"]
        if isinstance(m, str):
            kind, _, num = m.partition(":")
            sg = named_monoid(kind, int(num))
        else:
            sg = FiniteSemigroup.from_json(m)
        return FreeActHandle(FiniteMonoid(sg), int(obj["omega"]))
    raise _DataError(f"{ref}: unknown instance kind '{obj['kind']}'")


def _emit(config, result, render_lines):
    artifact = {"config": config.to_json(), "result": result}
    text = json.dumps(artifact, indent=2, sort_keys=True)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        for line in render_lines:
            print(line)
    else:
        print(text)


def _cmd_build(args, config):
    sg = named_monoid(args.kind, args.n)
    result = sg.to_json()
    return EXIT_OK, result, [f"{sg.name}: {sg.size} elements, identity {sg.identity}"]


def _cmd_embed_search(args, config):
    source = _resolve_semigroup(args.source)
    target = _resolve_semigroup(args.target)
    out = search_embedding(
        source,
        target,
        mode=args.mode,
        dual=not args.direct,
        prune=not args.no_prune,
        budget=args.budget,
        jobs=args.jobs,
        deterministic=not args.nondeterministic,
    )
    result = out.to_json()
    lines = []
    code = EXIT_OK
    if out.status == "witness":
        rep = verify_embedding(source, target, out.witness)
        result["verified"] = rep["ok"]
        if not rep["ok"]:
            raise AssertionError(f"search produced an invalid witness: {rep['violations']}")
        lines.append(f"witness found and verified: {out.witness.mapping}")
    elif out.status == "none":
        lines.append(
            f"no embedding exists (complete search, {out.certificate.nodes} nodes)"
        )
    else:
        code = EXIT_INCONCLUSIVE
        lines.append(f"budget exhausted after {out.certificate.nodes} nodes")
    return code, result, lines


def _cmd_verify(args, config):
    source = _resolve_semigroup(args.source)
    target = _resolve_semigroup(args.target)
    wobj = _unwrap(_load_json(args.witness))
    if isinstance(wobj, dict) and "witness" in wobj:
        wobj = wobj["witness"]
    try:
        witness = EmbeddingWitness.from_json(wobj)
    except ValueError as ex:
        raise _DataError(f"{args.witness}: {ex}") from ex
    if args.dual:
        witness = EmbeddingWitness(
            mode=witness.mode, dual=True, mapping=witness.mapping,
            source_ref=witness.source_ref, target_ref=witness.target_ref,
        )
    if args.mode:
        witness = EmbeddingWitness(
            mode=args.mode, dual=witness.dual, mapping=witness.mapping,
            source_ref=witness.source_ref, target_ref=witness.target_ref,
        )
    rep = verify_embedding(source, target, witness)
    code = EXIT_OK if rep["ok"] else EXIT_REFUTED
    line = "witness verifies" if rep["ok"] else f"witness fails: {rep['violations'][:3]}"
    return code, rep, [line]


def _cmd_mu_cert(args, config):
    if not (1 <= args.n <= 3):
        raise _DataError("mu-cert supports n in 1..3")
    source, target, witness = canonical_powerset_witness(args.n)
    rep = verify_embedding(source, target, witness)
    sub, restricted = restrict_witness_to_rank_le2(args.n, witness)
    cert = mu_certificate(sub, target, restricted)
    result = {
        "witness": witness.to_json(),
        "witness_verified": rep["ok"],
        "certificate": cert.to_json(),
    }
    ok = rep["ok"] and cert.ok
    lines = [
        f"n={args.n}: bound {cert.bound} vs target size {cert.gamma_size}, "
        + ("all checks pass" if ok else "FAILED"),
    ]
    return (EXIT_OK if ok else EXIT_REFUTED), result, lines


def _cmd_threshold(args, config):
    result = selfmap_dual_threshold(
        args.n, args.gamma_max, budget=args.budget, jobs=args.jobs
    )
    lines = []
    for row in result["rows"]:
        cells = []
        for mode in ("semigroup", "monoid"):
            st = row[mode]["status"]
            cells.append(f"{mode} {'witness' if st == 'witness' else st}")
        lines.append(f"m={row['m']}: " + ", ".join(cells))
    lines.append(
        f"minimum m: semigroup {result['min_semigroup']}, monoid {result['min_monoid']}"
        f" (expected {result['expected']})"
    )
    if not result["complete"]:
        return EXIT_INCONCLUSIVE, result, lines
    return (EXIT_OK if result["ok"] else EXIT_REFUTED), result, lines


def _cmd_classify_acts(args, config):
    rows = classify_sweep(args.max_order, args.omega)
    ok = all(r["ok"] for r in rows)
    lines = [
        f"{r['name']}: sc_ranked direct={r['sc_ranked']['direct']} "
        f"criterion={r['sc_ranked']['criterion']}, matroid direct={r['matroid']['direct']} "
        f"criterion={r['matroid']['criterion']}"
        + ("" if r["ok"] else "  [DISAGREE]")
        for r in rows
    ]
    lines.append(f"{len(rows)} monoids, {'all agree' if ok else 'DISAGREEMENT'}")
    return (EXIT_OK if ok else EXIT_REFUTED), {"rows": rows, "ok": ok}, lines


def _cmd_indep(args, config):
    handle = _resolve_instance(args.instance)
    try:
        subset = [int(v) for v in args.subset.split(",")] if args.subset else []
    except ValueError as ex:
        raise _DataError(f"bad subset '{args.subset}'") from ex
    if any(not (0 <= x < handle.size) for x in subset):
        raise _DataError(f"subset element out of range for carrier of {handle.size}")
    rep = independence_report(handle, subset)
    result = {"instance": handle.describe(), "report": rep}
    code = EXIT_INCONCLUSIVE if rep["skipped"] else EXIT_OK
    lines = [
        f"subset {rep['subset']}: c={rep['c_independent']} s={rep['s_independent']} "
        f"m={rep['m_independent']} non_degenerate={rep['non_degenerate']}"
        + (f" (skipped: {rep['skipped']})" if rep["skipped"] else "")
    ]
    return code, result, lines


def _cmd_matroid(args, config):
    handle = _resolve_instance(args.instance)
    strong = None
    if args.strong:
        strong = True
    elif args.no_strong:
        strong = False
    rep = matroid_check(handle, strong=strong)
    result = {"instance": handle.describe(), "report": rep}
    lines = [
        f"matroid={rep['matroid']} (conditions agree: {rep['agree']}, "
        f"strong checked: {rep['strong_checked']})"
    ]
    return (EXIT_OK if rep["agree"] else EXIT_REFUTED), result, lines


def _cmd_linal_checks(args, config):
    import numpy as np

    p, n = args.p, args.n
    basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    span_rep = span_embedding(p, n, basis)
    phi_rep = phi_from_functionals(p, n, basis)
    rng = np.random.default_rng(args.seed)
    proj_ok = True
    proj_fail = None
    for t in range(args.trials):
        x = random_subspace(rng, p, n)
        y = random_subspace(rng, p, n)
        _, _, _, rep = projection_pair(x, y)
        if not rep["ok"]:
            proj_ok = False
            proj_fail = {"trial": t, "x": [list(r) for r in x.rows], "y": [list(r) for r in y.rows]}
            break
    result = {
        "p": p,
        "n": n,
        "dual": dual_dimension_check(p, n),
        "span_embedding_ok": span_rep["ok"],
        "span_checks": span_rep["checks"],
        "functional_embedding_ok": phi_rep["ok"],
        "functional_checks": phi_rep["checks"],
        "projection_trials": args.trials,
        "projection_ok": proj_ok,
    }
    if p**n <= 256:
        result["subspace_count"] = len(all_subspaces(p, n))
    if proj_fail:
        result["projection_failure"] = proj_fail
    ok = (
        result["dual"]["ok"]
        and span_rep["ok"]
        and phi_rep["ok"]
        and proj_ok
    )
    lines = [
        f"F_{p}^{n}: dual dim check {result['dual']['ok']}, span laws {span_rep['ok']}, "
        f"functional laws {phi_rep['ok']}, {args.trials} projection trials ok={proj_ok}"
    ]
    return (EXIT_OK if ok else EXIT_REFUTED), result, lines


def build_parser():
    parser = _Parser(prog="dualembed", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a named transformation monoid as JSON")
    p.add_argument("--kind", required=True, choices=NAMED_KINDS)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("embed-search", help="search for a (dual) embedding")
    p.add_argument("--source", required=True, help="JSON file or kind:n shorthand")
    p.add_argument("--target", required=True, help="JSON file or kind:n shorthand")
    p.add_argument("--mode", choices=["semigroup", "monoid"], default="semigroup")
    p.add_argument("--direct", action="store_true", help="target as-is, not its dual")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--nondeterministic", action="store_true")

    p = sub.add_parser("verify", help="check a witness file against the law")
    p.add_argument("--witness", required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--dual", action="store_true", help="force the order-reversing law")
    p.add_argument("--mode", choices=["semigroup", "monoid"])

    p = sub.add_parser("mu-cert", help="canonical witness + counting certificate")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("threshold", help="minimal dual-target size sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma-max", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)

    p = sub.add_parser("classify-acts", help="free-act classification sweep")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--omega", type=int, default=2)

    p = sub.add_parser("indep", help="independence report for a subset")
    p.add_argument("--instance", required=True, help="descriptor file or vspace:p:n / mact:kind:n:omega")
    p.add_argument("--subset", default="", help="comma-separated carrier indices")

    p = sub.add_parser("matroid", help="exchange-condition report")
    p.add_argument("--instance", required=True)
    p.add_argument("--strong", action="store_true")
    p.add_argument("--no-strong", action="store_true")

    p = sub.add_parser("linal-checks", help="prime-field construction checks")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)

    for name, sp in sub.choices.items():
        sp.add_argument("--output", "-o", default=None)
        sp.add_argument("--seed", type=int, default=0)
        if name in ("embed-search", "threshold", "classify-acts"):
            sp.add_argument("--jobs", type=int, default=1)
    return parser


_HANDLERS = {
    "build": _cmd_build,
    "embed-search": _cmd_embed_search,
    "verify": _cmd_verify,
    "mu-cert": _cmd_mu_cert,
    "threshold": _cmd_threshold,
    "classify-acts": _cmd_classify_acts,
    "indep": _cmd_indep,
    "matroid": _cmd_matroid,
    "linal-checks": _cmd_linal_checks,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as ex:
        print(f"usage error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "output", "seed", "jobs") and v is not None
    }
    config = RunConfig(
        command=args.command,
        params=params,
        seed=getattr(args, "seed", 0),
        deterministic=not getattr(args, "nondeterministic", False),
        jobs=getattr(args, "jobs", 1),
        output=args.output,
    )
    try:
        code, result, lines = _HANDLERS[args.command](args, config)
    except _UsageError as ex:
        print(f"usage error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as ex:
        print(f"data error: {ex}", file=sys.stderr)
        return EXIT_DATA
    except BudgetError as ex:
        _emit(config, {"error": str(ex), "status": "budget"}, [f"budget: {ex}"])
        return EXIT_INCONCLUSIVE
    except ValueError as ex:
        print(f"data error: {ex}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as ex:
        print(f"io error: {ex}", file=sys.stderr)
        return EXIT_IO
    except OSError as ex:
        print(f"io error: {ex}", file=sys.stderr)
        return EXIT_IO
    _emit(config, result, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
