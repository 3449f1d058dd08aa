"""Command-line front end: solve, verify, expand, bench.

Exit codes follow one contract everywhere: 0 = Hamiltonian / all checks
passed, 1 = non-Hamiltonian / checks failed, 2 = input error or aborted
run.  ``--json`` output is deterministic byte-for-byte for a fixed input
and configuration; wall-clock fields stay null unless ``--timings`` is
given, since their values cannot be reproducible.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import certify, expansion, formats
from .dual import build_dual
from .errors import HamdualError, ScriptEdgeInvalid
from .solver import ABORTED, HAMILTONIAN, SolverConfig, solve

THREADS_ENV = "HAMDUAL_THREADS"


def _fail(message):
    print(f"error: {message}", file=sys.stderr)
    return 2


def _dump_json(payload):
    return json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n"


def _load_embedding(path, fmt):
    data = Path(path).read_bytes()
    if fmt == "auto":
        fmt = "planar_code" if formats.sniff_format(data) == "planar_code" else "rotation"
    if fmt == "planar_code":
        return formats.parse_planar_code(data)
    return formats.parse_rotation_text(data.decode("utf-8"))


def _build(args):
    emb = _load_embedding(args.input, args.format)
    choice = "default" if args.root_face is None else args.root_face
    dual, tmap = build_dual(emb, outer_face_choice=choice)
    return emb, dual, tmap


def _stats_payload(stats, show_timings):
    return {
        "nodes": stats.nodes,
        "propagations": stats.propagations,
        "backtracks": stats.backtracks,
        "repairs": stats.repairs,
        "wall_time_ms": round(stats.wall_time_ms, 3) if show_timings else None,
        "budget_hit": stats.budget_hit,
    }


def _check_budgets(args):
    if getattr(args, "max_nodes", None) is not None and args.max_nodes < 0:
        return "--max-nodes must be nonnegative"
    if getattr(args, "max_seconds", None) is not None and args.max_seconds < 0:
        return "--max-seconds must be nonnegative"
    return None


def cmd_solve(args):
    bad = _check_budgets(args)
    if bad:
        return _fail(bad)
    try:
        emb, dual, tmap = _build(args)
    except (HamdualError, OSError, UnicodeDecodeError) as exc:
        return _fail(f"{args.input}: {exc}")

    config = SolverConfig(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    outcome = solve(emb, dual, tmap, config)
    cert = outcome.certificate
    cycle = list(cert.cycle) if cert and cert.cycle else None

    if args.dot:
        Path(args.dot).write_text(formats.serialize_dot(emb, cycle=cycle))
    if args.certificate and cert:
        Path(args.certificate).write_text(certify.certificate_to_json(cert, dual))

    if args.json:
        payload = {
            "input": args.input,
            "n": emb.n,
            "e": emb.edge_count,
            "f": emb.face_count,
            "root_face": dual.outer_vertex,
            "result": outcome.result,
            "cycle": [v + 1 for v in cycle] if cycle else None,
            "certificate": (
                json.loads(certify.certificate_to_json(cert, dual)) if cert else None
            ),
            "stats": _stats_payload(outcome.stats, args.timings),
            "abort_reason": outcome.abort_reason,
        }
        sys.stdout.write(_dump_json(payload))
    else:
        print(f"{args.input}: n={emb.n} e={emb.edge_count} f={emb.face_count} "
              f"root_face={dual.outer_vertex}")
        print(f"result: {outcome.result}")
        if cycle:
            print("cycle: " + " ".join(str(v + 1) for v in cycle))
            print(f"tree: root={cert.root} vertices={cert.sorted_vertices()} "
                  f"edges={[sorted(dual.endpoints(k)) for k in cert.sorted_edges()]}")
        s = outcome.stats
        print(f"stats: nodes={s.nodes} propagations={s.propagations} "
              f"backtracks={s.backtracks} repairs={s.repairs} "
              f"({s.wall_time_ms:.1f} ms)")
        if outcome.abort_reason:
            print(f"aborted: {outcome.abort_reason}")

    if outcome.result == ABORTED:
        return 2
    return 0 if outcome.result == HAMILTONIAN else 1


def cmd_verify(args):
    try:
        emb = _load_embedding(args.input, args.format)
        cert_text = Path(args.certificate).read_text()
    except (HamdualError, OSError, UnicodeDecodeError) as exc:
        return _fail(f"{exc}")

    try:
        payload = json.loads(cert_text)
        root = payload.get("root", 0)
        choice = args.root_face if args.root_face is not None else root
        dual, tmap = build_dual(emb, outer_face_choice=choice)
        cert = certify.certificate_from_json(cert_text, dual)
    except (HamdualError, ValueError, KeyError) as exc:
        return _fail(f"{args.certificate}: {exc}")

    try:
        violations = certify.check_certificate(cert, dual, tmap)
    except HamdualError as exc:
        return _fail(f"{args.certificate}: {exc}")
    ok = not violations
    cycle = None
    reconstruction_error = None
    if ok:
        try:
            cycle = certify.reconstruct_cycle(cert, dual, emb)
            ok = certify.verify_hamiltonian(cycle, emb)
            if not ok:
                reconstruction_error = "reconstructed cycle failed verification"
        except HamdualError as exc:
            ok = False
            reconstruction_error = str(exc)
    if ok and cert.cycle is not None:
        if certify.canonical_cycle(cert.cycle) != cycle:
            ok = False
            reconstruction_error = "embedded cycle differs from reconstruction"

    if args.json:
        sys.stdout.write(
            _dump_json(
                {
                    "input": args.input,
                    "certificate": args.certificate,
                    "valid": ok,
                    "violations": [str(v) for v in violations],
                    "reconstruction_error": reconstruction_error,
                    "cycle": [v + 1 for v in cycle] if cycle and ok else None,
                }
            )
        )
    else:
        for v in violations:
            print(str(v))
        if reconstruction_error:
            print(f"[reconstruction] {reconstruction_error}")
        if ok:
            print("certificate ok; cycle: " + " ".join(str(v + 1) for v in cycle))
    return 0 if ok else 1


def cmd_expand(args):
    try:
        emb, dual, tmap = _build(args)
    except (HamdualError, OSError, UnicodeDecodeError) as exc:
        return _fail(f"{args.input}: {exc}")

    script = None
    if args.script:
        try:
            script = [int(tok) for tok in args.script.replace(",", " ").split()]
        except ValueError:
            return _fail(f"bad --script value {args.script!r}")

    steps = []
    try:
        if args.policy == "fifo":
            final = expansion.run_expansion(emb, dual, policy="fifo")
        elif args.policy == "random":
            final = expansion.run_expansion(emb, dual, policy="random", seed=args.seed)
        else:
            final = expansion.run_expansion(
                emb, dual, policy="scripted", script=script
            )
    except ScriptEdgeInvalid as exc:
        return _fail(str(exc))

    trace, _ = expansion.replay_trace(emb, dual, final.chosen_dual_edges)
    replay = expansion.initial_cycle(emb, dual)
    for i, rec in enumerate(trace):
        k = rec["edge_id"]
        u, v = emb.edge_endpoints(k)
        steps.append(
            {
                "step": i,
                "edge": [u + 1, v + 1],
                "edge_id": k,
                "path": [x + 1 for x in rec["path"]],
                "removed_face": rec["removed_face"],
                "dual_edge": k,
            }
        )
        if args.dot:
            replay = expansion.expand(replay, k)
            frame = Path(f"{args.dot}_step{i:03d}.dot")
            frame.write_text(formats.serialize_dot(emb, cycle=list(replay.sigma)))
    sigma = [v + 1 for v in final.sigma]
    is_ham = certify.verify_hamiltonian(final.sigma, emb)

    if args.json:
        sys.stdout.write(
            _dump_json(
                {
                    "input": args.input,
                    "policy": args.policy,
                    "seed": args.seed,
                    "root_face": dual.outer_vertex,
                    "steps": steps,
                    "sigma": sigma,
                    "length": len(sigma),
                    "hamiltonian": is_ham,
                }
            )
        )
    else:
        for s in steps:
            print(f"step {s['step']}: edge {tuple(s['edge'])} path "
                  f"{s['path']} removed_face {s['removed_face']}")
        print(f"sigma ({len(sigma)} vertices): " + " ".join(map(str, sigma)))
        print(f"hamiltonian: {is_ham}")
    return 0


def _bench_instances(files, fmt):
    """(label, embedding-or-error) pairs; .pc files contribute every graph."""
    out = []
    for path in files:
        try:
            data = Path(path).read_bytes()
            kind = fmt
            if kind == "auto":
                kind = (
                    "planar_code"
                    if formats.sniff_format(data) == "planar_code"
                    else "rotation"
                )
            if kind == "planar_code":
                for i, emb in enumerate(formats.iter_planar_code(data)):
                    out.append((f"{path}#{i}", emb))
            else:
                out.append((str(path), formats.parse_rotation_text(data.decode())))
        except (HamdualError, OSError, UnicodeDecodeError) as exc:
            out.append((str(path), exc))
    return out


def _bench_one(label, emb, config):
    record = {"file": label, "n": None, "f": None, "result": "error",
              "nodes": None, "time_ms": None, "error": None}
    if isinstance(emb, Exception):
        record["error"] = str(emb)
        return record
    try:
        dual, tmap = build_dual(emb)
        outcome = solve(emb, dual, tmap, config)
        record.update(
            n=emb.n,
            f=emb.face_count,
            result=outcome.result,
            nodes=outcome.stats.nodes,
            time_ms=outcome.stats.wall_time_ms,
            error=None,
        )
    except HamdualError as exc:
        record["error"] = str(exc)
    return record


def cmd_bench(args):
    bad = _check_budgets(args)
    if bad:
        return _fail(bad)
    corpus = Path(args.corpus)
    expected = {}
    if corpus.is_dir():
        files = sorted(corpus.glob("*.rot")) + sorted(corpus.glob("*.pc"))
    elif corpus.suffix == ".json":
        try:
            manifest = json.loads(corpus.read_text())
        except (OSError, ValueError) as exc:
            return _fail(f"{corpus}: {exc}")
        files = [corpus.parent / item["file"] for item in manifest["instances"]]
        expected = {
            str(corpus.parent / item["file"]): item.get("hamiltonian")
            for item in manifest["instances"]
        }
    elif corpus.exists():
        files = [corpus]
    else:
        return _fail(f"{corpus}: no such file or directory")

    instances = _bench_instances(files, args.format)
    config = SolverConfig(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    workers = max(1, int(os.environ.get(THREADS_ENV, "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(
                pool.map(lambda it: _bench_one(it[0], it[1], config), instances)
            )
    else:
        records = [_bench_one(label, emb, config) for label, emb in instances]

    agree_num = agree_den = 0
    for rec in records:
        want = expected.get(rec["file"])
        if want is None or rec["error"]:
            rec["expected"] = want
            rec["agree"] = None
            continue
        got = rec["result"] == HAMILTONIAN
        rec["expected"] = want
        rec["agree"] = got == want
        agree_den += 1
        agree_num += rec["agree"]

    by_n = {}
    for rec in records:
        if rec["error"] is None:
            by_n.setdefault(rec["n"], []).append(rec["nodes"])
    curve = [
        {
            "n": n,
            "observed_mean_nodes": round(sum(v) / len(v), 2),
            "reference_2^(1+n/4)": round(2 ** (1 + n / 4), 2),
        }
        for n, v in sorted(by_n.items())
    ]

    if args.json:
        for rec in records:
            rec["time_ms"] = (
                round(rec["time_ms"], 3)
                if (args.timings and rec["time_ms"] is not None)
                else None
            )
        payload = {
            "instances": records,
            "summary": {
                "count": len(records),
                "errors": sum(1 for r in records if r["error"]),
                "agreement": f"{agree_num}/{agree_den}" if agree_den else None,
                "node_curve": curve,
            },
        }
        sys.stdout.write(_dump_json(payload))
    else:
        print(f"{'file':<40} {'n':>4} {'f':>4} {'result':<16} {'nodes':>8} {'ms':>9}")
        for rec in records:
            if rec["error"]:
                print(f"{rec['file']:<40} {'-':>4} {'-':>4} {'error':<16} "
                      f"{'-':>8} {'-':>9}  {rec['error']}")
            else:
                print(f"{rec['file']:<40} {rec['n']:>4} {rec['f']:>4} "
                      f"{rec['result']:<16} {rec['nodes']:>8} "
                      f"{rec['time_ms']:>9.2f}")
        if agree_den:
            print(f"agreement with manifest verdicts: {agree_num}/{agree_den}")
        if curve:
            print(f"{'n':>4} {'mean nodes':>12} {'2^(1+n/4)':>12}")
            for row in curve:
                print(f"{row['n']:>4} {row['observed_mean_nodes']:>12} "
                      f"{row['reference_2^(1+n/4)']:>12}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hamdual",
        description="Exact Hamiltonian-cycle decisions with certificates "
                    "for cubic planar graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="graph file (rotation text or planar_code)")
        p.add_argument("--format", choices=["auto", "rotation", "planar_code"],
                       default="auto")
        p.add_argument("--root-face", type=int, default=None,
                       help="face id to use as the outer face (default 0)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("solve", help="decide Hamiltonicity and emit a certificate")
    common(p)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock times in --json output")
    p.add_argument("--dot", default=None, help="write primal DOT (cycle marked)")
    p.add_argument("--certificate", default=None,
                   help="write the certificate JSON to this path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("input", help="graph file")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--format", choices=["auto", "rotation", "planar_code"],
                   default="auto")
    p.add_argument("--root-face", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", help="run the cycle-expansion process")
    common(p)
    p.add_argument("--policy", choices=["fifo", "random", "scripted"],
                   default="fifo")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--script", default=None,
                   help="comma/space-separated primal edge ids for --policy scripted")
    p.add_argument("--dot", default=None,
                   help="prefix for per-step DOT frames")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("bench", help="run the solver over a corpus")
    p.add_argument("corpus", help="directory of graph files, or a manifest JSON")
    p.add_argument("--format", choices=["auto", "rotation", "planar_code"],
                   default="auto")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
