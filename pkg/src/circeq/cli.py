"""Command-line entry point: ``circeq <command> ...``.

JSON goes to stdout and a one-line summary to stderr.  Exit status:
0 the claim holds or the pair is equivalent, 1 a counterexample was found
or the pair is inequivalent, 2 usage or internal error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from .families import adam_chain, verify_catalog, verify_family, weight6_no_adam_bridge
from .relations import RELATIONS, decide
from .report import INCONCLUSIVE, VERIFIED, VerificationReport, jsonable
from .residue import ResidueParseError, delta, parse, sda_check
from .search import CheckpointError, search_bipartite_adam
from .spectra import autocorrelation_spectrum, spectrum_fingerprint
from .verify import (
    verify_k3_spectral,
    verify_sda4_algebra,
    verify_sda5_algebra,
    verify_sda_claims,
    verify_section6_cases,
    verify_theorem1,
    verify_weight2_count,
)

EXIT_OK, EXIT_FOUND, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
VERIFY_TARGETS = ("theorem1", "weight2", "k3", "sda4", "sda5", "section6", "family", "catalog", "adam-chain", "all")
SDA5_DEFAULT_SAMPLE = 1000


class _Out:
    def __init__(self, quiet: bool) -> None:
        self.quiet = quiet

    def json(self, obj) -> None:
        sys.stdout.write(json.dumps(obj, sort_keys=True, default=jsonable) + "\n")
        sys.stdout.flush()

    def say(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stderr)


def _residue(text: str):
    try:
        return parse(text)
    except (ResidueParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _budget(args) -> int | None:
    return args.budget


def _report_status(status: str) -> int:
    return {VERIFIED: EXIT_OK, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(status, EXIT_FOUND)


def cmd_delta(args, out: _Out) -> int:
    D = delta(args.set)
    out.json({"set": args.set, "modulus": D.modulus, "delta": D.support()})
    out.say(f"delta({args.set}): {len(D.support())} distinct differences, total {D.total}")
    return EXIT_OK


def cmd_spectrum(args, out: _Out) -> int:
    sp = autocorrelation_spectrum(args.set)
    out.json({"set": args.set, "spectrum": sp, "fingerprint": spectrum_fingerprint(sp)})
    out.say(f"spectrum of AA^T for {args.set}: {len(sp.aggregated())} distinct eigenvalues")
    return EXIT_OK


def cmd_equiv(args, out: _Out) -> int:
    S, T = args.S, args.T
    if S.modulus != T.modulus:
        raise ValueError(f"modulus mismatch: {S.modulus} vs {T.modulus}")
    v = decide(args.relation, S, T, _budget(args))
    witness = v.witness
    if args.relation == "pq" and witness is not None:
        witness = {"P": witness[0], "Q": witness[1]}
    if args.relation == "spectral":
        witness = None
    out.json({"relation": args.relation, "S": S, "T": T, "status": v.status, "witness": witness, "nodes": v.nodes})
    out.say(f"{args.relation}: {S} vs {T}: {v.status}")
    if v.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if v.equivalent else EXIT_FOUND


def cmd_sda(args, out: _Out) -> int:
    found = sda_check(args.N, args.K)
    out.json({"n": args.N, "k": args.K, "violations": [v.to_json_obj() for v in found]})
    out.say(f"SDA({args.N},{args.K}): {'holds' if not found else f'{len(found)} violating class pair(s)'}")
    return EXIT_FOUND if found else EXIT_OK


def _verify_reports(target: str, args) -> list[VerificationReport]:
    budget = _budget(args)
    runners: dict[str, Callable[[], list[VerificationReport]]] = {
        "theorem1": lambda: [verify_theorem1(args.n_max or 24, budget=budget)],
        "weight2": lambda: [verify_weight2_count(args.n_max or 200)],
        "k3": lambda: [verify_k3_spectral(args.n or 90, long_running=args.long_running)],
        "sda4": lambda: [verify_sda4_algebra()],
        "sda5": lambda: [
            verify_sda5_algebra(budget=None) if args.long_running else verify_sda5_algebra(sample=args.sample or SDA5_DEFAULT_SAMPLE)
        ],
        "section6": lambda: [verify_section6_cases()],
        "family": lambda: [verify_family(k, args.n, budget=budget) for k in ([args.k] if args.k else range(6, 13))],
        "catalog": lambda: [verify_catalog(budget)],
        "adam-chain": lambda: [adam_chain(), weight6_no_adam_bridge(budget)],
    }
    if target == "all":
        reports = [verify_sda_claims()]
        for name in VERIFY_TARGETS[:-1]:
            reports.extend(runners[name]())
        return reports
    return runners[target]()


def cmd_verify(args, out: _Out) -> int:
    reports = _verify_reports(args.target, args)
    worst = EXIT_OK
    for r in reports:
        out.json(r.to_dict())
        out.say(f"{r.claim} {r.params}: {r.status} ({r.elapsed_ms / 1000:.2f} s)")
        code = _report_status(r.status)
        if code == EXIT_FOUND or (code == EXIT_INCONCLUSIVE and worst == EXIT_OK):
            worst = code
    return worst


def cmd_search(args, out: _Out) -> int:
    if args.n is None or args.k is None:
        raise ValueError("search needs --n and --k")
    path = args.resume
    resume = path is not None and os.path.exists(path)
    counts = {"pq": 0, "spectral_only": 0, "inconclusive": 0}
    for f in search_bipartite_adam(
        args.n,
        args.k,
        checkpoint_path=path,
        checkpoint_every=args.checkpoint_every,
        budget=_budget(args),
        resume=resume,
        stop_after=args.stop_after,
    ):
        counts[f.status] += 1
        sys.stdout.write(f.to_line() + "\n")
    sys.stdout.flush()
    out.say(f"bipartite-adam n={args.n} k={args.k}: {counts['pq']} pq, {counts['spectral_only']} spectral-only, {counts['inconclusive']} inconclusive")
    if counts["pq"] or counts["spectral_only"]:
        return EXIT_FOUND
    return EXIT_INCONCLUSIVE if counts["inconclusive"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--n-max", type=int, dest="n_max")
    common.add_argument("--budget", type=int, help="node budget per isomorphism call (default: $CIRCEQ_BUDGET or 10^7)")
    common.add_argument("--json", action="store_true", help="JSON only; suppress the stderr summary")
    common.add_argument("--long-running", action="store_true", help="allow k3 above n=200 and the full SDA(n,5) sweep")

    p = argparse.ArgumentParser(prog="circeq", description="Equivalence of 0-1 circulant matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("delta", parents=[common], help="difference multiset of a residue set")
    d.add_argument("set", type=_residue)
    d.set_defaults(func=cmd_delta)

    s = sub.add_parser("spectrum", parents=[common], help="exact spectrum of AA^T")
    s.add_argument("set", type=_residue)
    s.set_defaults(func=cmd_spectrum)

    e = sub.add_parser("equiv", parents=[common], help="decide one relation for a pair")
    e.add_argument("relation", choices=RELATIONS)
    e.add_argument("S", type=_residue)
    e.add_argument("T", type=_residue)
    e.set_defaults(func=cmd_equiv)

    a = sub.add_parser("sda", parents=[common], help="class pairs with equal differences but no affine map")
    a.add_argument("N", type=int)
    a.add_argument("K", type=int)
    a.set_defaults(func=cmd_sda)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--sample", type=int, help="number of random systems for the default sda5 run")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("search", parents=[common], help="checkpointed searches")
    r.add_argument("kind", choices=("bipartite-adam",))
    r.add_argument("--resume", metavar="FILE", help="checkpoint file; resumed from if it exists")
    r.add_argument("--checkpoint-every", type=float, default=60.0, metavar="SECONDS", dest="checkpoint_every")
    r.add_argument("--stop-after", type=int, metavar="CLASSES", dest="stop_after", help="stop after visiting this many classes")
    r.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except (CheckpointError, ValueError) as exc:
        print(f"circeq: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        print(f"circeq: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
