"""Command-line interface.

Every subcommand prints a human-readable report by default or stable
``key=value`` lines with ``--format machine``.  Exit status is 0 when the
computation completed (including verification failures, which are results),
1 for domain or input errors, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from .abgroups import PRESETS, abelianize_presentation, preset_presentation
from .endoclass import canonical_sign, classify_endomorphism, random_unimodular
from .errors import ExotoriError
from .mcg import (
    ConnectedSum,
    NotConnectedSum,
    mcg_structure,
    omega,
    splitting_decision,
    torelli_invariant_group,
)
from .spheres import (
    TABLE_MAX_DIM,
    bp_order,
    reduction_case,
    supported_dimensions,
    theta_record,
)
from .steinberg import (
    build_counterexample_rep,
    closure_order,
    conjugated_candidate,
    generator_orders,
    identity_candidate,
    inverse_transpose_candidate,
    load_candidate,
    verify_hom,
)


class Report:
    """Ordered ``key=value`` pairs plus the human rendering of the same data."""

    def __init__(self):
        self.pairs = []
        self.lines = []

    def add(self, key, value):
        if isinstance(value, bool):
            value = str(value).lower()
        self.pairs.append((key, str(value)))

    def say(self, line):
        self.lines.append(line)

    def emit(self, fmt: str, out):
        if fmt == "machine":
            for k, v in self.pairs:
                print(f"{k}={v}", file=out)
        else:
            for line in self.lines:
                print(line, file=out)


def _coords(text: str, rank: int) -> tuple:
    """Parse ``"1,1,0"``; ``"0"`` is accepted for the trivial group."""
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    coords = tuple(int(p) for p in parts)
    if rank == 0 and all(c == 0 for c in coords):
        return ()
    return coords


def cmd_spheres_table(args, rep: Report):
    lo, hi = args.from_dim, args.to_dim
    if lo < 1 or hi > TABLE_MAX_DIM or lo > hi:
        raise ExotoriError(f"range must lie within 1..{TABLE_MAX_DIM}")
    dims = [d for d in supported_dimensions() if lo <= d <= hi]
    width = len(f"Theta_{hi}^split")
    for d in dims:
        rec = theta_record(d)
        rep.add(f"theta_{d}", rec.render_theta())
        rep.add(f"split_{d}", rec.render_split())
        rep.say(f"{f'Theta_{d}':<{width}} = {rec.render_theta()}")
        rep.say(f"{f'Theta_{d}^split':<{width}} = {rec.render_split()}")


def cmd_bp(args, rep: Report):
    bp = bp_order(args.dim)
    rep.add("d", args.dim)
    rep.add("bp", "unknown" if bp.value is None else bp.value)
    rep.add("formula_only", bp.formula_only)
    rep.say(bp.render())


def cmd_split(args, rep: Report):
    if args.not_connected_sum:
        torus = NotConnectedSum()
    else:
        if args.sigma is None:
            raise ExotoriError("--sigma is required unless --not-connected-sum is given")
        rank = theta_record(args.dim).theta.rank
        torus = ConnectedSum(_coords(args.sigma, rank))
    verdict = splitting_decision(args.dim, torus)
    rep.add("d", args.dim)
    rep.add("split", verdict.split)
    rep.add("reason", verdict.reason)
    if args.dim >= 5:
        rep.add("reduction_case", reduction_case(args.dim))
    rep.say(f"{str(verdict.split).lower()} ({verdict.reason})")


def cmd_classify(args, rep: Report):
    verdict = classify_endomorphism(load_candidate(args.file), seed=args.seed)
    rep.add("kind", verdict.kind)
    if verdict.conjugator is not None:
        rep.add("conjugator", verdict.conjugator.to_text())
        rep.add("inverse_transpose", verdict.used_inverse_transpose)
    if verdict.reason:
        rep.add("reason", verdict.reason)
    for k, note in enumerate(verdict.diagnostics):
        rep.add(f"diagnostic_{k}", note)
    rep.say(verdict.render())


def cmd_verify(args, rep: Report):
    H = load_candidate(args.file)
    report = verify_hom(H)
    rep.add("d", H.d)
    rep.add("relators", report.relators_checked)
    rep.add("passed", report.passed)
    rep.add("failed", len(report.failed))
    for k, w in enumerate(report.failed):
        rep.add(f"failed_{k}", w)
    rep.add("non_unit_determinants", ",".join(map(str, report.non_unit_determinants)))
    rep.add("singular", ",".join(map(str, report.singular)))
    rep.say(report.summary())
    for w in report.failed:
        rep.say(f"  violated: {w}")
    if report.non_unit_determinants:
        rep.say("  determinant != 1: " + ", ".join(map(str, report.non_unit_determinants)))
    if report.singular:
        rep.say("  singular: " + ", ".join(map(str, report.singular)))


def cmd_counterexample(args, rep: Report):
    H = build_counterexample_rep()
    report = verify_hom(H)
    orders = generator_orders(H)
    size = closure_order(H, args.cap)
    rep.add("domain", H.domain_name)
    rep.add("relators", report.relators_checked)
    rep.add("passed", report.passed)
    for s in sorted(orders):
        rep.add(f"order_{s}", orders[s])
    rep.add("closure_order", "exceeded" if size is None else size)
    rep.say(f"representation of SL_3(Z) over {H.domain_name}")
    rep.say(f"relations: {report.summary()}")
    rep.say("generator orders: " + ", ".join(f"{s}:{orders[s]}" for s in sorted(orders)))
    rep.say(f"image order: {'exceeds ' + str(args.cap) if size is None else size}")


def cmd_invariants(args, rep: Report):
    G = torelli_invariant_group(args.dim, args.wedge, args.mod)
    rep.add("d", args.dim)
    rep.add("r", args.wedge)
    rep.add("n", args.mod)
    rep.add("invariants", G.rank)
    rep.add("group", G)
    rep.say(str(G.rank))


def cmd_mcg(args, rep: Report):
    rank = theta_record(args.dim).theta.rank
    sigma = _coords(args.sigma, rank)
    eta = None
    if args.eta_sigma is not None:
        eta = _coords(args.eta_sigma, theta_record(args.dim + 1).theta.rank)
    m = mcg_structure(args.dim, sigma, eta)
    rep.add("d", m.d)
    rep.add("sigma", m.sigma)
    rep.add("eta_sigma", m.eta_sigma)
    rep.add("extension", m.extension)
    for s in m.quotient.wedge_summands:
        rep.add(f"summand_{s.j}", f"{s.multiplicity}x{s.factor}")
    rep.add("two_torsion", f"{m.quotient.two_torsion_multiplicity}xZ/2")
    rep.add("finite_order", m.quotient.finite_order())
    rep.add("splitting", m.splitting)
    for line in m.render_lines():
        rep.say(line)


def cmd_abelianize(args, rep: Report):
    G = abelianize_presentation(*preset_presentation(args.preset))
    rep.add("preset", args.preset)
    rep.add("H1", G)
    rep.say(str(G))


def cmd_omega(args, rep: Report):
    o = omega(args.dim)
    rep.add("d", o.d)
    for s in o.wedge_summands:
        rep.add(f"summand_{s.j}", f"{s.multiplicity}x{s.factor}")
    rep.add("two_torsion", f"{o.two_torsion_multiplicity}xZ/2")
    rep.add("finite_order", o.finite_order())
    rep.add("orbits_1", o.orbit_count(1))
    for line in o.render_lines():
        rep.say(line)
    rep.say(f"finite part order: {o.finite_order()}")


def cmd_roundtrip(args, rep: Report):
    rng = random.Random(args.seed)
    ok = 0
    for _ in range(args.trials):
        C = random_unimodular(args.dim, rng.randint(0, args.length), rng)
        want = canonical_sign(C)
        for base, flag in ((identity_candidate, False), (inverse_transpose_candidate, True)):
            v = classify_endomorphism(conjugated_candidate(base(args.dim), C))
            ok += v.conjugator == want and v.used_inverse_transpose == flag
    total = 2 * args.trials
    rep.add("d", args.dim)
    rep.add("seed", args.seed)
    rep.add("recovered", ok)
    rep.add("total", total)
    rep.say(f"recovered {ok}/{total} conjugators in dimension {args.dim}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exotori", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("human", "machine"), default="human")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spheres-table", help="groups of homotopy spheres and split subgroups")
    s.add_argument("--from", dest="from_dim", type=int, default=1)
    s.add_argument("--to", dest="to_dim", type=int, default=TABLE_MAX_DIM)
    s.set_defaults(func=cmd_spheres_table)

    s = sub.add_parser("bp", help="order of bP_{d+1}")
    s.add_argument("--dim", type=int, required=True)
    s.set_defaults(func=cmd_bp)

    s = sub.add_parser("split", help="does the homology action split")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--sigma", help="coordinates of Sigma, e.g. 1,1,0")
    s.add_argument("--not-connected-sum", action="store_true")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("classify-endo", help="classify an endomorphism candidate file")
    s.add_argument("--file", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify-hom", help="check the Steinberg relations")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("counterexample", help="finite-image representation over Q(sqrt(-7))")
    s.add_argument("--cap", type=int, default=10**6)
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("invariants", help="fixed vectors of Lambda^r (Z/n)^d")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--wedge", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("mcg", help="mapping class group of T^d # Sigma")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--eta-sigma", dest="eta_sigma")
    s.set_defaults(func=cmd_mcg)

    s = sub.add_parser("abelianize", help="abelianization of a built-in presentation")
    s.add_argument("--preset", choices=PRESETS, required=True)
    s.set_defaults(func=cmd_abelianize)

    s = sub.add_parser("omega", help="the Torelli module of T^d")
    s.add_argument("--dim", type=int, required=True)
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("roundtrip", help="classify random conjugated candidates")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--length", type=int, default=30)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    rep = Report()
    try:
        args.func(args, rep)
    except (ExotoriError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rep.emit(args.format, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
