"""Command-line entry point: ``cotilt <subcommand> ...``.

Exit codes: 0 for ok, 1 for a violation or a false verdict, 2 for bad input.
Output is deterministic; ``--json`` switches to machine-readable output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import serialize
from .charseq import count_sequences, enumerate_sequences, validate_sequence
from .coloc import (
    check_compatibility,
    enumerate_compatible_family_masks,
    families_equivalent,
    glue_family,
    localization_family,
    localize_sequence,
    sequences_equal,
)
from .errors import CotiltError, InputError, PreconditionError
from .sampling import DEFAULT_SEED, make_rng, random_family, random_sequence
from .zhomology import oracle

STATUS_CODES = {"ok": 0, "violation": 1, "error": 2}


@dataclass
class CommandReport:
    status: str
    lines: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return STATUS_CODES[self.status]

    def render(self, as_json=False):
        if as_json:
            return json.dumps({"status": self.status, **self.payload}, sort_keys=True, indent=2)
        return "\n".join(self.lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"usage: {message}")


def _load(arg, inline, what):
    if inline:
        source, text = "<inline>", arg
    else:
        source = arg
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{arg}: cannot read {what} file ({exc.strerror})") from None
    try:
        return source, json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _parse(arg, inline, what, loader):
    source, doc = _load(arg, inline, what)
    try:
        return loader(doc)
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None


def _verdict_report(verdict, ok_line="ok"):
    lines = [ok_line] if verdict.ok else []
    for v in verdict.violations:
        where = f" at {v.witness.label}" if v.witness is not None else ""
        lines.append(f"violation ({v.clause}) level {v.index}{where}: {v.detail}")
    lines += [f"note: {n}" for n in verdict.notes]
    return CommandReport("ok" if verdict.ok else "violation", lines, {"verdict": verdict.to_json()})


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    seq = _parse(args.seq, args.inline, "sequence", serialize.load_sequence)
    return _verdict_report(validate_sequence(seq))


def cmd_enumerate(args):
    ring = _parse(args.ring, args.inline, "ring", serialize.load_ring)
    if args.count:
        total = count_sequences(ring, args.n)
        return CommandReport("ok", [str(total)], {"count": total})
    seqs = list(enumerate_sequences(ring, args.n))
    return CommandReport("ok", [str(s) for s in seqs],
                         {"count": len(seqs), "sequences": [serialize.dump_sequence(s) for s in seqs]})


def cmd_count(args):
    ring = _parse(args.ring, args.inline, "ring", serialize.load_ring)
    if args.families:
        total = sum(1 for _ in enumerate_compatible_family_masks(ring, args.n))
    else:
        total = count_sequences(ring, args.n)
    return CommandReport("ok", [str(total)], {"count": total})


def cmd_localize(args):
    seq = _parse(args.seq, args.inline, "sequence", serialize.load_sequence)
    if args.at is None:
        family = localization_family(seq)
        return CommandReport("ok", _family_lines(family), {"family": serialize.dump_family(family)})
    m = seq.ring.parse_prime(args.at)
    local = localize_sequence(seq, m)
    return CommandReport("ok", [str(local)], {
        "at": m.label, "levels": [serialize.dump_prime_set(level) for level in local.levels]})


def _family_lines(family):
    lines = []
    if family.default is not None:
        lines.append("default: " + ", ".join("{" + ", ".join(sorted(p)) + "}" for p in family.default))
    lines += [str(local) for _, local in family.exceptions]
    return lines


def cmd_glue(args):
    family = _parse(args.family, args.inline, "family", serialize.load_family)
    verdict = check_compatibility(family)
    if not verdict.ok:
        return _verdict_report(verdict)
    seq = glue_family(family)
    return CommandReport("ok", [str(seq)], {"sequence": serialize.dump_sequence(seq)})


def cmd_check_family(args):
    family = _parse(args.family, args.inline, "family", serialize.load_family)
    return _verdict_report(check_compatibility(family), "compatible")


def cmd_member(args):
    module = _parse(args.module, args.inline, "module", serialize.load_module)
    seq = _parse(args.seq, args.inline, "sequence", serialize.load_sequence)
    test = oracle.cotilting_membership if args.side == "cotilting" else oracle.tilting_membership
    verdict = test(module, seq)
    return CommandReport("ok" if verdict else "violation", [str(verdict).lower()],
                         {"side": args.side, "member": verdict})


def _sweep_report(result):
    line = f"{result.name}: {result.checked} checked, {len(result.failures)} failed"
    lines = [line] + [f"  failure: {f}" for f in result.failures]
    return CommandReport("ok" if result.ok else "violation", lines, result.to_json())


def cmd_oracle(args):
    primes = tuple(args.primes) if args.primes else None
    if args.check == "cartanei":
        return _sweep_report(oracle.sweep_cartanei(args.part, args.max_order or 32, primes or (2, 3)))
    if args.check == "dual-coloc":
        return _sweep_report(oracle.sweep_dual_coloc(args.max_order or 64, primes or (2, 3, 5)))
    if args.check == "coloc":
        return _sweep_report(oracle.sweep_colocalization(args.max_order or 256, primes or (2, 3, 5)))
    if args.check == "bass":
        return _sweep_report(oracle.sweep_bass(primes or (2, 3, 5, 7)))
    if args.check == "membership":
        return _sweep_report(oracle.sweep_membership_duality(
            max_factor=args.max_order or 16, primes=primes or (2, 3, 5, 7, 11)))
    return _roundtrip_z(args)


def _roundtrip_z(args):
    """Random round trips over Z, seeded by ``--seed``."""
    rng = make_rng(args.seed)
    failures = []
    for k in range(args.samples):
        n = rng.randint(1, 3)
        seq = random_sequence(rng, n)
        if not sequences_equal(glue_family(localization_family(seq)), seq):
            failures.append(f"sample {k}: glue(localize(P)) != P for {seq}")
        fam = random_family(rng, n)
        if not families_equivalent(localization_family(glue_family(fam)), fam):
            failures.append(f"sample {k}: localize(glue(F)) != F")
    result = oracle.SweepResult("roundtrip-z", 2 * args.samples, failures)
    report = _sweep_report(result)
    report.payload["seed"] = args.seed
    return report


# ---------------------------------------------------------------------------


def build_parser():
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--inline", action="store_true", default=argparse.SUPPRESS,
                        help="treat file arguments as inline JSON text")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized sweeps (default {DEFAULT_SEED})")
    parser = _Parser(prog="cotilt", description="Characteristic sequences and their oracles.",
                     parents=[common])
    parser.set_defaults(json=False, inline=False, seed=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check a characteristic sequence")
    p.add_argument("seq")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", parents=[common], help="list all sequences on a finite spectrum")
    p.add_argument("ring")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print only the number of sequences")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="count sequences (or compatible families)")
    p.add_argument("ring")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--families", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("localize", parents=[common], help="localize a sequence at one maximal ideal, or everywhere")
    p.add_argument("seq")
    p.add_argument("--at", help="maximal ideal label; omit for the whole family")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("glue", parents=[common], help="glue a compatible family into a sequence")
    p.add_argument("family")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("check-family", parents=[common], help="check local validity and compatibility")
    p.add_argument("family")
    p.set_defaults(func=cmd_check_family)

    p = sub.add_parser("member", parents=[common], help="membership of a module in the (co)tilting class")
    p.add_argument("--module", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--side", choices=("cotilting", "tilting"), required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("oracle", parents=[common], help="run an oracle sweep")
    p.add_argument("check", choices=("cartanei", "dual-coloc", "coloc", "bass", "membership", "roundtrip-z"))
    p.add_argument("--part", choices=("a", "b"), default="a")
    p.add_argument("--max-order", type=int)
    p.add_argument("--primes", type=int, nargs="+")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv):
    """Parse ``argv`` and dispatch; never raises for user errors."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except PreconditionError as exc:
        lines = [f"error: {exc}"] + [f"  ({v.clause}) level {v.index}: {v.detail}" for v in exc.violations]
        return CommandReport("error", lines, {"error": str(exc),
                                              "violations": [v.to_json() for v in exc.violations]})
    except (CotiltError, ValueError) as exc:
        return CommandReport("error", [f"error: {exc}"], {"error": str(exc)})


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    report = run(argv)
    as_json = "--json" in argv
    text = report.render(as_json)
    stream = sys.stderr if report.status == "error" and not as_json else sys.stdout
    if text:
        print(text, file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
