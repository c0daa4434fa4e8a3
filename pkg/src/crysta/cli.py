"""Command-line entry point: ``crysta <command> [options]``.

Exit codes: 0 pass, 1 semantic failure (not simple, identity violated,
not a crystallization), 2 invalid input, 3 resource limit, 66 unreadable
or unwritable file.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .complex import NotContracted, build_complex, homology, is_simple, one_skeleton
from .gem import GemError, bipartition, parse, residue_table, serialize
from .invariants import invariant_report
from .moves import DEFAULT_BUDGET, DEFAULT_SEED, replay, simplify
from .snf import OverflowGuard

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_IO = 66
SCHEMA = 1


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise CliError(EXIT_INPUT, f"{path}: not UTF-8 text") from None
    return text, hashlib.sha256(data).hexdigest()


def _load(path):
    text, digest = _read(path)
    try:
        return parse(text), digest
    except GemError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from None


class Output:
    """Collects a JSON payload or prints plain lines, depending on ``--json``."""

    def __init__(self, args):
        self.json = args.json
        self.command = args.command
        self.doc = {"schema": SCHEMA, "tool": "crysta", "version": __version__,
                    "command": args.command, "warnings": []}

    def set(self, **fields):
        self.doc.update(fields)

    def warn(self, message):
        self.doc["warnings"].append(message)
        if not self.json:
            print(f"warning: {message}", file=sys.stderr)

    def line(self, text=""):
        if not self.json:
            print(text)

    def finish(self, code):
        self.doc["exit"] = code
        if self.json:
            print(json.dumps(self.doc, sort_keys=True))
        return code


# -- commands -------------------------------------------------------------------

def cmd_validate(args, out):
    g, digest = _load(args.file)
    bp = bipartition(g)
    out.set(input=digest, order=g.order, bipartite=bp.bipartite)
    out.line(f"valid gem of order {g.order} ({'bipartite' if bp.bipartite else 'non-bipartite'})")
    return EXIT_OK


def cmd_invariants(args, out):
    g, digest = _load(args.file)
    report = invariant_report(g)
    out.set(input=digest, report=report.to_json())
    if not out.json:
        out.line(f"order {report.order}  chi {report.chi}  bipartite {report.bipartite}"
                 f"  contracted {report.contracted}")
        out.line(f"betti {' '.join(map(str, report.betti))}")
        if report.genus is not None:
            out.line(f"genus min {report.genus.minimum}"
                     f"  spectrum {sorted(set(report.genus.values.values()))}")
        if report.simple is not None:
            out.line(f"simple {report.simple}")
        for c in report.checks:
            if c.applicable and not c.passed:
                out.line(f"FAIL {c.name}: {c.lhs} != {c.rhs} {c.detail}".rstrip())
        out.line("all applicable identities pass" if report.passed else "identity failures present")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_skeleton(args, out):
    g, digest = _load(args.file)
    verts, matrix = one_skeleton(build_complex(g))
    out.set(input=digest, vertices=[list(v) for v in verts], matrix=matrix)
    for row in matrix:
        out.line(" ".join(str(x) for x in row))
    return EXIT_OK


def cmd_homology(args, out):
    g, digest = _load(args.file)
    hom = homology(build_complex(g))
    out.set(input=digest, **hom.to_json())
    out.line(f"betti {' '.join(map(str, hom.betti))}")
    for d, t in sorted(hom.torsion.items()):
        if t:
            out.line(f"torsion H_{d}: {' '.join(f'Z/{x}' for x in t)}")
    return EXIT_OK


def cmd_certify_simple(args, out):
    from .construct import residue_verdicts
    from .invariants import check_paper_identities, genus_spectrum

    g, digest = _load(args.file)
    out.set(input=digest)
    table = residue_table(g)
    try:
        cert = is_simple(g, table)
    except NotContracted as exc:
        out.set(status="not-contracted", simple=False, g_hat={str(k): v for k, v in table.g_hat.items()})
        out.line(f"not a crystallization: {exc}")
        return EXIT_FAIL
    triples = {"".join(map(str, k)): v for k, v in sorted(cert.g_triple.items())}
    out.set(g_triple=triples, simple=cert.simple)
    if not cert.simple:
        out.set(status="not-simple", witness=list(cert.witness),
                witness_count=cert.g_triple[cert.witness])
        out.line(f"not simple: g_{''.join(map(str, cert.witness))} = {cert.g_triple[cert.witness]}")
        return EXIT_FAIL
    spheres, s3 = residue_verdicts(g, args.seed, args.budget, table)
    hom = homology(build_complex(g))
    if not bipartition(g).bipartite:
        out.set(status="non-bipartite")
        out.line("simple but not bipartite")
        return EXIT_FAIL
    spectrum = genus_spectrum(g, table)
    checks = check_paper_identities(g, table, hom, spectrum)
    beta2 = hom.betti[2]
    out.set(beta2=beta2, genus=spectrum.minimum, complexity=g.p - 1, spheres=spheres, s3=s3,
            checks=[{"name": c.name, "passed": c.passed, "lhs": c.lhs, "rhs": c.rhs}
                    for c in checks if c.applicable])
    for i, v in enumerate(s3):
        if v == "unknown":
            out.warn(f"3-sphere recognition undecided for residues missing color {i}")
    ok = spheres and "no" not in s3 and all(c.passed for c in checks if c.applicable)
    out.set(status="simple" if ok else "manifold-check-failed")
    out.line(f"simple crystallization: beta2 {beta2}  genus {spectrum.minimum}  k {g.p - 1}")
    if not ok:
        out.line("manifold or identity checks failed")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_simplify(args, out):
    g, digest = _load(args.file)
    if args.replay:
        text, _ = _read(args.replay)
        reduced, log = replay(g, text.splitlines()), None
    else:
        reduced, log = simplify(g, args.seed, args.budget)
    out.set(input=digest, order=g.order, reduced_order=reduced.order, gem=serialize(reduced))
    if log is not None:
        out.set(log=log)
    if args.out:
        _write(args.out, serialize(reduced))
    if args.log and log is not None:
        _write(args.log, "".join(line + "\n" for line in log))
    if not out.json:
        if not args.out:
            sys.stdout.write(serialize(reduced))
        for line in log or []:
            out.line(f"# {line}")
    return EXIT_OK


def cmd_connsum(args, out):
    from .construct import ClassMismatch, SumSpec, connected_sum

    a, da = _load(args.a)
    b, db = _load(args.b)
    try:
        s = connected_sum(SumSpec(a, b, args.va, args.vb, args.reverse))
    except ClassMismatch as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    except (GemError, ValueError) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    out.set(inputs=[da, db], order=s.order, gem=serialize(s))
    if args.out:
        _write(args.out, serialize(s))
    elif not out.json:
        sys.stdout.write(serialize(s))
    return EXIT_OK


def cmd_enumerate(args, out):
    from .construct import EnumerationTask, classify, enumerate_gems, key_to_json

    try:
        task = EnumerationTask(args.order, simple=True, rigid=args.rigid, group=args.group,
                               jobs=args.jobs, seed=args.seed, budget=args.budget,
                               time_limit=args.time_limit)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    try:
        result = enumerate_gems(task, args.out, args.resume)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from None
    classes = classify(result.entries)
    out.set(order=args.order, group=args.group, exhaustive=result.exhaustive, stats=result.stats,
            count=len(result.entries),
            classes=[{"key": key_to_json(k), "count": len(v)} for k, v in classes.items()])
    if args.out:
        root = Path(args.out)
        try:
            with (root / "manifest.jsonl").open("w") as fh:
                for i, e in enumerate(result.entries):
                    name = f"class{i:05d}.gem"
                    (root / name).write_text(serialize(e.gem))
                    fh.write(json.dumps(dict(e.manifest(), file=name), sort_keys=True) + "\n")
        except OSError as exc:
            raise CliError(EXIT_IO, str(exc)) from None
    for e in result.entries:
        if e.flagged:
            out.warn(f"{e.code.hex()[:16]}...: 3-sphere recognition undecided")
    out.line(f"order {args.order}: {len(result.entries)} classes under group {args.group}"
             f" ({'exhaustive' if result.exhaustive else 'TRUNCATED'})")
    for k, v in classes.items():
        kj = key_to_json(k)
        out.line(f"  {len(v):6d}  chi {kj['chi']}  betti {kj['betti']}  form {kj['form']}")
    return EXIT_OK if result.exhaustive else EXIT_LIMIT


# -- wiring ---------------------------------------------------------------------

def build_parser():
    def flags(suppress):
        # global flags are accepted before or after the command name; the
        # subcommand copy must not reset values given before it
        p = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=d(False),
                       help="emit one JSON document on stdout")
        p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for randomized searches")
        p.add_argument("--jobs", type=int, default=d(1), help="worker processes for enumeration")
        return p

    common = flags(True)
    parser = argparse.ArgumentParser(prog="crysta", parents=[flags(False)],
                                     description="Crystallizations of closed PL 4-manifolds.")
    parser.add_argument("--version", action="version", version=f"crysta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, text in [("validate", cmd_validate, "check a gem file"),
                             ("invariants", cmd_invariants, "full invariant report"),
                             ("skeleton", cmd_skeleton, "1-skeleton multiplicity matrix"),
                             ("homology", cmd_homology, "Betti numbers and torsion")]:
        command(name, func, text).add_argument("file")

    p = command("certify-simple", cmd_certify_simple, "certify a simple crystallization")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = command("simplify", cmd_simplify, "reduce a gem by dipole and rho-pair moves")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write the reduced gem here")
    p.add_argument("--log", help="write the move log here")
    p.add_argument("--replay", metavar="LOG", help="apply a saved move log instead of searching")

    p = command("connsum", cmd_connsum, "graph connected sum of two gems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--va", type=int, default=0)
    p.add_argument("--vb", type=int, default=None)
    p.add_argument("--reverse", action="store_true", help="reverse the orientation of the second gem")
    p.add_argument("--out")

    p = command("enumerate", cmd_enumerate, "enumerate simple crystallizations of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--simple", action="store_true", default=True,
                   help="simple crystallizations (the only supported mode)")
    p.add_argument("--rigid", action="store_true", help="keep rigid dipole-free gems only")
    p.add_argument("--group", choices=["v", "vc", "vcr"], default="vcr")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--time-limit", type=int, default=None, help="seconds before stopping")
    p.add_argument("--out", help="directory for gem files, manifest and progress log")
    p.add_argument("--resume", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args)
    if args.jobs < 1:
        out.set(error="--jobs must be positive")
        print("error: --jobs must be positive", file=sys.stderr)
        return out.finish(EXIT_INPUT)
    try:
        code = args.func(args, out)
    except CliError as exc:
        out.set(error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        code = exc.code
    except (OverflowGuard, MemoryError) as exc:
        out.set(error=f"resource limit: {exc}")
        print(f"error: resource limit: {exc}", file=sys.stderr)
        code = EXIT_LIMIT
    return out.finish(code)


if __name__ == "__main__":
    sys.exit(main())
