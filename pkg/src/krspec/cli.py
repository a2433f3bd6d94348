"""Command-line front end: ``krspec <subcommand> ...``.

Exit status 0 on success, 1 on domain errors (message on stderr), 2 on
usage errors.  Reports are plain ``key value`` lines preceded by ``#``
header lines recording the command and every tolerance in force;
``--json`` renders the same fields as one JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import cheeger as ch
from .significance import (
    SignificanceReport,
    certificate_for,
    certified_weak_significant,
    dump_certificate,
    homology_critical_values,
    obstruction_between,
    parse_certificate,
    verify_surface_certificate,
)
from .spaces import GeneratorError, GeneratorParams, gen_dyck, gen_rayleigh, gen_rp, gen_torus, load_scx
from .spectrum import index_spectrum, kr2_sweep
from .symcx import dump_scx, format_value, parse_value
from .z2algebra import persistence

# every module error derives from ValueError
DOMAIN_ERRORS = (FileNotFoundError, ValueError, ZeroDivisionError)

RP1_VALUES = ("0.2", "0.4", "0.5", "0.9")
D123 = ((1, 0, 0), (0, 2, 0), (0, 0, 3))
CORPUS_RAYLEIGH_LEVEL = 3


class Report:
    """Ordered records shared by the text and JSON renderings."""

    def __init__(self, command: str, tol=None):
        self.header = {"command": command}
        if tol is not None:
            self.header["tol"] = format_value(tol)
        self.lines: list[str] = []
        self.data: dict = {}

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({**self.header, **self.data}, indent=2, sort_keys=False) + "\n"
        head = [f"# {k} {v}" for k, v in self.header.items()]
        return "\n".join(head + self.lines) + "\n"


# -- helpers ---------------------------------------------------------------


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    return p.read_text()


def _value(text: str) -> Fraction:
    try:
        return parse_value(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _nonneg(text: str) -> Fraction:
    x = _value(text)
    if x < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return x


def _positive_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def _matrix(text: str):
    try:
        rows = [[float(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError("matrix rows are ';'-separated, entries ','-separated") from None
    return rows


def _values(text: str) -> list[Fraction]:
    return [_value(x) for x in text.split(",")]


# -- generators --------------------------------------------------------------


def _rayleigh_header(A, level: int) -> str:
    rows = ";".join(",".join(format_value(float(x)) for x in row) for row in A)
    return f"rayleigh quotient of {rows}\nicosphere level {level}"


def build_corpus() -> dict[str, str]:
    """Every shipped fixture, by file name."""
    out = {}
    out["rp1.scx"] = dump_scx(gen_rp(1, values=[parse_value(x) for x in RP1_VALUES]), "RP^1, values 0.2 0.4 0.5 0.9")
    out["rp2.scx"] = dump_scx(gen_rp(2, constant=0), "RP^2 (hemi-icosahedron), constant 0")
    out["rp3.scx"] = dump_scx(gen_rp(3, constant=0), "RP^3, constant 0")
    out["torus.scx"] = dump_scx(gen_torus(), "torus with coordinate cocycle, constant 0")
    out["rayleigh_d123.scx"] = dump_scx(gen_rayleigh(D123, CORPUS_RAYLEIGH_LEVEL), _rayleigh_header(D123, CORPUS_RAYLEIGH_LEVEL))
    params = GeneratorParams()
    fx = gen_dyck(params)
    out["dyck.scx"] = dump_scx(fx.complex, f"Dyck counterexample, combinatorial, r={params.r} R={params.R}")
    out["dyck_witness.cert"] = dump_certificate(certificate_for(fx.dyck_witness, level=0))
    out["rp2_witness.cert"] = dump_certificate(certificate_for(fx.rp2_witness, level=fx.r_level))
    out["c4.graph"] = ch.dump_graph(ch.cycle_graph(4))
    out["k3.graph"] = ch.dump_graph(ch.complete_graph(3))
    out["bridged.graph"] = ch.dump_graph(ch.bridged_triangles())
    out["c4_split.fn"] = ch.dump_function([2, -2, 0, 0])
    return out


def checksums(files: dict[str, str]) -> str:
    return "".join(f"{hashlib.sha256(files[name].encode()).hexdigest()}  {name}\n" for name in sorted(files))


def cmd_gen(args) -> Report:
    rep = Report("gen")
    if args.kind == "all":
        if not args.out:
            raise GeneratorError("gen all needs an output directory")
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        files = build_corpus()
        files["SHA256SUMS"] = checksums(files)
        for name in sorted(files):
            (target / name).write_text(files[name])
            rep.lines.append(f"wrote {name}")
        rep.data["wrote"] = sorted(files)
        return rep

    extra: dict[str, str] = {}
    if args.kind in ("rp1", "rp2", "rp3"):
        n = int(args.kind[2])
        c = gen_rp(n, values=args.values, constant=args.constant)
        text = dump_scx(c, f"RP^{n}")
    elif args.kind == "torus":
        text = dump_scx(gen_torus(args.values), "torus")
    elif args.kind == "rayleigh":
        A = args.matrix or D123
        text = dump_scx(gen_rayleigh(A, args.level), _rayleigh_header(A, args.level))
    else:
        params = GeneratorParams(args.r, args.R, args.mode)
        fx = gen_dyck(params)
        text = dump_scx(fx.complex, f"Dyck counterexample, {params.mode}, r={params.r} R={params.R}")
        extra["dyck_witness.cert"] = dump_certificate(certificate_for(fx.dyck_witness, level=0))
        extra["rp2_witness.cert"] = dump_certificate(certificate_for(fx.rp2_witness, level=fx.r_level))
        rep.data["r_level"] = format_value(fx.r_level)
        rep.data["f_max"] = format_value(fx.f_max)
    if not args.out:
        rep.lines.append(text.rstrip("\n"))
        rep.header = {}
        rep.data["scx"] = text
        return rep
    out = Path(args.out)
    out.write_text(text)
    rep.lines.append(f"wrote {out.name}")
    for name, body in extra.items():
        (out.parent / name).write_text(body)
        rep.lines.append(f"wrote {name}")
    rep.lines += [f"{k} {v}" for k, v in rep.data.items()]
    rep.data["wrote"] = [out.name, *extra]
    return rep


# -- analysis commands ---------------------------------------------------------


def cmd_spectrum(args) -> Report:
    c = load_scx(args.file)
    result = index_spectrum(c, args.k, tol=args.tol)
    rep = Report("spectrum", args.tol)
    rep.lines = result.lines()
    rep.data = result.to_dict()
    return rep


def cmd_kr2(args) -> Report:
    c = load_scx(args.file)
    r = kr2_sweep(c)
    rep = Report("kr2")
    rep.lines = [f"kr2 {format_value(r.value)}", "witness", *(f"{u} {v}" for u, v in r.witness), "end"]
    rep.data = {"kr2": format_value(r.value), "witness": [list(e) for e in r.witness]}
    return rep


def cmd_persistence(args) -> Report:
    d = persistence(load_scx(args.file))
    rep = Report("persistence")
    rep.lines = [f"betti {' '.join(map(str, d.betti))}"] + d.export().splitlines()
    rep.data = {
        "betti": list(d.betti),
        "bars": [[p, format_value(b), format_value(e)] for p, b, e in d.all_bars()],
    }
    return rep


def cmd_significance(args) -> Report:
    c = load_scx(args.file)
    d = persistence(c)
    report = SignificanceReport(homology_critical_values(d), certified_weak_significant(d))
    if args.index:
        report.index_values = index_spectrum(c).index_values
    for path in args.cert or ():
        cert = parse_certificate(_read(path), c)
        report.certificates.append((Path(path).stem, verify_surface_certificate(c, cert)))
    rep = Report("significance")
    rep.lines = report.lines()
    rep.data = report.to_dict()
    return rep


def cmd_verify(args) -> Report:
    c = load_scx(args.file)
    cert = parse_certificate(_read(args.cert), c)
    verdict = verify_surface_certificate(c, cert)
    rep = Report("verify")
    rep.lines = verdict.lines()
    rep.data = {"verdict": verdict.lines()}
    if args.against:
        lower = parse_certificate(_read(args.against), c)
        ob = obstruction_between(c, lower, cert)
        rep.lines += ob.lines()
        rep.data["obstruction"] = ob.lines()
    return rep


def cmd_cheeger(args) -> Report:
    g = ch.parse_graph(_read(args.file))
    rep = Report("cheeger", args.tol)
    if args.brute or args.compare:
        b = ch.cheeger_brute(g)
        rep.lines += [f"brute {format_value(b.value)}", f"brute_subset {' '.join(map(str, b.subset))}"]
        rep.data["brute"] = format_value(b.value)
        rep.data["brute_subset"] = list(b.subset)
    if args.compare:
        m = ch.indicator_minimum(g)
        agree = abs(m.value - b.value) <= args.tol
        rep.lines += [
            f"indicator {format_value(m.value)}",
            f"indicator_subset {' '.join(map(str, m.subset))}",
            f"agree {int(agree)}",
        ]
        rep.data.update(indicator=format_value(m.value), indicator_subset=list(m.subset), agree=agree)
    if args.bound:
        u = ch.parse_function(_read(args.bound), g)
        fb = ch.cheeger_function_bound(g, u)
        lo, hi = fb.median
        rep.lines += [
            f"energy {format_value(fb.energy)}",
            f"median {format_value(lo)} {format_value(hi)}",
            f"median_verified {int(fb.median_verified)}",
            f"rounded {format_value(fb.rounded_ratio)}",
            f"rounded_subset {' '.join(map(str, fb.rounded_subset))}",
        ]
        rep.data.update(
            energy=format_value(fb.energy), median=[format_value(lo), format_value(hi)],
            median_verified=fb.median_verified, rounded=format_value(fb.rounded_ratio),
            rounded_subset=list(fb.rounded_subset),
        )
    return rep


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="render the report as JSON")

    parser = argparse.ArgumentParser(prog="krspec", description="Min-max spectra on symmetric simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write fixture complexes")
    p.add_argument("kind", choices=["rp1", "rp2", "rp3", "torus", "rayleigh", "dyck", "all"])
    p.add_argument("out", nargs="?", help="output file (directory for 'all'); stdout if omitted")
    p.add_argument("--values", type=_values, help="comma-separated vertex values")
    p.add_argument("--constant", type=_value)
    p.add_argument("--matrix", type=_matrix, help="e.g. '1,0,0;0,2,0;0,0,3'")
    p.add_argument("--level", type=int, default=CORPUS_RAYLEIGH_LEVEL)
    p.add_argument("--r", type=_value, default=Fraction(1))
    p.add_argument("--R", type=_value, default=Fraction(4))
    p.add_argument("--mode", choices=["combinatorial", "metric"], default="combinatorial")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("spectrum", parents=[common], help="index-sweep spectrum iv_1..iv_k")
    p.add_argument("file")
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--tol", type=_nonneg, default=Fraction(0), help="tolerance of the consistency checks")
    p.set_defaults(run=cmd_spectrum)

    p = sub.add_parser("kr2", parents=[common], help="first odd-holonomy loop level")
    p.add_argument("file")
    p.set_defaults(run=cmd_kr2)

    p = sub.add_parser("persistence", parents=[common], help="GF(2) persistence bars")
    p.add_argument("file")
    p.set_defaults(run=cmd_persistence)

    p = sub.add_parser("significance", parents=[common], help="candidate and certified significant levels")
    p.add_argument("file")
    p.add_argument("--cert", action="append", help="surface certificate to check (repeatable)")
    p.add_argument("--index", action="store_true", help="include index-sweep values")
    p.set_defaults(run=cmd_significance)

    p = sub.add_parser("verify", parents=[common], help="check a surface certificate")
    p.add_argument("file")
    p.add_argument("cert")
    p.add_argument("--against", help="lower certificate; adds the degree-obstruction verdict")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("cheeger", parents=[common], help="Cheeger constant of a weighted graph")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--brute", action="store_true")
    mode.add_argument("--bound", metavar="FN_FILE")
    mode.add_argument("--compare", action="store_true")
    p.add_argument("--tol", type=_nonneg, default=Fraction(0), help="tolerance for --compare")
    p.set_defaults(run=cmd_cheeger)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run: Callable = args.run
    try:
        report = run(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report.render(args.json))
    sys.stdout.flush()
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
