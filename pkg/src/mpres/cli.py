"""Command-line front end.

Exit codes: 0 success, 1 a computational check failed (report on stdout),
2 bad input or usage.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import chains as ch
from .algebra import format_degree, grid_points, parse_degree
from .field import set_field
from .filtration import (FiltrationError, grid_bound, is_one_critical, parse,
                         parse_lower_star_input, random_filtration, random_lower_star,
                         serialize, slice_at)
from .gridmodule import CoverMap, betti_numbers
from .onecritical import (acyclicity_defect, check_equality_with_C, labelled_complex,
                          parse_labelled)
from .resolution import (Resolution, VerifyReport, format_resolution, minimize,
                         parse_resolution, resolve_boundaries, resolve_chains, resolve_homology,
                         resolve_module, verify_resolution)

MODULES = ("chains", "cycles", "boundaries", "homology")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror or exc))


def _load(path: str, strict: bool = False):
    return parse(_read(path), strict=strict)


def _grid(f, pad: int):
    return tuple(a + pad for a in grid_bound(f))


def _hilbert_tsv(m) -> list:
    out = ["degree\tdim"]
    for v in grid_points(m.grid):
        out.append("%s\t%d" % (format_degree(v), m.dims[v]))
    return out


def _betti_tsv(table: dict) -> list:
    out = ["step\tdegree\tcount"]
    for (j, d), c in sorted(table.items(), key=lambda t: (t[0][0], sum(t[0][1]), t[0][1])):
        out.append("%d\t%s\t%d" % (j, format_degree(d), c))
    return out


# -- subcommands ------------------------------------------------------------------

def cmd_validate(a):
    f = _load(a.file, strict=a.strict)
    return 0, ["ok\tr=%d\tsimplices=%d\tdim=%d\tgrid=%s\tone_critical=%s" % (
        f.r, len(f), f.dim, format_degree(grid_bound(f)), str(is_one_critical(f)).lower())]


def cmd_slice(a):
    f = _load(a.file)
    try:
        v = parse_degree(a.at if a.at.strip().startswith("(") else "(%s)" % a.at)
    except ValueError as exc:
        raise InputError(str(exc))
    if len(v) != f.r:
        raise InputError("grade %s has %d coordinates, expected r=%d" % (a.at, len(v), f.r))
    return 0, ["%d\t%s" % (s.id, " ".join(map(str, s.vertices))) for s in slice_at(f, v)]


def cmd_chains(a):
    f = _load(a.file)
    out = []
    for n in range(f.dim + 1):
        data = ch.fundamental_elements(f, n)
        out.append("C_%d" % n)
        for g in data.generators:
            out.append("%d\t%s" % (g.simplex, format_degree(g.degree)))
        if n >= 1:
            out.append("d_%d" % n)
            out.append(ch.boundary_matrix(f, n).to_text())
    return 0, out


def _degrees(f, n):
    return range(f.dim + 1) if n is None else [n]


def cmd_decompose(a):
    f = _load(a.file)
    return 0, [ch.format_decomposition(ch.fundamental_elements(f, n)) for n in _degrees(f, a.n)]


def cmd_syzygies(a):
    f = _load(a.file)
    out = ["n\tsimplex\ta\tb\tc\tbinomial"]
    for n in _degrees(f, a.n):
        for z in ch.syzygy_binomials(ch.fundamental_elements(f, n)):
            out.append("%d\t%d\t%s\t%s\t%s\t%s" % (n, z.a.simplex, format_degree(z.a.degree),
                                                   format_degree(z.b.degree),
                                                   format_degree(z.c), z))
    return 0, out


def cmd_hilbert(a):
    f = _load(a.file)
    m = ch.module_of(f, a.module, a.n, _grid(f, a.pad))
    return 0, _hilbert_tsv(m)


def cmd_betti(a):
    f = _load(a.file)
    m = ch.module_of(f, a.module, a.n, _grid(f, a.pad))
    return 0, _betti_tsv(betti_numbers(m, a.max_step))


def _resolve(f, target: str, n: int, minimal_p: bool):
    if target == "homology":
        return resolve_homology(f, n, minimal_p)
    if target == "boundaries":
        return resolve_boundaries(f, n + 1, minimal_p)
    if target == "chains":
        if minimal_p:
            return resolve_module(ch.chain_module(f, n))
        return resolve_chains(f, n)
    return resolve_module(ch.cycle_module(f, n))


def cmd_resolve(a):
    f = _load(a.file)
    if a.n < 0:
        raise InputError("-n must be >= 0")
    res = _resolve(f, a.target, a.n, a.minimal_p)
    if a.minimize:
        res = minimize(res)
    ids = [s.id for s, _ in f.of_dim(a.n)]
    text = format_resolution(res, a.target, a.n, labels=ids)
    return 0, [text.rstrip("\n")]


def cmd_verify(a):
    f = _load(a.file)
    try:
        parsed = parse_resolution(_read(a.resolution))
        kind, n = parsed.header["target"].split()
        n = int(n)
    except (KeyError, ValueError) as exc:
        raise InputError("malformed resolution file: %s" % exc)
    if kind not in MODULES:
        raise InputError("unknown target %r" % kind)
    target = ch.module_of(f, kind, n)
    pos = {s.id: k for k, (s, _) in enumerate(f.of_dim(n))}
    cx = parsed.complex
    images = []
    for g, (d, amb) in enumerate(zip(cx.term(0).degrees, parsed.augmentation)):
        try:
            amb = {pos[l]: c for l, c in amb.items()}
        except KeyError as exc:
            raise InputError("augmentation names unknown %d-simplex %s" % (n, exc))
        if not target.contains_ambient(d, amb):
            rep = VerifyReport(False, [(0, d, "augmentation image of generator %d is not in "
                                              "the target" % g)])
            return 1, [str(rep)]
        images.append(target.from_ambient(d, amb))
    res = Resolution(cx, target, CoverMap(cx.term(0), target, tuple(images)))
    rep = verify_resolution(res, pad=a.pad)
    return (0 if rep.ok else 1), [str(rep)]


def cmd_onecrit(a):
    text = _read(a.file)
    out = []
    code = 0
    if a.file.endswith(".lsc"):
        x = parse_labelled(text)
    else:
        f = parse(text)
        x = labelled_complex(f)
        eq = check_equality_with_C(f, x)
        out.append("equal_to_C\t%s" % str(eq).lower())
        code = 0 if eq else 1
    out.insert(0, "one_critical\ttrue")
    for n, h in enumerate(acyclicity_defect(x)):
        out.append("H_%d hilbert" % n)
        out.extend(_hilbert_tsv(h))
        out.append("H_%d betti" % n)
        out.extend(_betti_tsv(betti_numbers(h, max_step=1)))
    return code, out


def cmd_generate(a):
    if a.kind == "lower-star":
        if not a.file:
            raise InputError("generate lower-star needs an input file")
        f = parse_lower_star_input(_read(a.file))
    else:
        rng = random.Random(a.seed)
        if a.one_critical:
            f = random_lower_star(rng, a.r, a.max_simplices, a.max_grade)
        else:
            f = random_filtration(rng, a.r, a.max_simplices, a.max_grade, a.max_antichain)
    return 0, [serialize(f).rstrip("\n")]


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpres", description=(
        "Multipersistent homology modules and their free resolutions."))
    p.add_argument("--field", default="rational", help="rational (default) or fp:<prime>")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check all filtration invariants")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true",
                   help="reject comparable grades instead of keeping the minimal ones")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("slice", help="simplices of X_v")
    s.add_argument("file")
    s.add_argument("--at", required=True, help="grade, e.g. 2,2 or (2,2)")
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("chains", help="fundamental elements and boundary matrices")
    s.add_argument("file")
    s.set_defaults(func=cmd_chains)

    for name, func in (("decompose", cmd_decompose), ("syzygies", cmd_syzygies)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("-n", type=int, default=None)
        s.set_defaults(func=func)

    for name, func in (("hilbert", cmd_hilbert), ("betti", cmd_betti)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--module", choices=MODULES, default="homology")
        s.add_argument("-n", type=int, default=0)
        s.add_argument("--pad", type=int, default=0, help="enlarge the grid by this much")
        if name == "betti":
            s.add_argument("--max-step", type=int, default=None)
        s.set_defaults(func=func)

    s = sub.add_parser("resolve", help="free resolution of a module of the filtration")
    s.add_argument("file")
    s.add_argument("--target", choices=MODULES, default="homology")
    s.add_argument("-n", type=int, default=0)
    s.add_argument("--minimize", action="store_true")
    s.add_argument("--minimal-p", action="store_true",
                   help="resolve C_n minimally instead of by Taylor complexes")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("verify", help="re-check a serialized resolution")
    s.add_argument("file")
    s.add_argument("resolution")
    s.add_argument("--pad", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("onecrit", help="labelled-complex pathway for one-critical input")
    s.add_argument("file", help=".mfil filtration or .lsc labelled complex")
    s.set_defaults(func=cmd_onecrit)

    s = sub.add_parser("generate", help="emit .mfil text")
    s.add_argument("kind", choices=("lower-star", "random"))
    s.add_argument("file", nargs="?")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--max-simplices", type=int, default=30)
    s.add_argument("--max-grade", type=int, default=4)
    s.add_argument("--max-antichain", type=int, default=3)
    s.add_argument("--one-critical", action="store_true")
    s.set_defaults(func=cmd_generate)
    return p


def run(argv) -> tuple:
    """Returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        set_field(a.field)
    except ValueError as exc:
        return 2, "", "error: %s\n" % exc
    try:
        code, lines = a.func(a)
    except (InputError, FiltrationError) as exc:
        return 2, "", "error: %s\n" % exc
    finally:
        set_field("rational")
    return code, "\n".join(lines) + "\n", ""


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
