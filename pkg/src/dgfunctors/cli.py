"""Command-line interface.

Exit codes: 0 on success or an empty report, 1 when a check fails, 2 on
input errors.  Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import chains, derived, enriched, functors, laws, translation
from .chains import ChainComplex
from .errors import AxiomError, InvariantError
from .linalg import RingSpec, ShapeError, RingMismatch
from .report import Report
from .textio import Document, ParseError, UnsupportedVersion, dumps, read_file

# subcommand -> the module operation it delegates to
COMMANDS = {
    "tensor": "chains.tensor_complex",
    "hom": "chains.hom_complex",
    "homology": "chains.homology",
    "sym-check": "laws.check_symmetry",
    "adjunction-check": "laws.check_adjunction",
    "axioms": "enriched.check_category_axioms / check_functor_axioms / check_vnat",
    "yoneda": "functors.yoneda_check",
    "coend": "functors.coend_check",
    "translate": "translation.to_dg_functor / to_functor_complex",
    "derived-hom": "derived.derived_hom_V",
    "natural-iso": "derived.natural_iso_check",
    "detect-acyclic": "derived.detect_acyclic",
    "compactness": "derived.compactness_check",
    "self-test": "cli.COMMANDS",
}


class InputError(Exception):
    pass


def _load(path: str, args, kinds: tuple) -> Document:
    doc = read_file(path, verify_axioms=args.verify_axioms)
    if doc.kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, found {doc.kind}")
    if args.ring is not None and RingSpec.parse(args.ring) != doc.ring:
        raise InputError(f"{path}: ring {doc.ring} does not match --ring {args.ring}")
    return doc


def _degrees(args, default: range) -> list[int]:
    if args.degree is not None:
        return [args.degree]
    if args.range is not None:
        try:
            lo, hi = (int(x) for x in args.range.split(":"))
        except ValueError:
            raise InputError(f"--range expects LO:HI, got {args.range!r}")
        if hi < lo:
            raise InputError("--range upper end is below the lower end")
        return list(range(lo, hi + 1))
    return list(default)


def _map(args, fn, items):
    items = list(items)
    if args.jobs and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _emit_reports(reports) -> int:
    out = sys.stdout
    for rep in reports:
        out.write(rep.render())
    return 0 if all(r.ok for r in reports) else 1


# --------------------------------------------------------------------------
# subcommands


def cmd_tensor(args) -> int:
    X = _load(args.files[0], args, ("complex",)).value
    Y = _load(args.files[1], args, ("complex",)).value
    sys.stdout.write(dumps(chains.tensor_complex(X, Y)))
    return 0


def cmd_hom(args) -> int:
    X = _load(args.files[0], args, ("complex",)).value
    Y = _load(args.files[1], args, ("complex",)).value
    sys.stdout.write(dumps(chains.hom_complex(X, Y)))
    return 0


def cmd_homology(args) -> int:
    X = _load(args.files[0], args, ("complex",)).value
    for n in _degrees(args, X.degrees()):
        H = chains.homology(X, n)
        factors = " ".join(map(str, H.invariant_factors)) or "-"
        sys.stdout.write(f"H {n} = {H}  free-rank {H.free_rank} invariant-factors {factors}\n")
    return 0


def cmd_sym_check(args) -> int:
    X = _load(args.files[0], args, ("complex",)).value
    Y = _load(args.files[1], args, ("complex",)).value
    return _emit_reports([laws.check_symmetry(X, Y), laws.check_composition_sign(X, Y, X)])


def cmd_adjunction_check(args) -> int:
    X, Y, Z = (_load(f, args, ("complex",)).value for f in args.files[:3])
    return _emit_reports([laws.check_adjunction(X, Y, Z, samples=args.samples, seed=args.seed)])


def cmd_axioms(args) -> int:
    doc = _load(args.files[0], args, ("v-category", "v-functor", "v-nat", "dg-functor",
                                      "functor-complex"))
    v = doc.value
    if doc.kind == "v-category":
        rep = enriched.check_category_axioms(v)
    elif doc.kind == "v-functor":
        rep = enriched.check_category_axioms(v.source)
        rep.title += "; " + "enriched functor axioms (composition, unit)"
        rep.extend(enriched.check_functor_axioms(v))
    elif doc.kind == "v-nat":
        rep = enriched.check_vnat(v)
    elif doc.kind == "dg-functor":
        rep = translation.check_dg_functor(v)
    else:
        rep = v.check()
    return _emit_reports([rep])


def _objects(args, C) -> list[str]:
    if args.object:
        for c in args.object:
            if c not in C.objects:
                raise InputError(f"unknown object {c!r}")
        return list(args.object)
    return list(C.objects)


def cmd_yoneda(args) -> int:
    F = _load(args.files[0], args, ("v-functor",)).value
    C = F.source
    objs = _objects(args, C)
    witnesses = _map(args, lambda c: functors.yoneda_check(C, c, F), objs)
    for c, w in zip(objs, witnesses):
        w.report.notes.append(f"object {c}")
    return _emit_reports([w.report for w in witnesses])


def cmd_coend(args) -> int:
    F = _load(args.files[0], args, ("v-functor",)).value
    w = functors.coend_check(F.source, F)
    out = sys.stdout
    code = _emit_reports([w.report])
    for d in F.source.objects:
        out.write(f"coend at {d}: rank {w.backward[d].nrows}\n")
    return code


def cmd_translate(args) -> int:
    doc = _load(args.files[0], args, ("functor-complex", "dg-functor"))
    if doc.kind == "functor-complex":
        sys.stdout.write(dumps(translation.to_dg_functor(doc.value)))
    else:
        sys.stdout.write(dumps(translation.to_functor_complex(doc.value)))
    return 0


def cmd_derived_hom(args) -> int:
    Q = _load(args.files[0], args, ("complex",)).value
    X = _load(args.files[1], args, ("complex",)).value
    H = chains.hom_complex(Q, X)
    for n in _degrees(args, H.degrees()):
        sys.stdout.write(f"derived-hom {n} = {derived.derived_hom_V(Q, X, n)}\n")
    return 0


def _generators(args, ring) -> list[ChainComplex]:
    Qs = [ChainComplex.unit(ring)]
    for path in args.generator or []:
        Q = _load(path, args, ("complex",)).value
        if Q.ring != ring:
            raise InputError(f"{path}: generator lives over {Q.ring}")
        Qs.append(Q)
    return Qs


def _hom_window(Q: ChainComplex, X) -> range:
    return range(X.lo - Q.hi - 1, X.hi - Q.lo + 2)


def cmd_natural_iso(args) -> int:
    X = _load(args.files[0], args, ("functor-complex",)).value
    C = X.category
    g = None
    if args.test_morphism:
        g = _load(args.test_morphism, args, ("functor-chain-map",)).value
        if g.source != X:
            raise InputError("test morphism does not start at the given complex")
    gens = list(enumerate(_generators(args, C.ring)))
    cells = [(c, k, Q) for c in _objects(args, C) for k, Q in gens]
    reports = _map(args, lambda ckq: derived.natural_iso_check(
        C, ckq[0], ckq[2], X, _degrees(args, _hom_window(ckq[2], X)), g), cells)
    for (c, k, _), rep in zip(cells, reports):
        rep.notes.append(f"object {c}, generator {k} (0 is the unit complex)")
    return _emit_reports(reports)


def cmd_detect_acyclic(args) -> int:
    X = _load(args.files[0], args, ("functor-complex",)).value
    C = X.category
    Qs = _generators(args, C.ring)
    degs = _degrees(args, range(min(_hom_window(Q, X).start for Q in Qs),
                                max(_hom_window(Q, X).stop for Q in Qs)))
    detected = derived.detect_acyclic(C, X, Qs, degs)
    direct = derived.pointwise_acyclic(X)
    sys.stdout.write(f"# note: {derived.SCALE_NOTE}\n")
    sys.stdout.write(f"detected-acyclic {str(detected).lower()}\n")
    sys.stdout.write(f"pointwise-acyclic {str(direct).lower()}\n")
    return 0 if detected == direct else 1


def cmd_compactness(args) -> int:
    Xs = [_load(f, args, ("functor-complex",)).value for f in args.files]
    C = Xs[0].category
    for X in Xs[1:]:
        if X.category != C:
            raise InputError("complexes live on different categories")
    Qs = _generators(args, C.ring)
    cells = [(c, Q, n) for c in _objects(args, C) for Q in Qs
             for n in _degrees(args, range(-1, 2))]
    reports = _map(args, lambda cqn: derived.compactness_check(C, cqn[0], cqn[1], Xs, cqn[2]),
                   cells)
    merged = Report("compactness of the generator on finite direct sums",
                    notes=[derived.SCALE_NOTE])
    for r in reports:
        merged.extend(r)
    return _emit_reports([merged])


def cmd_self_test(args) -> int:
    parser = build_parser()
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    registered = set(sub.choices)
    missing = registered ^ set(COMMANDS)
    for name in sorted(COMMANDS):
        sys.stdout.write(f"{name} -> {COMMANDS[name]}\n")
    if missing:
        sys.stdout.write(f"unmapped: {' '.join(sorted(missing))}\n")
        return 1
    return 0


HANDLERS = {
    "tensor": (cmd_tensor, 2), "hom": (cmd_hom, 2), "homology": (cmd_homology, 1),
    "sym-check": (cmd_sym_check, 2), "adjunction-check": (cmd_adjunction_check, 3),
    "axioms": (cmd_axioms, 1), "yoneda": (cmd_yoneda, 1), "coend": (cmd_coend, 1),
    "translate": (cmd_translate, 1), "derived-hom": (cmd_derived_hom, 2),
    "natural-iso": (cmd_natural_iso, 1), "detect-acyclic": (cmd_detect_acyclic, 1),
    "compactness": (cmd_compactness, "+"), "self-test": (cmd_self_test, 0),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="require inputs over this ring (Q, Z, F<p>)")
    common.add_argument("--degree", type=int, help="single degree to compute")
    common.add_argument("--range", help="degree range LO:HI (inclusive)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--verify-axioms", action="store_true",
                        help="check category/functor axioms while parsing")
    common.add_argument("--jobs", type=int, default=1, help="internal parallelism")
    parser = argparse.ArgumentParser(prog="dgfunctors",
                                     description="Exact computations with enriched functors "
                                                 "and chain complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nfiles) in HANDLERS.items():
        p = sub.add_parser(name, parents=[common], help=COMMANDS[name])
        if nfiles == "+":
            p.add_argument("files", nargs="+")
        elif nfiles:
            p.add_argument("files", nargs=nfiles)
        if name in ("yoneda", "natural-iso", "compactness"):
            p.add_argument("--object", action="append", help="object of the category (repeatable)")
        if name in ("natural-iso", "detect-acyclic", "compactness"):
            p.add_argument("--generator", action="append",
                           help="extra generator complex file (the unit complex is always used)")
        if name == "natural-iso":
            p.add_argument("--test-morphism", help="functor-chain-map file for the naturality check")
        if name == "adjunction-check":
            p.add_argument("--samples", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.ring is not None:
        try:
            RingSpec.parse(args.ring)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    handler = HANDLERS[args.command][0]
    try:
        return handler(args)
    except (ParseError, UnsupportedVersion, InvariantError, InputError, OSError, ShapeError,
            RingMismatch, AxiomError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
