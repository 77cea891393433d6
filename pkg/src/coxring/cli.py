"""The ``cox`` command line.

Input and output share one plain-text format, one ``key value`` pair per
line; indented lines continue the previous key and ``#`` starts a comment
line::

    ring F32003[T1..T7]
    grading [[1,1,1,1,1,0,0],[-1,-1,-1,-1,0,1,0],[-1,-1,-1,0,-1,0,1]]
    irrelevant T1*T5, T1*T6        (or: ample [3,-1,-1])
    relations f1; f2
    markers T4*T6, T5*T7, T6*T7

Exit codes: 0 certified, 1 parse or usage error, 2 round budget exhausted,
3 a hypothesis or certificate condition failed.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .graded import GradingMatrix, InhomogeneousError, parse_degree
from .hyperpres import (
    HypothesisError,
    anticanonical_presentation,
    corollaryC_case,
    scroll_type,
    theoremB_presentation,
)
from .localize import (
    LocalizeError,
    PresentedRing,
    RoundBudgetExhausted,
    SingleMarkerError,
    certify_run,
    intersect_localizations,
    verify_presentation,
)
from .polys import CoefficientError, ParseError, PolyRing, field_from_name
from .polys.ring import compress_names, expand_names
from .polys.parsing import parse_polynomials
from .toric import InvalidParamsError, Rank2Params, ToricAmbient, ambient_from_ample, rank2_smooth

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_FAILED = 3

FIXTURE_ENV = "COXRING_FIXTURES"

log = logging.getLogger("coxring")


class DocumentError(ValueError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + msg)


# -- documents ---------------------------------------------------------------

_KEYS = {"label", "ring", "grading", "irrelevant", "ample", "relations", "markers", "pivot",
         "degree", "seed", "adjoined", "base"}
_IGNORED = {"certificate", "adjunction", "timing", "status", "dimension", "fixture", "row", "pruned"}
_RING_RE = re.compile(r"^(Q|QQ|F(\d+))\[(.*)\]$")


@dataclass
class Document:
    ring: PolyRing
    label: str = ""
    grading: GradingMatrix | None = None
    irrelevant: list = field(default_factory=list)
    ample: tuple | None = None
    relations: list = field(default_factory=list)
    markers: list = field(default_factory=list)
    pivot: str | None = None
    degree: tuple | None = None
    seed: int | None = None
    adjoined: list = field(default_factory=list)
    base: list = field(default_factory=list)

    def ambient(self) -> ToricAmbient:
        if self.grading is None:
            raise DocumentError("a grading line is required")
        if self.irrelevant:
            return ToricAmbient(self.ring, self.grading, self.irrelevant, self.label)
        if self.ample is not None:
            return ambient_from_ample(self.ring, self.grading, self.ample, self.label)
        raise DocumentError("an irrelevant or ample line is required")

    def base_ring(self) -> PolyRing:
        names = [nm for nm in self.ring.names if nm not in set(self.adjoined)]
        return PolyRing(names, self.ring.field)


def parse_ring_header(src: str, field_override=None) -> PolyRing:
    m = _RING_RE.match(src.replace(" ", ""))
    if not m:
        raise DocumentError(f"bad ring header {src!r}; expected e.g. F32003[T1..T7] or Q[x,y]")
    fld = field_override or field_from_name(m.group(1))
    return PolyRing(expand_names(m.group(3)), fld)


def _logical_lines(text: str):
    cur = None
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if raw[0] in " \t":
            if cur is None:
                raise DocumentError("continuation line without a key", no)
            cur[2] += " " + raw.strip()
            continue
        if cur is not None:
            yield cur
        key, _, rest = raw.strip().partition(" ")
        cur = [no, key, rest.strip()]
    if cur is not None:
        yield cur


def parse_document(text: str, path: str | None = None, field_override=None) -> Document:
    entries = {}
    for no, key, value in _logical_lines(text):
        if key in _IGNORED:
            continue
        if key not in _KEYS:
            raise DocumentError(f"unknown key {key!r}", no, path)
        if key in entries:
            raise DocumentError(f"duplicate key {key!r}", no, path)
        entries[key] = (no, value)
    if "ring" not in entries:
        raise DocumentError("missing ring line", None, path)
    no, value = entries["ring"]
    try:
        ring = parse_ring_header(value, field_override)
    except (DocumentError, ValueError) as exc:
        raise DocumentError(str(exc), no, path) from exc
    doc = Document(ring)

    def polys(key, sep, target=None):
        if key not in entries:
            return []
        no, value = entries[key]
        try:
            return parse_polynomials(value, target or ring, sep)
        except (ParseError, CoefficientError) as exc:
            raise DocumentError(f"{key}: {exc}", no, path) from exc

    try:
        if "label" in entries:
            doc.label = entries["label"][1]
        if "grading" in entries:
            no, value = entries["grading"]
            doc.grading = GradingMatrix.parse(value, ring.names)
        if "ample" in entries:
            doc.ample = parse_degree(entries["ample"][1])
        if "degree" in entries:
            doc.degree = parse_degree(entries["degree"][1])
        if "seed" in entries:
            doc.seed = int(entries["seed"][1])
        if "pivot" in entries:
            doc.pivot = entries["pivot"][1]
        if "adjoined" in entries:
            doc.adjoined = [s.strip() for s in entries["adjoined"][1].split(",") if s.strip()]
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc), no, path) from exc
    for nm in doc.adjoined:
        if nm not in ring.index:
            raise DocumentError(f"adjoined variable {nm} is not in the ring", entries["adjoined"][0], path)
    doc.irrelevant = polys("irrelevant", ",")
    doc.relations = polys("relations", ";")
    doc.markers = polys("markers", ",")
    if "base" in entries:
        doc.base = polys("base", ";", doc.base_ring())
    if doc.grading is not None and doc.grading.nvars != ring.nvars:
        raise DocumentError(
            f"grading has {doc.grading.nvars} columns for {ring.nvars} variables", entries["grading"][0], path
        )
    return doc


def read_document(path: str, field_override=None) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text, path, field_override)


def _join(polys, sep: str) -> str:
    return sep.join(str(p) for p in polys)


def format_presentation(ring: PolyRing, grading: GradingMatrix, relations, markers=(), *, label="",
                        adjoined=(), base=(), pivot=None, history=(), certificate=None,
                        extra=(), pretty: bool = True) -> str:
    lines = []
    if label:
        lines.append(f"label {label}")
    lines.append(f"ring {ring.field.name}[{compress_names(ring.names)}]")
    lines.append(f"grading {grading.to_text()}")
    if pretty:
        lines.extend("#   " + row for row in grading.with_names(ring.names).format().splitlines())
    if relations:
        lines.append("relations")
        rel = [str(r) for r in relations]
        lines.extend(f"  {r};" for r in rel[:-1])
        lines.append(f"  {rel[-1]}")
    if markers:
        lines.append(f"markers {_join(markers, ', ')}")
    if pivot is not None:
        lines.append(f"pivot {pivot}")
    if adjoined:
        lines.append(f"adjoined {', '.join(adjoined)}")
    for a in history:
        lines.append(f"adjunction {a.name} degree {a.degree} n {a.n} round {a.round}")
    if base:
        lines.append("base")
        b = [str(r) for r in base]
        lines.extend(f"  {r};" for r in b[:-1])
        lines.append(f"  {b[-1]}")
    lines.extend(extra)
    if certificate is not None:
        lines.append("certificate")
        lines.extend("  " + s for s in certificate.format().splitlines())
    return "\n".join(lines) + "\n"


# -- fixtures ------------------------------------------------------------------------


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).with_name("fixtures")


def fixture_names() -> list:
    return sorted(p.stem for p in fixture_dir().glob("*.cox"))


def load_fixture(name: str, field_override=None) -> Document:
    path = fixture_dir() / f"{name}.cox"
    if not path.exists():
        raise DocumentError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    return read_document(str(path), field_override)


# -- commands ------------------------------------------------------------------------


def _field(args):
    return None if args.field is None else field_from_name(args.field)


def _presented(doc: Document, args) -> tuple:
    """(base PresentedRing, seed) from a document plus command-line overrides."""
    seed = args.seed if getattr(args, "seed", None) is not None else doc.seed
    degree = parse_degree(args.degree) if getattr(args, "degree", None) else doc.degree
    relations = list(doc.relations)
    Z = None
    if doc.irrelevant or doc.ample is not None:
        Z = doc.ambient()
    if not relations:
        if Z is None or degree is None:
            raise DocumentError("no relations: give relations, or an ambient with a degree")
        relations = [Z.random_general_polynomial(degree, seed if seed is not None else 0)]
        seed = seed if seed is not None else 0
    if doc.grading is None:
        raise DocumentError("a grading line is required")
    markers = doc.markers
    if getattr(args, "markers", None):
        markers = parse_polynomials(args.markers, doc.ring, ",")
    if not markers:
        if Z is None:
            raise DocumentError("no markers: give markers, or an irrelevant/ample line")
        markers = Z.markers()
    return PresentedRing(doc.ring, relations, doc.grading, markers), seed


def cmd_localize(args) -> int:
    doc = read_document(args.file, _field(args))
    R, seed = _presented(doc, args)
    pivot = args.pivot or doc.pivot
    t0 = time.perf_counter()
    status = EXIT_OK
    try:
        out, cert = intersect_localizations(R, pivot=pivot, max_rounds=args.max_rounds,
                                            prune=not args.no_prune, seed=seed)
    except RoundBudgetExhausted as exc:
        out, cert = exc.partial, exc.certificate
        status = EXIT_BUDGET
    if status == EXIT_OK and not cert.passed:
        status = EXIT_FAILED
    if status == EXIT_OK and args.cross_check:
        cr2 = certify_run(R, out, seed)
        cert.notes.append(f"fraction cross-check: {'passed' if cr2.passed else 'FAILED'}")
        if not cr2.passed:
            status = EXIT_FAILED
    result = out
    if args.eliminate:
        result = out.eliminate_variables([s.strip() for s in args.eliminate.split(",")])
    extra = [f"dimension {result.dimension()}"]
    elapsed = time.perf_counter() - t0
    if args.timing:
        extra.append(f"timing {elapsed:.3f}s")
    base_names = [nm for nm in result.ring.names if nm in R.ring.index]
    sys.stdout.write(format_presentation(
        result.ring, result.grading, result.minimal_relations(), result.markers,
        label=doc.label, adjoined=result.adjoined, history=result.history,
        base=R.ideal.gens if len(base_names) == R.ring.nvars else (),
        pivot=str(R.markers[R.pivot_index(pivot)]), certificate=cert, extra=extra,
        pretty=args.format == "text",
    ))
    if status == EXIT_BUDGET:
        print(f"error: {RoundBudgetExhausted(out, cert)}", file=sys.stderr)
    return status


def cmd_verify(args) -> int:
    doc = read_document(args.file, _field(args))
    if doc.grading is None:
        raise DocumentError("a grading line is required")
    if not doc.relations:
        raise DocumentError("a relations line is required")
    markers = parse_polynomials(args.markers, doc.ring, ",") if args.markers else doc.markers
    if not markers:
        raise DocumentError("markers are required")
    R = PresentedRing(doc.ring, doc.relations, doc.grading, markers)
    base = None
    if doc.adjoined:
        if not doc.base:
            raise DocumentError("adjoined variables need a base line with the original relations")
        bring = doc.base_ring()
        keep = [doc.ring.index[nm] for nm in bring.names]
        base = PresentedRing(bring, doc.base, doc.grading.restrict(keep), [m.to_ring(bring) for m in markers])
    cert = verify_presentation(R, base)
    if not doc.adjoined:
        cert.notes.append("no adjoined variables: 0 adjunctions")
    print("certificate")
    print("\n".join("  " + s for s in cert.format().splitlines()))
    return EXIT_OK if cert.passed else EXIT_FAILED


def _check(cond: bool, msg: str, failures: list) -> None:
    if not cond:
        failures.append(msg)


def cmd_fixtures(args) -> int:
    if args.list or not args.name:
        print("\n".join(fixture_names()))
        return EXIT_OK
    doc = load_fixture(args.name, _field(args))
    t0 = time.perf_counter()
    failures: list = []
    extra = [f"fixture {args.name}"]
    if args.name == "blpp4-deg5":
        Z = doc.ambient()
        f = Z.random_general_polynomial(doc.degree, doc.seed)
        pres = theoremB_presentation(Z, f, seed=doc.seed)
        _check(pres.d == 2 and len(pres.relations) == 3, "expected the 3-relation d=2 presentation", failures)
        degs = sorted(tuple(d) for d in pres.s_degrees())
        _check(degs == [(3, -4), (4, -5)], f"S-degrees {degs}", failures)
        _check(pres.certificate.passed, "certificate failed", failures)
        _finish_extra(extra, failures, t0, args)
        sys.stdout.write(format_presentation(
            pres.ring, pres.grading, pres.relations, pres.markers, label=doc.label,
            adjoined=[f"S{j}" for j in range(1, pres.d + 1)], base=[f], certificate=pres.certificate,
            extra=extra, pretty=args.format == "text"))
        return EXIT_OK if not failures else EXIT_FAILED
    R, seed = _presented(doc, args)
    out, cert = intersect_localizations(R, pivot=doc.pivot, seed=seed)
    result = out
    degs = sorted(tuple(a.degree) for a in out.history)
    if args.name == "bl2p4":
        _check(cert.rounds <= 2, f"{cert.rounds} rounds", failures)
        _check(degs == sorted([(1, 0, -2), (1, -2, 0), (2, -3, -2), (2, -2, -3)]), f"degrees {degs}", failures)
        result = out.eliminate_variables(["T4", "T5"])
        _check(result.ring.nvars == 9, f"{result.ring.nvars} variables after elimination", failures)
        _check(result.dimension() == 6, "dimension after elimination", failures)
        _check(len(result.ideal.gens) == 3, f"{len(result.ideal.gens)} minimal generators", failures)
    elif args.name == "bl2p4-flip":
        _check(degs == sorted([(2, -1, -3), (2, -3, -1)]), f"degrees {degs}", failures)
        _check(len(out.minimal_relations()) == 5, "expected 5 minimal generators", failures)
        _check(out.dimension() == 6, "dimension", failures)
    elif args.name == "cone":
        _check(len(out.history) == 1 and cert.rounds == 1, "expected one generator in one round", failures)
    _check(cert.passed, "certificate failed", failures)
    recheck = verify_presentation(out)  # from scratch, no cached dims
    _check(recheck.passed, "re-verification failed", failures)
    extra.append(f"dimension {result.dimension()}")
    _finish_extra(extra, failures, t0, args)
    sys.stdout.write(format_presentation(
        result.ring, result.grading, result.minimal_relations(), result.markers, label=doc.label,
        adjoined=result.adjoined, history=result.history, certificate=cert, extra=extra,
        pretty=args.format == "text"))
    return EXIT_OK if not failures else EXIT_FAILED


def _finish_extra(extra, failures, t0, args):
    extra.append("status " + ("ok" if not failures else "FAILED: " + "; ".join(failures)))
    if args.timing:
        extra.append(f"timing {time.perf_counter() - t0:.3f}s")


def cmd_hypersurface(args) -> int:
    t0 = time.perf_counter()
    if args.params:
        if args.file:
            raise DocumentError("give either an ambient file or --params, not both")
        Z = rank2_smooth(Rank2Params.parse(args.params), _field(args))
        seed = args.seed if args.seed is not None else 0
        degree = args.degree
    else:
        if not args.file:
            raise DocumentError("an ambient file or --params is required")
        doc = read_document(args.file, _field(args))
        Z = doc.ambient()
        seed = args.seed if args.seed is not None else (doc.seed or 0)
        degree = args.degree or doc.degree
        if len(doc.relations) > 1:
            raise DocumentError("a hypersurface file takes at most one relation")
    if not args.params and doc.relations and not args.degree:
        f = doc.relations[0]
    else:
        if degree is None:
            raise DocumentError("--degree is required")
        f = Z.random_general_polynomial(degree, seed)
    pair = args.pair.split(",") if args.pair else None
    pres = theoremB_presentation(Z, f, dim3_ok=args.dim3_ok, pair=pair, seed=seed)
    extra = [f"seed {seed}"] if not args.params else []
    if args.timing:
        extra.append(f"timing {time.perf_counter() - t0:.3f}s")
    sys.stdout.write(format_presentation(
        pres.ring, pres.grading, pres.relations, pres.markers, label=Z.label,
        adjoined=[f"S{j}" for j in range(1, pres.d + 1)], base=[f], certificate=pres.certificate,
        extra=extra, pretty=args.format == "text"))
    return EXIT_OK if pres.certificate.passed else EXIT_FAILED


def cmd_scroll(args) -> int:
    zeros, ones = scroll_type(args.n, args.d)
    if ones == 0:
        print(f"P^1 x P^{args.n - 2}")
    else:
        print("S(" + ",".join(["0"] * zeros + ["1"] * ones) + ")")
    return EXIT_OK


def cmd_anticanonical(args) -> int:
    p = Rank2Params.parse(args.params)
    row, pres = anticanonical_presentation(p, args.seed, _field(args))
    extra = [f"row {row}", f"seed {args.seed}"]
    adj = [f"S{j}" for j in range(1, pres.d + 1)]
    base = [pres.split.reconstruct()] if pres.split is not None else ()
    sys.stdout.write(format_presentation(
        pres.ring, pres.grading, pres.relations, pres.markers, label=pres.ambient.label,
        adjoined=adj, base=base, certificate=pres.certificate, extra=extra,
        pretty=args.format == "text"))
    if pres.certificate is not None and not pres.certificate.passed:
        return EXIT_FAILED
    return EXIT_OK


def cmd_case(args) -> int:
    res = corollaryC_case(Rank2Params.parse(args.params), args.degree)
    if res.applies:
        print(f"{res.kind} d={res.d}")
        return EXIT_OK
    print(f"not-applicable: {res.reason}")
    return EXIT_FAILED


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cox", description="Cox rings of hypersurfaces via localizations")
    parser.add_argument("-v", "--verbose", action="store_true", help="log per-round progress")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--field", help="Q or a prime p (overrides the file)")
        p.add_argument("--timing", action="store_true", help="append wall-clock timing")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if seed:
            p.add_argument("--seed", type=int)

    p = sub.add_parser("localize", help="intersect localizations at the markers")
    p.add_argument("file")
    p.add_argument("--markers", help="comma-separated marker polynomials")
    p.add_argument("--pivot", help="the marker whose powers are the denominators")
    p.add_argument("--max-rounds", type=int, default=16)
    p.add_argument("--degree", help="degree of a general relation when the file has none")
    p.add_argument("--eliminate", help="comma-separated variables to eliminate afterwards")
    p.add_argument("--no-prune", action="store_true", help="keep redundant adjoined variables")
    p.add_argument("--cross-check", action="store_true", help="also certify the accumulated fractions")
    common(p)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("verify", help="check the two dimension conditions of a presentation")
    p.add_argument("file")
    p.add_argument("--markers")
    p.add_argument("--field")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixtures", help="run a bundled example end to end")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    common(p, seed=False)
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("hypersurface", help="closed-form presentation for a general hypersurface")
    p.add_argument("file", nargs="?")
    p.add_argument("--params", help="rank-two ambient n,k,a1,...,ak instead of a file")
    p.add_argument("--degree")
    p.add_argument("--pair", help="Ta,Tb (default: the codimension-2 component)")
    p.add_argument("--dim3-ok", action="store_true", help="allow three-dimensional ambients")
    common(p)
    p.set_defaults(func=cmd_hypersurface)

    p = sub.add_parser("scroll", help="scroll type of a general [d,1] hypersurface in P^1 x P^(n-1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_scroll)

    p = sub.add_parser("anticanonical", help="general anticanonical hypersurface of a rank-two Fano")
    p.add_argument("--params", required=True, help="n,k,a1,...,ak")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_anticanonical)

    p = sub.add_parser("case", help="which rank-two case applies to a degree")
    p.add_argument("--params", required=True)
    p.add_argument("--degree", required=True)
    p.set_defaults(func=cmd_case)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SingleMarkerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, ParseError, CoefficientError, InvalidParamsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HypothesisError, InhomogeneousError, LocalizeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
