"""Command-line interface.

Exit codes: 0 on success (including a "no" answer from ``isom``), 1 when
the datum fails a semantic check, 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import decorated, deformation, delzant, document, isomorphism, plot
from .decorated import DecoratedPolytope, NotALattice
from .deformation import DeformationError, DeformationFamily
from .polytope import PolytopeError

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE = 0, 1, 2


class SemanticFailure(Exception):
    """Raised by a subcommand to report a check failure with exit code 1."""


def _load(path: str):
    return document.load(path)


def _polytope(datum) -> DecoratedPolytope:
    return datum.start_datum() if isinstance(datum, DeformationFamily) else datum


def _family(datum) -> DeformationFamily:
    if not isinstance(datum, DeformationFamily):
        raise SemanticFailure("this command needs a document with a deformation section")
    return datum


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _emit(out, args, human: str, doc) -> None:
    if args.format == "doc":
        out.write(doc if isinstance(doc, str) else document.dumps(doc))
    else:
        out.write(human.rstrip("\n") + "\n")


# -- subcommands ------------------------------------------------------------


def cmd_validate(args, out) -> int:
    D = _polytope(_load(args.file))
    report = decorated.validate(D)
    cls = decorated.classify(D) if report.valid else None
    doc = {
        "valid": report.valid,
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks],
        "classification": None if cls is None else str(cls.kind),
    }
    if report.valid:
        human = f"valid; classification: {cls.kind}\n{report}"
    else:
        human = f"invalid\n{report}"
    _emit(out, args, human, doc)
    return EXIT_OK if report.valid else EXIT_SEMANTIC


def cmd_info(args, out) -> int:
    D = _polytope(_load(args.file))
    decorated.require_valid(D)
    cls = decorated.classify(D)
    table = decorated.isotropy_table(D)
    try:
        labels: Optional[tuple] = decorated.lt_labels(D)
    except NotALattice:
        labels = None
    lines = [f"classification: {cls}", f"image rank: {D.quasilattice.image_rank()} (n = {D.n})"]
    lines.append("vertices:")
    for v in D.polytope.vertices():
        lines.append(f"  {_vec(v.point)}  [{'∩'.join(f'f{i + 1}' for i in v.active_set)}]")
    lines.append("isotropy:")
    width = max(len(f.label()) for f, _ in table)
    for f, H in table:
        lines.append(f"  {f.label():<{width}} ↦ {H}")
    if labels is not None:
        lines.append("Lerman-Tolman labels: " + ", ".join(str(k) for k in labels))
    doc = {
        "classification": str(cls.kind),
        "global_isotropy": str(cls.global_isotropy),
        "isotropy": [
            {"face": f.label(), "dim": f.dim, "group": str(H), "free_rank": H.free_rank, "torsion": list(H.torsion)}
            for f, H in table
        ],
        "lt_labels": None if labels is None else list(labels),
    }
    _emit(out, args, "\n".join(lines), doc)
    return EXIT_OK


def cmd_isom(args, out) -> int:
    D = _polytope(_load(args.first))
    E = _polytope(_load(args.second))
    decorated.require_valid(D)
    decorated.require_valid(E)
    w = isomorphism.are_isomorphic(D, E)
    if w is None:
        _emit(out, args, "no", {"isomorphic": False})
        return EXIT_OK
    problems = isomorphism.verify_witness(D, E, w)
    if problems:
        raise SemanticFailure("witness failed verification: " + "; ".join(problems))
    human = "\n".join(
        [
            "yes",
            "T = " + "; ".join(_vec(r) for r in w.T),
            "c = " + _vec(w.c),
            "sigma: " + ", ".join(f"f{i + 1}->f{j + 1}" for i, j in enumerate(w.sigma)),
        ]
    )
    doc = {
        "isomorphic": True,
        "T": [[document.encode_element(x) for x in r] for r in w.T],
        "c": [document.encode_element(x) for x in w.c],
        "sigma": [j + 1 for j in w.sigma],
    }
    _emit(out, args, human, doc)
    return EXIT_OK


def _family_report_doc(report) -> dict:
    return {
        "ok": report.ok,
        "samples": report.samples,
        "failure": None if report.ok else str(report.failure),
        "tau": None if report.ok or not hasattr(report.failure, "tau") else str(report.failure.tau),
    }


def cmd_deform_validate(args, out) -> int:
    F = _family(_load(args.file))
    report = deformation.validate_family(F, args.samples)
    doc = _family_report_doc(report)
    human = str(report)
    if args.certify:
        cert = deformation.certify_family(F)
        doc["certificate"] = {"certified": cert.certified, "detail": cert.detail}
        human += f"\ncertificate: {'yes' if cert.certified else 'no'} ({cert.detail})"
    _emit(out, args, human, doc)
    return EXIT_OK if report.ok else EXIT_SEMANTIC


def cmd_rationalize(args, out) -> int:
    D = _polytope(_load(args.file))
    F = deformation.rationalize(D, args.denom, args.samples)
    end = F.end_datum()
    human = "\n".join(
        [
            f"family valid at {args.samples} samples (denominator bound {args.denom})",
            "end generators: " + ", ".join(_vec(g) for g in F.end.generators),
            "end offsets: " + ", ".join(str(L) for L in end.offsets),
            f"end classification: {decorated.classify(end)}",
        ]
    )
    _emit(out, args, human, F)
    return EXIT_OK


def cmd_orbifoldize(args, out) -> int:
    D = _polytope(_load(args.file))
    report = deformation.to_orbifold_pipeline(D, args.samples)
    _emit(out, args, str(report), report.family)
    return EXIT_OK


def cmd_delzant(args, out) -> int:
    D = _polytope(_load(args.file))
    data = delzant.compile_data(D)
    checks = delzant.verify_vertex_lattices(D, data)
    lines = [f"lambda: R^{data.d} -> R^{data.n}"]
    lines += [f"  lambda_{i + 1} = {_vec(data.normal(i))}" for i in range(data.d)]
    lines.append("kernel basis:")
    lines += [f"  {_vec(v)}" for v in data.kernel_basis] or ["  (none)"]
    lines.append("level set (t_j = pi |z_j|^2 >= 0):")
    lines += [f"  {q}" for q in data.quadrics] or ["  (no constraints)"]
    lines.append("vertex lattices:")
    lines += [f"  {'ok  ' if c.ok else 'FAIL'} {_vec(i + 1 for i in c.active_set)}: {c.detail}" for c in checks]
    _emit(out, args, "\n".join(lines), data)
    if not all(c.ok for c in checks):
        bad = next(c for c in checks if not c.ok)
        raise SemanticFailure(f"vertex lattice mismatch at facets {_vec(i + 1 for i in bad.active_set)}")
    return EXIT_OK


def cmd_sample(args, out) -> int:
    D = _polytope(_load(args.file))
    data = delzant.compile_data(D)
    samples = delzant.sample_level_set(data, args.count, args.seed)
    delzant.write_samples_csv(samples, args.seed, out)
    return EXIT_OK if all(s.exact for s in samples) else EXIT_SEMANTIC


def cmd_plot(args, out) -> int:
    datum = _load(args.file)
    if isinstance(datum, DeformationFamily):
        for k in range(args.frames):
            decorated.require_valid(datum.evaluate(Fraction(k, max(args.frames - 1, 1))))
    else:
        decorated.require_valid(datum)
    try:
        out.write(plot.render(datum, args.frames))
    except plot.NotPlanar as exc:
        raise SemanticFailure(str(exc)) from exc
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stackypoly", description="Decorated polytopes and their toric stacks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, files=("file",)):
        sp = sub.add_parser(name, help=help_)
        for f in files:
            sp.add_argument(f)
        sp.add_argument("--format", choices=("human", "doc"), default="human")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check a datum and classify it")
    add("info", cmd_info, "classification, isotropy table and labels")
    add("isom", cmd_isom, "decide whether two data are isomorphic", files=("first", "second"))
    sp = add("deform-validate", cmd_deform_validate, "validate a deformation family")
    sp.add_argument("--samples", type=int, default=deformation.DEFAULT_SAMPLES)
    sp.add_argument("--certify", action="store_true", help="also run the exact certificate (rational data)")
    sp = add("rationalize", cmd_rationalize, "deform to a rational datum")
    sp.add_argument("--denom", type=int, required=True)
    sp.add_argument("--samples", type=int, default=deformation.DEFAULT_SAMPLES)
    sp = add("orbifoldize", cmd_orbifoldize, "deform to an orbifold-type datum")
    sp.add_argument("--samples", type=int, default=deformation.DEFAULT_SAMPLES)
    add("delzant", cmd_delzant, "compile Delzant construction data")
    sp = add("sample", cmd_sample, "sample the level set as CSV")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("plot", cmd_plot, "SVG of a planar polytope or family")
    sp.add_argument("--frames", type=int, default=5)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (document.DocumentError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (SemanticFailure, PolytopeError, DeformationError, decorated.InvalidDecoration,
            delzant.EmptyInterior) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_SEMANTIC
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEMANTIC


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else EXIT_PARSE
    sys.exit(code)


if __name__ == "__main__":
    main()
