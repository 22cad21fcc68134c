"""Command line: anncat COMMAND FILE [flags].

Exit codes: 0 when every diagram passes, 1 when any diagram fails (the
witnesses are printed), 2 on input errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from typing import Sequence

from . import ann, loader
from .ann import AnnCat, check_zero_properties, derive_zero_isos, verify_ann
from .constructions import (build_end, build_lambda, check_cxx_condition, check_equivalence, check_faithful,
                            embed_almost_strict, enumerate_end, identity_equivalence, inflate, strictify_plus,
                            strictness_report, transfer_structure, verify_end_almost_strict)
from .constructions.embed import _functor_checks
from .constructions.strict import base_strictness
from .core import FinCategory, identity_functor, validate_category
from .errors import AnnCatError, BoundExceeded, NoSolution, MultipleSolutions, PreconditionFailed, SchemaError, \
    ValidationError
from .examples import BimoduleData, search_constraint_families, search_space_size
from .report import AxiomReport, DiagramReport, Failure, Report, label, machine_lines, text_lines
from .structures import MonoidalData, check_pic
from .terms import parallel

AXIOMS = ("pic", "au", "ann1", "ann2", "ann3", "functor", "all")
COMMANDS = ("check", "zero", "end", "lambda", "embed", "transfer", "strictify", "search")


class InputError(AnnCatError):
    """Flags that do not fit the loaded structure."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anncat", description="Verify and construct Ann-categories.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "check": "run the axiom diagrams",
        "zero": "derive the zero isomorphisms and check their properties",
        "end": "enumerate and verify the endofunctor category",
        "lambda": "build the left-multiplication embedding into End",
        "embed": "strictify the sum and embed into an almost strict category",
        "transfer": "transport the structure along a k-fold inflation",
        "strictify": "strictify the sum on the word category",
        "search": "search constraint families of a bimodule model",
    }
    for name in COMMANDS:
        c = sub.add_parser(name, help=helps[name])
        c.add_argument("file", help="category file or bundled fixture name")
        c.add_argument("--report", choices=("text", "machine"), default="text")
        c.add_argument("--jobs", type=int, default=1, help="worker threads for diagram checks")
        c.add_argument("--probe-depth", type=int, default=3, help="word length bound on lazy categories")
        c.add_argument("--bound", type=int, default=None, help="search or enumeration size limit")
        c.add_argument("--plot", metavar="DIR", default=None, help="also render figures into DIR")
        if name == "check":
            c.add_argument("--axioms", choices=AXIOMS, default="all")
        if name == "transfer":
            c.add_argument("--copies", type=int, default=2, help="multiplicity of the inflation")
        if name == "search":
            c.add_argument("--families", default="c", help="comma separated family names")
    return p


# ---------------------------------------------------------------------------
# commands


def _need_ann(S, what: str) -> AnnCat:
    if not isinstance(S, AnnCat):
        raise InputError(f"{what} needs an Ann-category file")
    return S


def _plus(S) -> MonoidalData:
    if isinstance(S, AnnCat):
        return S.plus
    if isinstance(S, MonoidalData):
        return S
    raise InputError("this command needs a file with a plus section")


def cmd_check(S, args) -> AxiomReport:
    out = AxiomReport()
    if isinstance(S, FinCategory):
        out.sections["category"] = validate_category(S)
        return out
    if isinstance(S, MonoidalData):
        if args.axioms not in ("pic", "all"):
            raise InputError(f"--axioms {args.axioms} needs an Ann-category file")
        out.sections["Pic"] = check_pic(S)
        return out
    if args.axioms == "functor":
        F = identity_functor(S)
        out.sections["functor"] = _functor_checks(F)
        return out
    sections = None
    if args.axioms != "all":
        sections = ann.AXIOM_GROUPS[args.axioms]
    return verify_ann(S, sections=sections)


def cmd_zero(S, args) -> AxiomReport:
    A = _need_ann(S, "zero")
    out = AxiomReport()
    rep = Report("solve")
    d = rep.add(DiagramReport("3.1-unique", "Prop 3.1", ("A",)))
    try:
        Z = derive_zero_isos(A)
    except (NoSolution, MultipleSolutions) as exc:
        d.instances = 1
        d.failures.append(Failure((), kind="violation", detail=str(exc)))
        out.sections["solve"] = rep
        return out
    d.instances = len(A.objects)
    shown = ", ".join(f"{label(x)}:{label(Z.Lhat(x))}/{label(Z.Rhat(x))}" for x in A.objects)
    rep.notes.append(f"Lhat/Rhat: {shown}")
    out.sections["solve"] = rep
    out.sections["zero"] = check_zero_properties(A, Z)
    return out


def cmd_end(S, args) -> AxiomReport:
    P = _plus(S)
    out = AxiomReport()
    pre = base_strictness(P)
    if not pre.passed:
        out.sections["precondition"] = pre
        return out
    objs = enumerate_end(P, bound=args.bound or 10 ** 6)
    E = build_end(P, objects=objs, check=False)
    res = verify_end_almost_strict(E)
    res.sections["strictness"].notes.insert(0, f"{len(objs)} additive endofunctors enumerated")
    out.sections.update(res.sections)
    return out


def cmd_lambda(S, args) -> AxiomReport:
    A = _need_ann(S, "lambda")
    out = AxiomReport()
    pre = base_strictness(A)
    if not pre.passed:
        out.sections["precondition"] = pre
        return out
    lam = build_lambda(A)
    F = lam.functor
    out.sections["faithful"] = check_faithful(F)
    out.sections["Ann-functor"] = _functor_checks(F)
    return out


def cmd_embed(S, args) -> AxiomReport:
    A = _need_ann(S, "embed")
    emb = embed_almost_strict(A, args.probe_depth)
    rep = emb.report
    rep["faithful"].notes.append(f"faithful: {'yes' if emb.faithful else 'no'}")
    rep.sections["c[X,X]=id"] = check_cxx_condition(A)
    return rep


def cmd_transfer(S, args) -> AxiomReport:
    A = _need_ann(S, "transfer")
    out = AxiomReport()
    Ck, E = inflate(A, args.copies)
    out.sections["equivalence"] = check_equivalence(E)
    B, F = transfer_structure(Ck, A, E, check=False)
    res = verify_ann(B)
    for k, sec in res.sections.items():
        out.sections[f"transferred/{k}"] = sec
    out.sections["F"] = _functor_checks(F)
    rep = Report("round-trip")
    d = rep.add(DiagramReport("identity-transfer", "(4.3)", ("name", "X")))
    A2, _ = transfer_structure(A, A, identity_equivalence(A), check=False)
    for i, name in enumerate(ann.FAMILY_NAMES):
        fam, fam2 = A.family(name), A2.family(name)
        k = len(fam.variables)
        for j, t in enumerate(itertools.product(A.objects, repeat=k)):
            d.instances += 1
            if fam(*t) != fam2(*t):
                d.failures.append(Failure((name, t), fam(*t), fam2(*t), "mismatch", "", (i, j)))
    out.sections["round-trip"] = rep
    return out


def cmd_strictify(S, args) -> AxiomReport:
    S2 = strictify_plus(S if isinstance(S, AnnCat) else _plus(S), args.probe_depth)
    out = AxiomReport()
    out.sections["strictify"] = strictness_report(S2)
    return out


def cmd_search(S, args) -> AxiomReport:
    path = loader.resolve(args.file)
    B = _bimodule_of(path)
    names = [n.strip() for n in args.families.split(",") if n.strip()]
    bad = [n for n in names if n not in ann.FAMILY_NAMES]
    if bad:
        raise InputError(f"unknown families: {', '.join(bad)}")
    bound = args.bound or 10 ** 5
    found = search_constraint_families(B, names, bound, jobs=args.jobs)
    rep = Report("search")
    d = rep.add(DiagramReport("zero-cochain", "search", ()))
    d.instances = 1
    if not any(not T.nonzero() for T in found):
        d.failures.append(Failure((), kind="violation", detail="the zero cochain set was rejected"))
    rep.notes.append(f"space {search_space_size(B, names)}, valid {len(found)}")
    for T in found:
        rep.notes.append("valid: " + (_show_cochains(T) or "zero"))
    rep.data["count"] = len(found)
    return AxiomReport({"search": rep})


def _show_cochains(T) -> str:
    parts = []
    for name, table in sorted(T.nonzero().items()):
        parts.append(name + "{" + ", ".join(f"{label(k)}:{v}" for k, v in sorted(table.items())) + "}")
    return " ".join(parts)


def _bimodule_of(path) -> BimoduleData:
    import yaml

    doc = yaml.safe_load(path.read_text())
    gen = doc.get("generator") if isinstance(doc, dict) else None
    if not isinstance(gen, dict) or "ring" not in gen:
        raise InputError("search needs a file with a ring generator")
    ld = loader._Loader({"generator": gen}, {}, path.stem)
    R = ld.ring(gen["ring"])
    B = BimoduleData.regular(R) if gen.get("bimodule", "zero") == "regular" else BimoduleData.zero(R)
    return B


HANDLERS = {
    "check": cmd_check, "zero": cmd_zero, "end": cmd_end, "lambda": cmd_lambda, "embed": cmd_embed,
    "transfer": cmd_transfer, "strictify": cmd_strictify, "search": cmd_search,
}


# ---------------------------------------------------------------------------
# driver


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.jobs < 1 or args.probe_depth < 0:
        print("error: --jobs must be positive and --probe-depth non-negative", file=err)
        return 2
    try:
        S = loader.load(args.file)
        with parallel(args.jobs):
            report = HANDLERS[args.command](S, args)
    except (SchemaError, ValidationError, InputError, BoundExceeded) as exc:
        print(f"error: {exc}", file=err)
        rep = getattr(exc, "report", None)
        if rep is not None:
            for line in text_lines(rep):
                print(line, file=err)
        return 2
    except PreconditionFailed as exc:
        rep = Report("precondition")
        d = rep.add(DiagramReport("precondition", "input", ()))
        d.instances = 1
        d.failures.append(Failure((), kind="violation", detail=str(exc)))
        if exc.report is not None:
            rep.extend(exc.report)
        report = AxiomReport({"precondition": rep})
    lines = machine_lines(report) if args.report == "machine" else text_lines(report)
    if args.report == "text":
        lines.append(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    for line in lines:
        print(line, file=out)
    if args.plot:
        from .plotting import render

        stem = f"{args.command}-{loader.resolve(args.file).stem}"
        for path in render(report, args.plot, stem):
            print(f"figure: {path}", file=err)
    return 0 if report.passed else 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
