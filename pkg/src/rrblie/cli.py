"""Command line front end: parse a problem document, dispatch to the
decision procedures, and emit deterministic reports and certificates.

Exit codes: 0 affirmative, 1 negative, 2 unknown/undecidable, 64 input
errors.  Reports are byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .auto_inducibility import (
    TotalAutomorphism,
    validate_aut_pair,
    validate_total_automorphism,
    verify_wells_exactness,
    wells_map,
)
from .auto_inducibility import inducible as inducible_auto
from .cohomology import DEFAULT_MAX_DEGREE, cohomology_dim
from .core import (
    validate_derivation,
    validate_hom,
    validate_lie,
    validate_representation,
    validate_rrb,
    validate_rrb_representation,
)
from .der_inducibility import (
    CoeffDerivationPair,
    inducible_der,
    validate_total_derivation,
    verify_der_exactness,
    wells_der,
)
from .errors import (
    BoundExceeded,
    InvalidCocycle,
    ModeUnsupported,
    RRBLieError,
)
from .errors import InvalidInput
from .extensions import (
    DEFAULT_SEARCH_BOUND,
    EquivalenceWitness,
    canonical_extension,
    cocycles_equivalent,
    equivalence_violations,
    extensions_equivalent,
    find_section,
    induced_cocycle,
    twisted_algebra,
    validate_extension,
    validate_nab_cocycle,
    validate_section,
)

AFFIRMATIVE = {"valid", "equivalent", "inducible", "trivial"}
NEGATIVE = {"invalid", "not-equivalent", "not-inducible", "non-trivial"}

MODES = {None: "auto", "verify": "verify", "search": "search-finite", "linear": "linear-abelian"}

KIND_LABELS = {
    "lie_algebras": "lie",
    "representations": "representation",
    "rrb_algebras": "rrb",
    "coefficients": "coefficients",
    "cocycles": "cocycle",
    "extensions": "extension",
    "sections": "section",
    "automorphism_pairs": "automorphism pair",
    "derivation_pairs": "derivation pair",
}


class Result:
    """Certificate data: verdict plus optional witness matrices, first
    violation, dimension/cardinality counts, and extra report lines."""

    def __init__(self, verdict, witness=None, violation=None, counts=None, lines=None):
        self.verdict = verdict
        self.witness = witness
        self.violation = violation
        self.counts = counts
        self.lines = lines or []


def _fmt_scalar(field, x):
    return field.to_str(x)


def _fmt_matrix(m):
    rows = [
        "[" + ", ".join(_fmt_scalar(m.field, x) for x in row) + "]"
        for row in m.entries
    ]
    return "[" + ", ".join(rows) + "]"


def _fmt_violation(v):
    if v.indices:
        return f"{v.tag} at ({', '.join(str(i) for i in v.indices)})"
    return str(v.tag)


def _need_arg(args, key):
    if key not in args:
        raise InvalidInput(f"task.args: missing {key!r}")
    value = args[key]
    if not isinstance(value, str):
        raise InvalidInput(f"task.args.{key}: expected an object name")
    return value


def _get_section(doc, args, e):
    if "section" in args:
        return doc.lookup("sections", _need_arg(args, "section"))
    return find_section(e)


def _parse_eq_witness(doc, node, c, where="task.args.witness"):
    if not isinstance(node, dict):
        raise InvalidInput(f"{where}: expected an object")
    zeta = io.matrix_from_json(
        doc.field,
        io._need(node, "zeta", where, list),
        c.coeff.dim_a,
        c.base.dim_a,
        f"{where}.zeta",
    )
    eta = io.matrix_from_json(
        doc.field,
        io._need(node, "eta", where, list),
        c.coeff.dim_v,
        c.base.dim_v,
        f"{where}.eta",
    )
    return EquivalenceWitness(zeta, eta)


def _witness_report(witness):
    out = {}
    if witness is None:
        return out
    out["zeta"] = witness.zeta
    out["eta"] = witness.eta
    return out


def run_validate(doc, args, opts):
    name = _need_arg(args, "target")
    kinds = doc.kind_of(name)
    if "kind" in args:
        want = args["kind"]
        if want not in KIND_LABELS:
            raise InvalidInput(f"task.args.kind: unknown kind {want!r}")
        kinds = [k for k in kinds if k == want]
    if not kinds:
        raise InvalidInput(f"task.args.target: no object named {name!r}")
    if len(kinds) > 1:
        raise InvalidInput(
            f"task.args.target: {name!r} is ambiguous across kinds; add 'kind'"
        )
    kind = kinds[0]
    obj = doc.objects[kind][name]
    if kind == "lie_algebras":
        rep = validate_lie(obj)
    elif kind == "representations":
        rep = validate_representation(obj)
    elif kind == "rrb_algebras":
        rep = validate_rrb(obj)
    elif kind == "coefficients":
        rep = validate_rrb_representation(obj)
    elif kind == "cocycles":
        rep = validate_nab_cocycle(obj.base, obj.coeff, obj)
    elif kind == "extensions":
        rep = validate_extension(obj)
    elif kind == "sections":
        e = doc.lookup("extensions", doc.refs["sections"][name]["extension"])
        rep = validate_section(e, obj)
    elif kind == "automorphism_pairs":
        ref = doc.refs["automorphism_pairs"][name]
        rep = validate_aut_pair(
            doc.lookup("rrb_algebras", ref["base"]),
            doc.lookup("rrb_algebras", ref["coeff"]),
            obj,
        )
    else:
        base = doc.lookup("rrb_algebras", doc.refs["derivation_pairs"][name]["base"])
        pair = obj.d_aa if isinstance(obj, CoeffDerivationPair) else obj
        rep = validate_derivation(base, pair)
    label = KIND_LABELS[kind]
    if rep.ok:
        return Result("valid", lines=[f"{label}: valid"])
    v = rep.first
    return Result(
        "invalid", violation=v, lines=[f"{label}: invalid ({_fmt_violation(v)})"]
    )


def run_cohomology(doc, args, opts):
    ctx = doc.lookup("coefficients", _need_arg(args, "context"))
    if opts.degree is not None:
        degrees = [opts.degree]
    else:
        degrees = [1, 2]
    counts = {}
    lines = []
    for n in degrees:
        d = cohomology_dim(ctx, n)
        counts[f"H^{n}"] = d
        lines.append(f"dim H^{n} = {d}")
    return Result("valid", counts=counts, lines=lines)


def run_check_cocycle(doc, args, opts):
    c = doc.lookup("cocycles", _need_arg(args, "cocycle"))
    rep = validate_nab_cocycle(c.base, c.coeff, c)
    if rep.ok:
        return Result("valid", lines=["cocycle: valid"])
    v = rep.first
    return Result(
        "invalid", violation=v, lines=[f"cocycle: invalid ({_fmt_violation(v)})"]
    )


def run_extend(doc, args, opts):
    c = doc.lookup("cocycles", _need_arg(args, "cocycle"))
    try:
        total = twisted_algebra(c.base, c.coeff, c)
    except InvalidCocycle as exc:
        raise InvalidInput(f"input cocycle invalid: {exc}") from None
    e, s = canonical_extension(c.base, c.coeff, c)
    assert validate_extension(e).ok and validate_section(e, s).ok
    assert induced_cocycle(e, s) == c
    counts = {"total_dim_a": total.dim_a, "total_dim_v": total.dim_v}
    lines = [
        "extension: valid",
        f"dim total algebra = {total.dim_a}",
        f"dim total module = {total.dim_v}",
    ]
    return Result("valid", counts=counts, lines=lines)


def run_equiv(doc, args, opts):
    mode = MODES[opts.mode]
    bound = opts.bound if opts.bound is not None else DEFAULT_SEARCH_BOUND
    if "first_extension" in args or "second_extension" in args:
        e1 = doc.lookup("extensions", _need_arg(args, "first_extension"))
        e2 = doc.lookup("extensions", _need_arg(args, "second_extension"))
        witness = None
        if "witness" in args:
            node = args["witness"]
            if not isinstance(node, dict):
                raise InvalidInput("task.args.witness: expected an object")
            if "zeta" in node:
                witness = _parse_eq_witness(doc, node, induced_cocycle(e1, find_section(e1)))
                out = extensions_equivalent(
                    e1, e2, mode=mode, bound=bound, eq_witness=witness
                )
            else:
                hom = io._parse_hom(
                    doc.field,
                    node,
                    e2.total.dim_a,
                    e1.total.dim_a,
                    e2.total.dim_v,
                    e1.total.dim_v,
                    "task.args.witness",
                )
                out = extensions_equivalent(e1, e2, witness=hom, mode=mode, bound=bound)
        else:
            out = extensions_equivalent(e1, e2, mode=mode, bound=bound)
        witness_rep = {}
        if out.hom is not None:
            witness_rep["iso_phi"] = out.hom.phi
            witness_rep["iso_psi"] = out.hom.psi
        lines = [f"verdict: {out.verdict}"]
        lines += [f"{k} = {_fmt_matrix(m)}" for k, m in witness_rep.items()]
        return Result(out.verdict, witness=witness_rep or None, lines=lines)
    c1 = doc.lookup("cocycles", _need_arg(args, "first"))
    c2 = doc.lookup("cocycles", _need_arg(args, "second"))
    if c1.base != c2.base or c1.coeff != c2.coeff:
        raise InvalidInput("cocycles live over different base or coefficient")
    witness = None
    if "witness" in args:
        witness = _parse_eq_witness(doc, args["witness"], c1)
    out = cocycles_equivalent(
        c1.base, c1.coeff, c1, c2, mode=mode, witness=witness, bound=bound
    )
    if out.verdict == "equivalent":
        assert not equivalence_violations(c1.base, c1.coeff, c1, c2, out.witness)
    wrep = _witness_report(out.witness)
    lines = [f"verdict: {out.verdict}"]
    lines += [f"{k} = {_fmt_matrix(m)}" for k, m in wrep.items()]
    return Result(out.verdict, witness=wrep or None, lines=lines)


def run_induce_auto(doc, args, opts):
    e = doc.lookup("extensions", _need_arg(args, "extension"))
    p = doc.lookup("automorphism_pairs", _need_arg(args, "pair"))
    s = _get_section(doc, args, e)
    c = induced_cocycle(e, s)
    witness = None
    if "witness" in args:
        witness = _parse_eq_witness(doc, args["witness"], c)
    mode = MODES[opts.mode]
    bound = opts.bound if opts.bound is not None else DEFAULT_SEARCH_BOUND
    out = inducible_auto(e, s, c, p, mode=mode, witness=witness, bound=bound)
    wrep = _witness_report(out.witness)
    if out.hom is not None:
        assert validate_total_automorphism(e, TotalAutomorphism(out.hom)).ok
        wrep["gamma_phi"] = out.hom.phi
        wrep["gamma_psi"] = out.hom.psi
    lines = [f"verdict: {out.verdict}"]
    lines += [f"{k} = {_fmt_matrix(m)}" for k, m in wrep.items()]
    return Result(out.verdict, witness=wrep or None, lines=lines)


def run_induce_der(doc, args, opts):
    e = doc.lookup("extensions", _need_arg(args, "extension"))
    d = doc.lookup("derivation_pairs", _need_arg(args, "pair"))
    if not isinstance(d, CoeffDerivationPair):
        raise InvalidInput(
            "task.args.pair: derivation pair needs the coefficient blocks d_b, d_m"
        )
    s = _get_section(doc, args, e)
    out = inducible_der(e, s, d)
    wrep = _witness_report(out.witness)
    if out.derivation is not None:
        assert validate_total_derivation(e, out.derivation).ok
        wrep["gamma_d_a"] = out.derivation.d_e.d_a
        wrep["gamma_d_v"] = out.derivation.d_e.d_v
    lines = [f"verdict: {out.verdict}"]
    lines += [f"{k} = {_fmt_matrix(m)}" for k, m in wrep.items()]
    return Result(out.verdict, witness=wrep or None, lines=lines)


def run_wells(doc, args, opts):
    e = doc.lookup("extensions", _need_arg(args, "extension"))
    name = _need_arg(args, "pair")
    in_auto = name in doc.objects["automorphism_pairs"]
    in_der = name in doc.objects["derivation_pairs"]
    if in_auto and in_der:
        raise InvalidInput(f"task.args.pair: {name!r} is ambiguous")
    if not (in_auto or in_der):
        raise InvalidInput(f"task.args.pair: no pair named {name!r}")
    s = _get_section(doc, args, e)
    if in_auto:
        p = doc.objects["automorphism_pairs"][name]
        mode = MODES[opts.mode]
        bound = opts.bound if opts.bound is not None else DEFAULT_SEARCH_BOUND
        out = wells_map(e, s, p, mode=mode, bound=bound)
    else:
        d = doc.objects["derivation_pairs"][name]
        if not isinstance(d, CoeffDerivationPair):
            raise InvalidInput(
                "task.args.pair: derivation pair needs the coefficient blocks"
            )
        out = wells_der(e, s, d)
    wrep = _witness_report(out.witness)
    lines = [f"verdict: {out.verdict}"]
    lines += [f"{k} = {_fmt_matrix(m)}" for k, m in wrep.items()]
    return Result(out.verdict, witness=wrep or None, lines=lines)


def run_exactness(doc, args, opts):
    e = doc.lookup("extensions", _need_arg(args, "extension"))
    sequence = args.get("sequence", "automorphism")
    if sequence == "automorphism":
        if opts.bound is not None:
            report = verify_wells_exactness(e, bound=opts.bound)
        else:
            report = verify_wells_exactness(e)
    elif sequence == "derivation":
        if opts.bound is not None:
            report = verify_der_exactness(e, bound=opts.bound)
        else:
            report = verify_der_exactness(e)
    else:
        raise InvalidInput(
            "task.args.sequence: expected 'automorphism' or 'derivation'"
        )
    verdict = "valid" if report.ok else "invalid"
    lines = [f"verdict: {verdict}"]
    lines += [f"{k} = {report.counts[k]}" for k in sorted(report.counts)]
    lines += [f"violation: {tag}" for tag, _ in report.violations]
    return Result(verdict, counts=dict(report.counts), lines=lines)


COMMANDS = {
    "validate": run_validate,
    "cohomology": run_cohomology,
    "extend": run_extend,
    "check-cocycle": run_check_cocycle,
    "equiv": run_equiv,
    "induce-auto": run_induce_auto,
    "induce-der": run_induce_der,
    "wells": run_wells,
    "exactness": run_exactness,
}


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (64), not "unknown" (2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="rrblie",
        description="Exact decision procedures for relative Rota-Baxter "
        "Lie algebra extensions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, metavar="FILE")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "cohomology":
            p.add_argument("--degree", type=int, default=None)
        if name in ("equiv", "induce-auto", "wells"):
            p.add_argument("--mode", choices=("verify", "search", "linear"), default=None)
        if name in ("equiv", "induce-auto", "wells", "exactness"):
            p.add_argument("--bound", type=int, default=None)
    return parser


def _emit(result, fmt, out):
    if fmt == "json":
        witness = None
        if result.witness:
            witness = {k: io.matrix_to_json(m) for k, m in result.witness.items()}
        violation = None
        if result.violation is not None:
            violation = {
                "tag": result.violation.tag,
                "indices": list(result.violation.indices),
            }
        payload = {
            "version": io.VERSION,
            "verdict": result.verdict,
            "witness": witness,
            "violation": violation,
            "counts": result.counts,
        }
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for line in result.lines:
            out.write(line + "\n")


def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)
    if not hasattr(opts, "degree"):
        opts.degree = None
    if not hasattr(opts, "mode"):
        opts.mode = None
    if not hasattr(opts, "bound"):
        opts.bound = None
    try:
        doc = io.load_path(opts.input)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except RRBLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    if doc.task is not None and doc.task.command != opts.command:
        print(
            f"error: document task is {doc.task.command!r}, not {opts.command!r}",
            file=sys.stderr,
        )
        return 64
    args = doc.task.args if doc.task is not None else {}
    try:
        result = COMMANDS[opts.command](doc, args, opts)
    except (ModeUnsupported, BoundExceeded) as exc:
        result = Result("unknown", lines=["verdict: unknown", f"reason: {exc}"])
        _emit(result, opts.format, sys.stdout)
        return 2
    except RRBLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    _emit(result, opts.format, sys.stdout)
    if result.verdict in AFFIRMATIVE:
        return 0
    if result.verdict in NEGATIVE:
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
