"""JSON problem documents: named algebraic objects plus a task block.

Scalars are integers, "p/q" strings over Q, or residues over F_p; matrices
are row-major nested arrays.  Serialization is canonical (sorted keys,
two-space indent, trailing newline) so identical documents are
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg
from .core import (
    LieAlgebra,
    Representation,
    RRBAlgebra,
    RRBHom,
    RRBRepresentation,
)
from .der_inducibility import CoeffDerivationPair
from .core import DerivationPair
from .auto_inducibility import AutPair
from .errors import FieldMismatch, InvalidInput
from .extensions import Extension, NonAbelianCocycle, Section
from .linalg import Matrix

VERSION = 1

KINDS = (
    "lie_algebras",
    "representations",
    "rrb_algebras",
    "coefficients",
    "cocycles",
    "extensions",
    "sections",
    "automorphism_pairs",
    "derivation_pairs",
)


def scalar_to_json(field, x):
    if field.finite:
        return x.v
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(field, node, where):
    if isinstance(node, bool) or not isinstance(node, (int, str)):
        raise InvalidInput(f"{where}: scalar must be an integer or string")
    try:
        return field.of(node if isinstance(node, int) else Fraction(node))
    except (ValueError, ZeroDivisionError, FieldMismatch) as exc:
        raise InvalidInput(f"{where}: bad scalar {node!r} ({exc})") from None


def matrix_to_json(m):
    return [[scalar_to_json(m.field, x) for x in row] for row in m.entries]


def matrix_from_json(field, node, rows, cols, where):
    if not isinstance(node, list) or len(node) != rows:
        raise InvalidInput(f"{where}: expected {rows} rows")
    entries = []
    for r, row in enumerate(node):
        if not isinstance(row, list) or len(row) != cols:
            raise InvalidInput(f"{where}: row {r} must have {cols} entries")
        entries.append(
            [scalar_from_json(field, x, f"{where}[{r}][{c}]") for c, x in enumerate(row)]
        )
    return Matrix(field, entries, shape=(rows, cols))


def vector_to_json(field, v):
    return [scalar_to_json(field, x) for x in v]


def vector_from_json(field, node, n, where):
    if not isinstance(node, list) or len(node) != n:
        raise InvalidInput(f"{where}: expected a vector of length {n}")
    return tuple(
        scalar_from_json(field, x, f"{where}[{i}]") for i, x in enumerate(node)
    )


def _need(node, key, where, types=None):
    if key not in node:
        raise InvalidInput(f"{where}: missing field {key!r}")
    value = node[key]
    if types is not None and not isinstance(value, types):
        raise InvalidInput(f"{where}.{key}: wrong type")
    return value


def _ref(table, name, where, kind):
    if name not in table:
        raise InvalidInput(f"{where}: undefined {kind} {name!r}")
    return table[name]


class Task:
    __slots__ = ("command", "args")

    def __init__(self, command, args):
        self.command = command
        self.args = args

    def __eq__(self, other):
        return (
            isinstance(other, Task)
            and self.command == other.command
            and self.args == other.args
        )


class Document:
    """Parsed problem file: the field, typed objects by kind and name, the
    task block, and the normalized raw tree used for canonical output."""

    __slots__ = ("field", "objects", "refs", "task", "raw")

    def __init__(self, field, objects, refs, task, raw):
        self.field = field
        self.objects = objects
        self.refs = refs
        self.task = task
        self.raw = raw

    def kind_of(self, name):
        """Kinds holding an object of the given name."""
        return [kind for kind in KINDS if name in self.objects[kind]]

    def lookup(self, kind, name, where="task"):
        return _ref(self.objects[kind], name, where, kind[:-1].replace("_", " "))


def _parse_lie(field, name, node):
    where = f"lie_algebras.{name}"
    bracket = _need(node, "bracket", where, list)
    n = len(bracket)
    tensor = []
    for i, row in enumerate(bracket):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidInput(f"{where}.bracket: row {i} must have {n} cells")
        tensor.append(
            [
                vector_from_json(field, cell, n, f"{where}.bracket[{i}][{j}]")
                for j, cell in enumerate(row)
            ]
        )
    return LieAlgebra(field, tensor)


def _parse_representation(field, name, node, lies):
    where = f"representations.{name}"
    lie = _ref(lies, _need(node, "lie", where, str), where, "lie algebra")
    dim = _need(node, "space_dim", where, int)
    action = _need(node, "action", where, list)
    if len(action) != lie.dim:
        raise InvalidInput(f"{where}.action: need {lie.dim} matrices")
    mats = [
        matrix_from_json(field, m, dim, dim, f"{where}.action[{i}]")
        for i, m in enumerate(action)
    ]
    return Representation(lie, dim, mats)


def _parse_rrb(field, name, node, lies, reps):
    where = f"rrb_algebras.{name}"
    lie = _ref(lies, _need(node, "lie", where, str), where, "lie algebra")
    rep = _ref(reps, _need(node, "representation", where, str), where, "representation")
    t = matrix_from_json(
        field, _need(node, "t", where, list), lie.dim, rep.space_dim, f"{where}.t"
    )
    return RRBAlgebra(lie, rep, t)


def _parse_coefficients(field, name, node, rrbs):
    where = f"coefficients.{name}"
    base = _ref(rrbs, _need(node, "base", where, str), where, "rrb algebra")
    b_dim = _need(node, "b_dim", where, int)
    m_dim = _need(node, "m_dim", where, int)
    s = matrix_from_json(field, _need(node, "s", where, list), b_dim, m_dim, f"{where}.s")
    mats = lambda key, count, r, c: [
        matrix_from_json(field, m, r, c, f"{where}.{key}[{i}]")
        for i, m in enumerate(_need(node, key, where, list))
    ]
    rho_b = mats("rho_b", base.dim_a, b_dim, b_dim)
    rho_m = mats("rho_m", base.dim_a, m_dim, m_dim)
    mu = mats("mu", base.dim_v, m_dim, b_dim)
    if len(rho_b) != base.dim_a or len(rho_m) != base.dim_a or len(mu) != base.dim_v:
        raise InvalidInput(f"{where}: wrong number of coefficient matrices")
    return RRBRepresentation(base, b_dim, m_dim, s, rho_b, rho_m, mu)


def _parse_cocycle(field, name, node, rrbs):
    where = f"cocycles.{name}"
    base = _ref(rrbs, _need(node, "base", where, str), where, "rrb algebra")
    coeff = _ref(rrbs, _need(node, "coeff", where, str), where, "rrb algebra")
    a, v = base.dim_a, base.dim_v
    b, m = coeff.dim_a, coeff.dim_v
    grid = lambda key, rows, cols, n: [
        [
            vector_from_json(field, cell, n, f"{where}.{key}[{i}][{j}]")
            for j, cell in enumerate(row)
        ]
        for i, row in enumerate(_need(node, key, where, list))
    ]
    omega = grid("omega", a, a, b)
    varpi = grid("varpi", a, v, m)
    chi = [
        vector_from_json(field, cell, b, f"{where}.chi[{j}]")
        for j, cell in enumerate(_need(node, "chi", where, list))
    ]
    mats = lambda key, r, c: [
        matrix_from_json(field, mm, r, c, f"{where}.{key}[{i}]")
        for i, mm in enumerate(_need(node, key, where, list))
    ]
    return NonAbelianCocycle(
        base,
        coeff,
        omega,
        varpi,
        chi,
        mats("mu", m, b),
        mats("rho_b", b, b),
        mats("rho_m", m, m),
    )


def _parse_hom(field, node, rows_a, cols_a, rows_v, cols_v, where):
    phi = matrix_from_json(
        field, _need(node, "phi", where, list), rows_a, cols_a, f"{where}.phi"
    )
    psi = matrix_from_json(
        field, _need(node, "psi", where, list), rows_v, cols_v, f"{where}.psi"
    )
    return RRBHom(phi, psi)


def _parse_extension(field, name, node, rrbs):
    where = f"extensions.{name}"
    base = _ref(rrbs, _need(node, "base", where, str), where, "rrb algebra")
    coeff = _ref(rrbs, _need(node, "coeff", where, str), where, "rrb algebra")
    total = _ref(rrbs, _need(node, "total", where, str), where, "rrb algebra")
    inj = _parse_hom(
        field,
        _need(node, "inj", where, dict),
        total.dim_a,
        coeff.dim_a,
        total.dim_v,
        coeff.dim_v,
        f"{where}.inj",
    )
    proj = _parse_hom(
        field,
        _need(node, "proj", where, dict),
        base.dim_a,
        total.dim_a,
        base.dim_v,
        total.dim_v,
        f"{where}.proj",
    )
    return Extension(base, coeff, total, inj, proj)


def _parse_section(field, name, node, exts):
    where = f"sections.{name}"
    ename = _need(node, "extension", where, str)
    e = _ref(exts, ename, where, "extension")
    s_alg = matrix_from_json(
        field,
        _need(node, "s_alg", where, list),
        e.total.dim_a,
        e.base.dim_a,
        f"{where}.s_alg",
    )
    s_mod = matrix_from_json(
        field,
        _need(node, "s_mod", where, list),
        e.total.dim_v,
        e.base.dim_v,
        f"{where}.s_mod",
    )
    return Section(s_alg, s_mod), ename


def _parse_aut_pair(field, name, node, rrbs):
    where = f"automorphism_pairs.{name}"
    base = _ref(rrbs, _need(node, "base", where, str), where, "rrb algebra")
    coeff = _ref(rrbs, _need(node, "coeff", where, str), where, "rrb algebra")
    alpha = _parse_hom(
        field,
        _need(node, "alpha", where, dict),
        base.dim_a,
        base.dim_a,
        base.dim_v,
        base.dim_v,
        f"{where}.alpha",
    )
    beta = _parse_hom(
        field,
        _need(node, "beta", where, dict),
        coeff.dim_a,
        coeff.dim_a,
        coeff.dim_v,
        coeff.dim_v,
        f"{where}.beta",
    )
    return AutPair(alpha, beta), _need(node, "base", where, str), _need(
        node, "coeff", where, str
    )


def _parse_der_pair(field, name, node, rrbs):
    where = f"derivation_pairs.{name}"
    base_name = _need(node, "base", where, str)
    base = _ref(rrbs, base_name, where, "rrb algebra")
    d_a = matrix_from_json(
        field, _need(node, "d_a", where, list), base.dim_a, base.dim_a, f"{where}.d_a"
    )
    d_v = matrix_from_json(
        field, _need(node, "d_v", where, list), base.dim_v, base.dim_v, f"{where}.d_v"
    )
    d_b = None
    d_m = None
    if "d_b" in node or "d_m" in node:
        db_node = _need(node, "d_b", where, list)
        dm_node = _need(node, "d_m", where, list)
        if not db_node or not isinstance(db_node[0], list):
            raise InvalidInput(f"{where}.d_b: expected a matrix")
        b_dim = len(db_node)
        m_dim = len(dm_node)
        d_b = matrix_from_json(field, db_node, b_dim, b_dim, f"{where}.d_b")
        d_m = matrix_from_json(field, dm_node, m_dim, m_dim, f"{where}.d_m")
    pair = DerivationPair(d_a, d_v)
    if d_b is None:
        return pair, base_name
    return CoeffDerivationPair(pair, d_b, d_m), base_name


def parse_document(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise InvalidInput("document: expected an object at top level")
    version = _need(raw, "version", "document", int)
    if version != VERSION:
        raise InvalidInput(f"document.version: unsupported version {version}")
    try:
        field = linalg.parse_field(_need(raw, "field", "document", str))
    except ValueError as exc:
        raise InvalidInput(f"document.field: {exc}") from None
    objects_node = raw.get("objects", {})
    if not isinstance(objects_node, dict):
        raise InvalidInput("document.objects: expected an object")
    for kind in objects_node:
        if kind not in KINDS:
            raise InvalidInput(f"document.objects: unknown kind {kind!r}")
    objects = {kind: {} for kind in KINDS}
    refs = {kind: {} for kind in KINDS}

    def nodes(kind):
        table = objects_node.get(kind, {})
        if not isinstance(table, dict):
            raise InvalidInput(f"objects.{kind}: expected an object")
        for name in sorted(table):
            node = table[name]
            if not isinstance(node, dict):
                raise InvalidInput(f"objects.{kind}.{name}: expected an object")
            yield name, node

    for name, node in nodes("lie_algebras"):
        objects["lie_algebras"][name] = _parse_lie(field, name, node)
    for name, node in nodes("representations"):
        objects["representations"][name] = _parse_representation(
            field, name, node, objects["lie_algebras"]
        )
        refs["representations"][name] = {"lie": node["lie"]}
    for name, node in nodes("rrb_algebras"):
        objects["rrb_algebras"][name] = _parse_rrb(
            field, name, node, objects["lie_algebras"], objects["representations"]
        )
        refs["rrb_algebras"][name] = {
            "lie": node["lie"],
            "representation": node["representation"],
        }
    for name, node in nodes("coefficients"):
        objects["coefficients"][name] = _parse_coefficients(
            field, name, node, objects["rrb_algebras"]
        )
        refs["coefficients"][name] = {"base": node["base"]}
    for name, node in nodes("cocycles"):
        objects["cocycles"][name] = _parse_cocycle(
            field, name, node, objects["rrb_algebras"]
        )
        refs["cocycles"][name] = {"base": node["base"], "coeff": node["coeff"]}
    for name, node in nodes("extensions"):
        objects["extensions"][name] = _parse_extension(
            field, name, node, objects["rrb_algebras"]
        )
        refs["extensions"][name] = {
            "base": node["base"],
            "coeff": node["coeff"],
            "total": node["total"],
        }
    for name, node in nodes("sections"):
        sec, ename = _parse_section(field, name, node, objects["extensions"])
        objects["sections"][name] = sec
        refs["sections"][name] = {"extension": ename}
    for name, node in nodes("automorphism_pairs"):
        pair, bname, cname = _parse_aut_pair(field, name, node, objects["rrb_algebras"])
        objects["automorphism_pairs"][name] = pair
        refs["automorphism_pairs"][name] = {"base": bname, "coeff": cname}
    for name, node in nodes("derivation_pairs"):
        pair, bname = _parse_der_pair(field, name, node, objects["rrb_algebras"])
        objects["derivation_pairs"][name] = pair
        refs["derivation_pairs"][name] = {"base": bname}

    task = None
    if "task" in raw:
        task_node = raw["task"]
        if not isinstance(task_node, dict):
            raise InvalidInput("document.task: expected an object")
        command = _need(task_node, "command", "task", str)
        args = task_node.get("args", {})
        if not isinstance(args, dict):
            raise InvalidInput("task.args: expected an object")
        task = Task(command, args)
    return Document(field, objects, refs, task, raw)


def _lie_node(lie):
    field = lie.field
    return {
        "bracket": [
            [vector_to_json(field, cell) for cell in row] for row in lie.bracket
        ]
    }


def _cocycle_node(c, base_name, coeff_name):
    field = c.field
    return {
        "base": base_name,
        "coeff": coeff_name,
        "omega": [[vector_to_json(field, cell) for cell in row] for row in c.omega],
        "varpi": [[vector_to_json(field, cell) for cell in row] for row in c.varpi],
        "chi": [vector_to_json(field, cell) for cell in c.chi],
        "mu": [matrix_to_json(m) for m in c.mu],
        "rho_b": [matrix_to_json(m) for m in c.rho_b],
        "rho_m": [matrix_to_json(m) for m in c.rho_m],
    }


def document_tree(doc):
    """Re-emit the normalized JSON tree from the typed objects."""
    objects = {}
    o, r = doc.objects, doc.refs
    if o["lie_algebras"]:
        objects["lie_algebras"] = {
            name: _lie_node(lie) for name, lie in o["lie_algebras"].items()
        }
    if o["representations"]:
        objects["representations"] = {
            name: {
                "lie": r["representations"][name]["lie"],
                "space_dim": rep.space_dim,
                "action": [matrix_to_json(m) for m in rep.action],
            }
            for name, rep in o["representations"].items()
        }
    if o["rrb_algebras"]:
        objects["rrb_algebras"] = {
            name: {**r["rrb_algebras"][name], "t": matrix_to_json(alg.t)}
            for name, alg in o["rrb_algebras"].items()
        }
    if o["coefficients"]:
        objects["coefficients"] = {
            name: {
                "base": r["coefficients"][name]["base"],
                "b_dim": ctx.b_dim,
                "m_dim": ctx.m_dim,
                "s": matrix_to_json(ctx.s),
                "rho_b": [matrix_to_json(m) for m in ctx.rho_b],
                "rho_m": [matrix_to_json(m) for m in ctx.rho_m],
                "mu": [matrix_to_json(m) for m in ctx.mu],
            }
            for name, ctx in o["coefficients"].items()
        }
    if o["cocycles"]:
        objects["cocycles"] = {
            name: _cocycle_node(
                c, r["cocycles"][name]["base"], r["cocycles"][name]["coeff"]
            )
            for name, c in o["cocycles"].items()
        }
    if o["extensions"]:
        objects["extensions"] = {
            name: {
                **r["extensions"][name],
                "inj": {
                    "phi": matrix_to_json(e.inj.phi),
                    "psi": matrix_to_json(e.inj.psi),
                },
                "proj": {
                    "phi": matrix_to_json(e.proj.phi),
                    "psi": matrix_to_json(e.proj.psi),
                },
            }
            for name, e in o["extensions"].items()
        }
    if o["sections"]:
        objects["sections"] = {
            name: {
                "extension": r["sections"][name]["extension"],
                "s_alg": matrix_to_json(sec.s_alg),
                "s_mod": matrix_to_json(sec.s_mod),
            }
            for name, sec in o["sections"].items()
        }
    if o["automorphism_pairs"]:
        objects["automorphism_pairs"] = {
            name: {
                **r["automorphism_pairs"][name],
                "alpha": {
                    "phi": matrix_to_json(p.alpha.phi),
                    "psi": matrix_to_json(p.alpha.psi),
                },
                "beta": {
                    "phi": matrix_to_json(p.beta.phi),
                    "psi": matrix_to_json(p.beta.psi),
                },
            }
            for name, p in o["automorphism_pairs"].items()
        }
    if o["derivation_pairs"]:
        table = {}
        for name, d in o["derivation_pairs"].items():
            node = {"base": r["derivation_pairs"][name]["base"]}
            if isinstance(d, CoeffDerivationPair):
                node["d_a"] = matrix_to_json(d.d_aa.d_a)
                node["d_v"] = matrix_to_json(d.d_aa.d_v)
                node["d_b"] = matrix_to_json(d.d_b)
                node["d_m"] = matrix_to_json(d.d_m)
            else:
                node["d_a"] = matrix_to_json(d.d_a)
                node["d_v"] = matrix_to_json(d.d_v)
            table[name] = node
        objects["derivation_pairs"] = table
    tree = {"version": VERSION, "field": doc.field.name, "objects": objects}
    if doc.task is not None:
        node = {"command": doc.task.command}
        if doc.task.args:
            node["args"] = doc.task.args
        tree["task"] = node
    return tree


def serialize_document(doc):
    return json.dumps(document_tree(doc), sort_keys=True, indent=2) + "\n"


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())
