"""Identity catalog: loading item files and expanding parametric checks.

Each item file holds an ``id``, a ``title``, a ``source`` anchor, optional
``notes`` and a list of ``checks``.  An identity check has ``lhs``/``rhs``
templates whose ``{...}`` fields are small arithmetic expressions over the
check's parameters; a structural check has a ``kind`` instead.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations, combinations_with_replacement, product as cartesian
from pathlib import Path

from .terms import XYZ, Element, format_element, get_alphabet, monomials

__all__ = [
    "IdentitySpec",
    "Check",
    "Instance",
    "load_catalog",
    "load_manifest",
    "load_spec_file",
    "render",
    "safe_eval",
    "STRUCTURAL_KINDS",
    "MODES",
]

MODES = ("consequence", "substitution", "both")
STRUCTURAL_KINDS = ("table", "basis", "jspan", "dims", "faithful")

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: lambda a, b: Fraction(a) / Fraction(b),
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def _rep(text: str, n: int) -> str:
    if not isinstance(n, int) or n < 0:
        raise ValueError("rep needs a non-negative integer count")
    return text * n


_FUNCS = {"rep": _rep, "min": min, "max": max, "abs": abs}


def safe_eval(text: str, names: dict):
    """Evaluate integer/rational arithmetic, comparisons and rep()."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise NameError(f"unknown parameter {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd, ast.Not)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else (not v if isinstance(node.op, ast.Not) else v)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if type(op) not in _CMPS or not _CMPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and not node.keywords):
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise ValueError(f"unsupported template syntax: {ast.dump(node)}")

    return ev(ast.parse(text, mode="eval"))


def _fmt(v) -> str:
    if isinstance(v, bool):
        raise ValueError("boolean in a template field")
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def render(template: str, names: dict) -> str:
    """Replace each ``{expr}`` with its evaluated value."""
    out = []
    i = 0
    while i < len(template):
        ch = template[i]
        if ch == "{":
            depth, j = 1, i + 1
            while depth:
                if j >= len(template):
                    raise ValueError(f"unbalanced braces in {template!r}")
                depth += {"{": 1, "}": -1}.get(template[j], 0)
                j += 1
            out.append(_fmt(safe_eval(template[i + 1:j - 1], names)))
            i = j
        else:
            out.append(ch)
            i += 1
    return "".join(out)


@dataclass(frozen=True)
class Instance:
    """One parameter assignment: ``label`` for reports, ``names`` for templates."""

    label: dict
    names: dict


def _int_values(spec: dict, lo: int, hi: int) -> list[int]:
    start = max(spec.get("min", lo), lo)
    stop = min(spec.get("max", hi), hi)
    return list(range(start, stop + 1))


def _monomial_values(name: str, spec: dict) -> list[Instance]:
    letters = spec["letters"]
    dmin, dmax = spec["degree"]
    alpha = XYZ if set(letters) <= set("xyz") else get_alphabet(letters)
    out = []
    for deg in range(dmin, dmax + 1):
        for split in cartesian(range(deg + 1), repeat=len(letters)):
            if sum(split) != deg:
                continue
            md = [0] * len(alpha)
            for letter, k in zip(letters, split):
                md[alpha.index[letter]] = k
            for m in monomials(alpha, md):
                text = format_element(Element.from_monomial(m))
                out.append(Instance({name: text},
                                    {name: f"({text})", f"{name}_deg": deg}))
    return out


def _opword_values(name: str, spec: dict, lo: int, hi: int) -> list[Instance]:
    ops = spec["ops"]
    lmin = max(spec.get("min", lo), lo)
    lmax = min(spec.get("max", hi), hi)
    out = []
    for length in range(lmin, lmax + 1):
        for idx in combinations_with_replacement(range(len(ops)), length):
            word = "".join(ops[i] for i in idx)
            out.append(Instance({name: word or "id"}, {name: word, f"{name}_len": length}))
    return out


def _param_values(name: str, spec: dict, lo: int, hi: int) -> list[Instance]:
    kind = spec["type"]
    if kind == "int":
        return [Instance({name: v}, {name: v}) for v in _int_values(spec, lo, hi)]
    if kind == "monomial":
        return _monomial_values(name, spec)
    if kind == "opword":
        return _opword_values(name, spec, lo, hi)
    if kind == "choice":
        return [Instance({name: v}, {name: v}) for v in spec["values"]]
    if kind == "pair":
        return [Instance({name: [a, b]}, {f"{name}1": a, f"{name}2": b})
                for a, b in combinations(spec["values"], 2)]
    raise ValueError(f"unknown parameter type {kind!r}")


@dataclass
class Check:
    """One identity (or structural) check inside a catalog item."""

    lhs: str = ""
    rhs: str = "0"
    params: dict = field(default_factory=dict)
    where: str | None = None
    mode: str = "consequence"
    substitutions: object = "identity"
    kind: str | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: dict) -> "Check":
        known = {"lhs", "rhs", "params", "where", "mode", "substitutions", "kind"}
        opts = {k: v for k, v in data.items() if k not in known}
        chk = cls(**{k: v for k, v in data.items() if k in known}, options=opts)
        if chk.kind is None:
            if chk.mode not in MODES:
                raise ValueError(f"unknown check mode {chk.mode!r}")
            if not chk.lhs:
                raise ValueError("identity check needs an lhs")
        elif chk.kind not in STRUCTURAL_KINDS:
            raise ValueError(f"unknown structural kind {chk.kind!r}")
        return chk

    def instances(self, lo: int = 0, hi: int = 2) -> list[Instance]:
        """All parameter assignments within [lo, hi] that satisfy ``where``."""
        choices = [_param_values(n, s, lo, hi) for n, s in self.params.items()]
        out = []
        for combo in cartesian(*choices):
            label: dict = {}
            names: dict = {"pmin": lo, "pmax": hi}
            for inst in combo:
                label.update(inst.label)
                names.update(inst.names)
            if self.where and not safe_eval(self.where, names):
                continue
            out.append(Instance(label, names))
        return out


@dataclass
class IdentitySpec:
    id: str
    title: str
    source: str
    checks: list[Check]
    notes: str = ""

    @classmethod
    def from_json(cls, data: dict) -> "IdentitySpec":
        for key in ("id", "title", "source", "checks"):
            if key not in data:
                raise ValueError(f"catalog item lacks {key!r}")
        checks = [Check.from_json(c) for c in data["checks"]]
        if not checks:
            raise ValueError(f"item {data['id']} has no checks")
        return cls(data["id"], data["title"], data["source"], checks, data.get("notes", ""))


def _catalog_dir():
    return resources.files("malcev") / "catalog"


def load_manifest() -> dict:
    return json.loads((_catalog_dir() / "manifest.json").read_text(encoding="utf-8"))


def load_catalog() -> list[IdentitySpec]:
    """Catalog items in manifest order."""
    manifest = load_manifest()
    base = _catalog_dir()
    items = []
    for item_id in manifest["order"]:
        data = json.loads((base / f"{item_id}.json").read_text(encoding="utf-8"))
        if data["id"] != item_id:
            raise ValueError(f"file {item_id}.json declares id {data['id']!r}")
        items.append(IdentitySpec.from_json(data))
    return items


def load_spec_file(path) -> list[IdentitySpec]:
    """A user spec file: one item object or a list of them."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = [data]
    out = []
    for d in data:
        d = dict(d)
        d.setdefault("title", d.get("id", ""))
        d.setdefault("source", "")
        out.append(IdentitySpec.from_json(d))
    return out
