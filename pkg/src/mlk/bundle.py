"""JSON bundle files: exact structure constants, maps, forms and cochains.

A bundle is one JSON object.  Scalars are integers or strings holding a
rational (``"-3/4"``) or an arithmetic expression over ``params``
(``"2*gamma"``).  Indices are 1-based.

``bracket`` / ``cobracket`` / ``bracket2``
    sparse lists ``[i, j, k, value]``.
``maps`` / ``forms`` / ``tensors``
    named dense matrices given as lists of rows.  For a map, column ``j``
    is the image of ``e_j``; a form is its Gram matrix; a tensor ``r`` has
    ``r[i][j]`` as the coefficient of ``e_i (x) e_j``.
``reps``
    ``{"name": {"space_dim": m, "action": [[i, p, q, value], ...]}}`` where
    the entry is the coefficient of ``v_p`` in ``rho(e_i) v_q``.
``cochains``
    ``{"name": {"mu1": sparse, "N1": rows}}`` for deformation cochains or
    ``{"name": {"psi": sparse, "chi": rows}}`` for extension cocycles.
``deformation``
    list of ``{"mu": sparse, "N": rows}`` for orders 1..k.
"""

from __future__ import annotations

import ast
import json
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exact import zeros

TOP_FIELDS = {
    "dim",
    "dim2",
    "bracket",
    "bracket2",
    "cobracket",
    "maps",
    "forms",
    "tensors",
    "reps",
    "cochains",
    "deformation",
    "params",
    "description",
}


class BundleError(ValueError):
    """Malformed bundle; the message names the offending field."""


@dataclass
class Bundle:
    dim: int
    bracket: np.ndarray | None = None
    cobracket: np.ndarray | None = None
    dim2: int | None = None
    bracket2: np.ndarray | None = None
    maps: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    reps: dict = field(default_factory=dict)  # name -> action array (n, m, m)
    cochains: dict = field(default_factory=dict)  # name -> dict of arrays
    deformation: list = field(default_factory=list)  # [(mu, N), ...]
    params: dict = field(default_factory=dict)
    description: str | None = None


# ---------------------------------------------------------------------------
# scalar expressions

# names are prefixed before parsing so that keywords such as ``lambda`` work
_PREFIX = "p_"
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _eval(node, params: dict) -> Fraction:
    if isinstance(node, ast.Expression):
        return _eval(node.body, params)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        name = node.id[len(_PREFIX):]
        if name not in params:
            raise BundleError(f"unknown parameter '{name}'")
        return params[name]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left, right = _eval(node.left, params), _eval(node.right, params)
        if isinstance(node.op, ast.Div) and right == 0:
            raise BundleError("division by zero")
        return _BINOPS[type(node.op)](left, right)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        exp = _eval(node.right, params)
        if exp.denominator != 1 or exp < 0:
            raise BundleError("only non-negative integer powers are allowed")
        return _eval(node.left, params) ** int(exp)
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval(node.operand, params))
    raise BundleError("unsupported expression")


def parse_scalar(value, params: dict | None = None, where: str = "value") -> Fraction:
    """An exact rational from a JSON integer or an expression string."""
    params = params or {}
    if isinstance(value, bool) or isinstance(value, float):
        raise BundleError(f"{where}: {value!r} is not an exact rational (use a string like \"1/2\")")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise BundleError(f"{where}: expected an integer or string, got {type(value).__name__}")
    try:
        tree = ast.parse(_NAME.sub(lambda m: _PREFIX + m.group(), value.strip()), mode="eval")
    except SyntaxError:
        raise BundleError(f"{where}: cannot parse {value!r}") from None
    try:
        return _eval(tree, params)
    except BundleError as exc:
        raise BundleError(f"{where}: {exc} in {value!r}") from None


def parse_params(raw: dict, where: str = "params") -> dict:
    if not isinstance(raw, dict):
        raise BundleError(f"{where}: expected an object")
    out = {}
    for name, value in raw.items():
        if not name.isidentifier():
            raise BundleError(f"{where}.{name}: not a valid parameter name")
        out[name] = parse_scalar(value, out, f"{where}.{name}")
    return out


# ---------------------------------------------------------------------------
# component parsers


def _index(v, bound: int, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise BundleError(f"{where}: index {v!r} is not an integer")
    if not 1 <= v <= bound:
        raise BundleError(f"{where}: index {v} out of range 1..{bound}")
    return v - 1


def _sparse(entries, shape: tuple[int, ...], params: dict, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise BundleError(f"{where}: expected a list of entries")
    out = zeros(*shape)
    for pos, entry in enumerate(entries):
        here = f"{where}[{pos}]"
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise BundleError(f"{here}: expected {len(shape)} indices and a value")
        idx = tuple(_index(v, b, here) for v, b in zip(entry[:-1], shape))
        out[idx] += parse_scalar(entry[-1], params, here)
    return out


def _dense(rows, params: dict, where: str, shape: tuple[int, int] | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise BundleError(f"{where}: expected a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise BundleError(f"{where}: rows have different lengths")
    if shape is not None and (len(rows), width) != shape:
        raise BundleError(f"{where}: expected a {shape[0]} x {shape[1]} matrix, got {len(rows)} x {width}")
    out = zeros(len(rows), width)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = parse_scalar(v, params, f"{where}[{i + 1}][{j + 1}]")
    return out


def _named(raw, where: str, parse) -> dict:
    if not isinstance(raw, dict):
        raise BundleError(f"{where}: expected an object of named entries")
    return {name: parse(value, f"{where}.{name}") for name, value in raw.items()}


def _only(raw: dict, allowed: set, where: str) -> None:
    if not isinstance(raw, dict):
        raise BundleError(f"{where}: expected an object")
    extra = sorted(set(raw) - allowed)
    if extra:
        raise BundleError(f"{where}: unknown field '{extra[0]}'")


def _count(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise BundleError(f"{where}: expected a non-negative integer")
    return v


def parse_bundle(raw, overrides: dict | None = None) -> Bundle:
    """Validate a decoded JSON object; ``overrides`` replace declared params."""
    _only(raw, TOP_FIELDS, "bundle")
    if "dim" not in raw:
        raise BundleError("bundle: missing field 'dim'")
    n = _count(raw["dim"], "dim")
    params = parse_params(raw.get("params", {}))
    for k, v in (overrides or {}).items():
        params[k] = v
    b = Bundle(dim=n, params=params, description=raw.get("description"))

    if "bracket" in raw:
        b.bracket = _sparse(raw["bracket"], (n, n, n), params, "bracket")
    if "cobracket" in raw:
        b.cobracket = _sparse(raw["cobracket"], (n, n, n), params, "cobracket")
    if "dim2" in raw:
        b.dim2 = _count(raw["dim2"], "dim2")
    if "bracket2" in raw:
        if b.dim2 is None:
            raise BundleError("bracket2: needs 'dim2'")
        m = b.dim2
        b.bracket2 = _sparse(raw["bracket2"], (m, m, m), params, "bracket2")

    b.maps = _named(raw.get("maps", {}), "maps", lambda v, w: _dense(v, params, w))
    b.forms = _named(raw.get("forms", {}), "forms", lambda v, w: _dense(v, params, w, (n, n)))
    b.tensors = _named(raw.get("tensors", {}), "tensors", lambda v, w: _dense(v, params, w, (n, n)))

    def rep(value, where):
        _only(value, {"space_dim", "action"}, where)
        if "space_dim" not in value:
            raise BundleError(f"{where}: missing field 'space_dim'")
        m = _count(value["space_dim"], f"{where}.space_dim")
        # the acting algebra is A unless the rep is the second factor's action
        k = b.dim2 if where.endswith(".rho2") and b.dim2 is not None else n
        return _sparse(value.get("action", []), (k, m, m), params, f"{where}.action")

    b.reps = _named(raw.get("reps", {}), "reps", rep)

    def cochain(value, where):
        if not isinstance(value, dict):
            raise BundleError(f"{where}: expected an object")
        if "mu1" in value or "N1" in value:
            _only(value, {"mu1", "N1"}, where)
            return {
                "mu1": _sparse(value.get("mu1", []), (n, n, n), params, f"{where}.mu1"),
                "N1": _dense(value["N1"], params, f"{where}.N1", (n, n)) if "N1" in value else zeros(n, n),
            }
        _only(value, {"psi", "chi", "space_dim"}, where)
        if "space_dim" not in value:
            raise BundleError(f"{where}: missing field 'space_dim'")
        m = _count(value["space_dim"], f"{where}.space_dim")
        return {
            "psi": _sparse(value.get("psi", []), (n, n, m), params, f"{where}.psi"),
            "chi": _dense(value["chi"], params, f"{where}.chi", (m, n)) if "chi" in value else zeros(m, n),
        }

    b.cochains = _named(raw.get("cochains", {}), "cochains", cochain)

    terms = raw.get("deformation", [])
    if not isinstance(terms, list):
        raise BundleError("deformation: expected a list of terms")
    for pos, term in enumerate(terms):
        where = f"deformation[{pos}]"
        _only(term, {"mu", "N"}, where)
        mu = _sparse(term.get("mu", []), (n, n, n), params, f"{where}.mu")
        Nk = _dense(term["N"], params, f"{where}.N", (n, n)) if "N" in term else zeros(n, n)
        b.deformation.append((mu, Nk))
    return b


def load_bundle(path, overrides: dict | None = None) -> Bundle:
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_bundle(raw, overrides)


# ---------------------------------------------------------------------------
# writing


def _s(x) -> str:
    return str(Fraction(x))


def sparse_entries(t: np.ndarray) -> list:
    return [[*(i + 1 for i in idx), _s(t[idx])] for idx in np.ndindex(t.shape) if t[idx] != 0]


def dense_rows(m: np.ndarray) -> list:
    return [[_s(x) for x in row] for row in m]


def dump_bundle(b: Bundle) -> str:
    """Deterministic JSON text for a bundle; params are already substituted."""
    out: dict = {"dim": b.dim}
    if b.description:
        out["description"] = b.description
    if b.bracket is not None:
        out["bracket"] = sparse_entries(b.bracket)
    if b.cobracket is not None:
        out["cobracket"] = sparse_entries(b.cobracket)
    if b.dim2 is not None:
        out["dim2"] = b.dim2
    if b.bracket2 is not None:
        out["bracket2"] = sparse_entries(b.bracket2)
    for key in ("maps", "forms", "tensors"):
        named = getattr(b, key)
        if named:
            out[key] = {k: dense_rows(v) for k, v in sorted(named.items())}
    if b.reps:
        out["reps"] = {
            k: {"space_dim": v.shape[1], "action": sparse_entries(v)} for k, v in sorted(b.reps.items())
        }
    if b.cochains:
        cc = {}
        for k, v in sorted(b.cochains.items()):
            if "mu1" in v:
                cc[k] = {"mu1": sparse_entries(v["mu1"]), "N1": dense_rows(v["N1"])}
            else:
                cc[k] = {"space_dim": v["chi"].shape[0], "psi": sparse_entries(v["psi"]), "chi": dense_rows(v["chi"])}
        out["cochains"] = cc
    if b.deformation:
        out["deformation"] = [{"mu": sparse_entries(mu), "N": dense_rows(Nk)} for mu, Nk in b.deformation]
    return json.dumps(out, indent=2, sort_keys=True) + "\n"
