"""JSON bundles: the on-disk format for algebras and the data attached to them.

A bundle is a JSON object with optional sections.  Indices are 1-based and
rationals are strings such as ``"3/2"`` or ``"-1"``; unlisted entries are 0::

    {
      "algebra": {"dim": 2, "basis": ["e1", "e2"],
                  "products": [{"i": 1, "j": 1, "k": 2, "c": "1"}]},
      "representations": {"triv": {"module_dim": 1, "action": []},
                          "L": {"builtin": "adjoint"}},
      "cobracket": {"delta": {"images": [{"i": 1, "j": 2, "k": 2, "c": "2"}]}},
      "r_tensor": {"r": {"entries": [{"i": 1, "j": 2, "c": "1"}]}},
      "linear_map": {"T": {"rep": "L", "entries": [{"row": 1, "col": 2, "c": "1"}]}},
      "bilinear_form": {"w": {"kind": "symplectic", "entries": [...]}},
      "prelie": {"dim": 2, "products": [...]}
    }

Product records ``{"i", "j", "k", "c"}`` mean ``e_i • e_j`` has coefficient
``c`` on ``e_k``.  Nothing is symmetrized: both ``(i, j)`` and ``(j, i)`` must
be listed.  Action records ``{"i", "row", "col", "c"}`` give ``ρ(e_i)[row, col]``;
cobracket records ``{"i", "j", "k", "c"}`` give the ``e_j⊗e_k`` coefficient
of ``Δ(e_i)``.

Loading checks the format only (types, ranges, names, symmetry of the product
table).  Mathematical axioms are checked when an object is requested through
one of the validated accessors, which raise :class:`ValidationError`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import MockLieAlgebra, adjoint_rep
from .bialgebra import Cobracket
from .errors import AxiomViolation, ParseError, ValidationError
from .linalg import format_rational, zeros
from .prelie import MockPreLieAlgebra
from .representation import BilinearForm, Representation, coadjoint_rep
from .ybe import RTensor

BUILTIN_REPS = ("adjoint", "coadjoint")
SECTIONS = ("algebra", "representations", "cobracket", "r_tensor", "linear_map",
            "bilinear_form", "prelie")
FORM_KINDS = ("invariant", "symplectic")
_RATIONAL = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


# -- parsing helpers -------------------------------------------------------

def _rational(value, loc: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.fullmatch(value):
        raise ParseError(f"expected an integer or \"p/q\" string, got {value!r}", loc)
    try:
        return Fraction(value.strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {value!r}", loc) from None


def _obj(value, loc: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object, got {type(value).__name__}", loc)
    return value


def _list(value, loc: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", loc)
    return value


def _count(value, loc: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a non-negative integer, got {value!r}", loc)
    return value


def _require(obj: dict, key: str, loc: str):
    if key not in obj:
        raise ParseError(f"missing required key {key!r}", loc)
    return obj[key]


def _names(obj: dict, key: str, dim: int, default: list[str], loc: str) -> list[str]:
    if key not in obj:
        return default
    names = _list(obj[key], f"{loc}.{key}")
    if len(names) != dim or not all(isinstance(n, str) for n in names):
        raise ValidationError(f"expected {dim} basis labels", f"{loc}.{key}")
    if len(set(names)) != dim:
        raise ValidationError("basis labels must be distinct", f"{loc}.{key}")
    return list(names)


def _fill(array: np.ndarray, records, keys: tuple[str, ...], loc: str) -> np.ndarray:
    """Write sparse 1-based ``records`` into ``array``; duplicates are errors."""
    seen = set()
    for n, rec in enumerate(_list(records, loc)):
        rloc = f"{loc}[{n}]"
        rec = _obj(rec, rloc)
        idx = []
        for axis, key in enumerate(keys):
            v = _require(rec, key, rloc)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"index {key!r} must be an integer", rloc)
            if not 1 <= v <= array.shape[axis]:
                raise ValidationError(
                    f"index {key}={v} outside 1..{array.shape[axis]}", rloc)
            idx.append(v - 1)
        idx = tuple(idx)
        if idx in seen:
            raise ValidationError(f"duplicate entry {tuple(i + 1 for i in idx)}", rloc)
        seen.add(idx)
        array[idx] = _rational(_require(rec, "c", rloc), f"{rloc}.c")
    return array


def _products(section: dict, loc: str, symmetric: bool) -> tuple[np.ndarray, list[str]]:
    dim = _count(_require(section, "dim", loc), f"{loc}.dim")
    names = _names(section, "basis", dim, [f"e{i + 1}" for i in range(dim)], loc)
    c = _fill(zeros(dim, dim, dim), section.get("products", []), ("i", "j", "k"),
              f"{loc}.products")
    if symmetric:
        for i, j, k in np.ndindex(c.shape):
            if i < j and c[i, j, k] != c[j, i, k]:
                raise ValidationError(
                    f"asymmetric structure constants: e{i + 1}•e{j + 1} has "
                    f"coefficient {c[i, j, k]} on e{k + 1} but e{j + 1}•e{i + 1} has "
                    f"{c[j, i, k]}", f"{loc}.products")
    return c, names


# -- the bundle ------------------------------------------------------------

@dataclass
class RepEntry:
    builtin: str | None = None
    action: np.ndarray | None = None
    basis: list[str] = field(default_factory=list)


@dataclass
class MapEntry:
    matrix: np.ndarray
    rep: str


@dataclass
class FormEntry:
    gram: np.ndarray
    kind: str | None = None


@dataclass
class Bundle:
    """Parsed, format-checked bundle contents (raw arrays, not yet validated)."""

    source: str = "<memory>"
    structure: np.ndarray | None = None
    basis: list[str] = field(default_factory=list)
    representations: dict[str, RepEntry] = field(default_factory=dict)
    cobrackets: dict[str, np.ndarray] = field(default_factory=dict)
    r_tensors: dict[str, np.ndarray] = field(default_factory=dict)
    linear_maps: dict[str, MapEntry] = field(default_factory=dict)
    forms: dict[str, FormEntry] = field(default_factory=dict)
    prelie_structure: np.ndarray | None = None
    prelie_basis: list[str] = field(default_factory=list)

    # -- validated accessors
    def algebra(self) -> MockLieAlgebra:
        if self.structure is None:
            raise ValidationError("bundle has no 'algebra' section", "algebra")
        try:
            return MockLieAlgebra(self.structure, self.basis)
        except AxiomViolation as exc:
            raise ValidationError(str(exc), "algebra") from exc

    def _lookup(self, table: dict, name: str | None, section: str):
        if name is None:
            if len(table) == 1:
                return next(iter(table.items()))
            if not table:
                raise ValidationError(f"bundle has no '{section}' entries", section)
            raise ValidationError(
                f"several entries ({', '.join(sorted(table))}); choose one by name", section)
        if name not in table:
            raise ValidationError(f"no entry named {name!r}", section)
        return name, table[name]

    def rep_names(self) -> list[str]:
        return sorted(set(self.representations) | set(BUILTIN_REPS))

    def raw_action(self, name: str) -> np.ndarray:
        """Action matrices of a named representation without validating them."""
        entry = self.representations.get(name)
        if entry is None and name in BUILTIN_REPS:
            entry = RepEntry(builtin=name)
        if entry is None:
            raise ValidationError(f"no representation named {name!r}", "representations")
        if entry.builtin is not None:
            a = self.algebra()
            return a.left_multiplications() if entry.builtin == "adjoint" else a.structure.copy()
        return entry.action

    def module_basis(self, name: str) -> list[str]:
        entry = self.representations.get(name)
        if entry is None or entry.builtin == "adjoint":
            return list(self.basis)
        if entry.builtin == "coadjoint":
            return [f"{b}*" for b in self.basis]
        return entry.basis

    def representation(self, name: str) -> Representation:
        a = self.algebra()
        entry = self.representations.get(name)
        builtin = entry.builtin if entry is not None else name
        if builtin == "adjoint":
            return adjoint_rep(a)
        if builtin == "coadjoint":
            return coadjoint_rep(a)
        try:
            return Representation(a, self.raw_action(name))
        except AxiomViolation as exc:
            raise ValidationError(str(exc), f"representations.{name}") from exc

    def cobracket(self, name: str | None = None) -> tuple[str, Cobracket]:
        name, images = self._lookup(self.cobrackets, name, "cobracket")
        return name, Cobracket(self.algebra(), images)

    def r_tensor(self, name: str | None = None) -> tuple[str, RTensor]:
        name, t = self._lookup(self.r_tensors, name, "r_tensor")
        return name, RTensor(self.algebra(), t)

    def linear_map(self, name: str | None = None) -> tuple[str, MapEntry]:
        return self._lookup(self.linear_maps, name, "linear_map")

    def form(self, name: str | None = None) -> tuple[str, FormEntry, BilinearForm]:
        name, entry = self._lookup(self.forms, name, "bilinear_form")
        return name, entry, BilinearForm(self.algebra(), entry.gram)

    def prelie(self) -> MockPreLieAlgebra:
        if self.prelie_structure is None:
            raise ValidationError("bundle has no 'prelie' section", "prelie")
        try:
            return MockPreLieAlgebra(self.prelie_structure, self.prelie_basis)
        except AxiomViolation as exc:
            raise ValidationError(str(exc), "prelie") from exc


def parse_bundle(data: Any, source: str = "<memory>") -> Bundle:
    """Build a :class:`Bundle` from decoded JSON, checking the format."""
    data = _obj(data, "$")
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ParseError(f"unknown section(s): {', '.join(unknown)}", "$")
    if "algebra" not in data and "prelie" not in data:
        raise ParseError("missing required section: 'algebra' or 'prelie'", "$")
    b = Bundle(source=source)
    if "prelie" in data:
        sec = _obj(data["prelie"], "prelie")
        b.prelie_structure, b.prelie_basis = _products(sec, "prelie", symmetric=False)
    if "algebra" not in data:
        extra = [s for s in SECTIONS[1:-1] if s in data]
        if extra:
            raise ParseError(f"section(s) {', '.join(extra)} need an 'algebra' section", "$")
        return b
    b.structure, b.basis = _products(_obj(data["algebra"], "algebra"), "algebra",
                                     symmetric=True)
    n = len(b.basis)

    for name, rec in _obj(data.get("representations", {}), "representations").items():
        loc = f"representations.{name}"
        rec = _obj(rec, loc)
        if "builtin" in rec:
            if rec["builtin"] not in BUILTIN_REPS:
                raise ValidationError(f"unknown builtin {rec['builtin']!r}", loc)
            b.representations[name] = RepEntry(builtin=rec["builtin"])
            continue
        m = _count(_require(rec, "module_dim", loc), f"{loc}.module_dim")
        basis = _names(rec, "basis", m, [f"v{i + 1}" for i in range(m)], loc)
        action = _fill(zeros(n, m, m), rec.get("action", []), ("i", "row", "col"),
                       f"{loc}.action")
        b.representations[name] = RepEntry(action=action, basis=basis)

    for name, rec in _obj(data.get("cobracket", {}), "cobracket").items():
        loc = f"cobracket.{name}"
        rec = _obj(rec, loc)
        b.cobrackets[name] = _fill(zeros(n, n, n), rec.get("images", []), ("i", "j", "k"),
                                   f"{loc}.images")

    for name, rec in _obj(data.get("r_tensor", {}), "r_tensor").items():
        loc = f"r_tensor.{name}"
        rec = _obj(rec, loc)
        b.r_tensors[name] = _fill(zeros(n, n), rec.get("entries", []), ("i", "j"),
                                  f"{loc}.entries")

    for name, rec in _obj(data.get("linear_map", {}), "linear_map").items():
        loc = f"linear_map.{name}"
        rec = _obj(rec, loc)
        rep = rec.get("rep", "adjoint")
        if not isinstance(rep, str) or (rep not in b.representations and rep not in BUILTIN_REPS):
            raise ValidationError(f"references unknown representation {rep!r}", f"{loc}.rep")
        entry = b.representations.get(rep)
        m = n if entry is None or entry.builtin else entry.action.shape[1]
        matrix = _fill(zeros(n, m), rec.get("entries", []), ("row", "col"), f"{loc}.entries")
        b.linear_maps[name] = MapEntry(matrix, rep)

    for name, rec in _obj(data.get("bilinear_form", {}), "bilinear_form").items():
        loc = f"bilinear_form.{name}"
        rec = _obj(rec, loc)
        kind = rec.get("kind")
        if kind is not None and kind not in FORM_KINDS:
            raise ValidationError(f"kind must be one of {', '.join(FORM_KINDS)}", f"{loc}.kind")
        gram = _fill(zeros(n, n), rec.get("entries", []), ("i", "j"), f"{loc}.entries")
        b.forms[name] = FormEntry(gram, kind)
    return b


def resolve_path(path: str | Path) -> Path:
    """Return ``path``, falling back to the packaged fixtures for ``fixtures/…``."""
    p = Path(path)
    if p.exists():
        return p
    parts = p.parts
    if "fixtures" in parts:
        rel = parts[parts.index("fixtures") + 1:]
        packaged = resources.files("mocklie").joinpath("fixtures", *rel)
        if packaged.is_file():
            return Path(str(packaged))
    return p


def load_bundle(path: str | Path) -> Bundle:
    p = resolve_path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
                         str(path)) from None
    return parse_bundle(data, str(path))


def fixture_names() -> list[str]:
    root = resources.files("mocklie").joinpath("fixtures")
    return sorted(f.name for f in root.iterdir() if f.name.endswith(".json"))


# -- serialization ---------------------------------------------------------

def _records(array: np.ndarray, keys: tuple[str, ...]) -> list[dict]:
    out = []
    for idx in np.ndindex(array.shape):
        if array[idx] != 0:
            rec = {k: int(i) + 1 for k, i in zip(keys, idx)}
            rec["c"] = format_rational(array[idx])
            out.append(rec)
    return out


def products_section(structure: np.ndarray, basis) -> dict:
    return {"dim": int(structure.shape[0]), "basis": list(basis),
            "products": _records(structure, ("i", "j", "k"))}


def algebra_section(a: MockLieAlgebra) -> dict:
    return products_section(a.structure, a.basis_names)


def prelie_section(p: MockPreLieAlgebra) -> dict:
    return products_section(p.structure, p.basis_names)


def representation_entry(rep: Representation, basis=None) -> dict:
    m = rep.module_dim
    basis = list(basis) if basis is not None else [f"v{i + 1}" for i in range(m)]
    return {"module_dim": m, "basis": basis,
            "action": _records(rep.action, ("i", "row", "col"))}


def cobracket_entry(d: Cobracket) -> dict:
    return {"images": _records(d.images, ("i", "j", "k"))}


def r_tensor_entry(r: RTensor) -> dict:
    return {"entries": _records(r.tensor, ("i", "j"))}


def linear_map_entry(matrix: np.ndarray, rep: str = "adjoint") -> dict:
    return {"rep": rep, "entries": _records(matrix, ("row", "col"))}


def form_entry(w: BilinearForm, kind: str | None = None) -> dict:
    out = {"entries": _records(w.gram, ("i", "j"))}
    if kind is not None:
        out["kind"] = kind
    return out


def make_bundle(algebra: MockLieAlgebra | None = None, *, representations=None,
                cobracket=None, r_tensor=None, linear_map=None, bilinear_form=None,
                prelie: MockPreLieAlgebra | None = None) -> dict:
    """Assemble a bundle dict; keyword sections are ``{name: entry}`` mappings."""
    out: dict[str, Any] = {}
    if algebra is not None:
        out["algebra"] = algebra_section(algebra)
    for key, value in (("representations", representations), ("cobracket", cobracket),
                       ("r_tensor", r_tensor), ("linear_map", linear_map),
                       ("bilinear_form", bilinear_form)):
        if value:
            out[key] = dict(value)
    if prelie is not None:
        out["prelie"] = prelie_section(prelie)
    return out


def dumps_bundle(bundle: dict) -> str:
    return json.dumps(bundle, indent=2, ensure_ascii=False) + "\n"
