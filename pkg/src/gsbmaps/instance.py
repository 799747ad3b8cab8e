"""JSON instance files and the variety-expression grammar.

Instance schema::

    {
      "prime": 2,
      "generators": [{"name": "g1", "order": 4}, {"name": "g2", "order": 2}],
      "algebras": {"D1": {"class": {"g1": 1}, "degree": 4}, ...},
      "aliases": {"Delta1": "D1"},                    # optional
      "varieties": {"left": "X(2;D1) x X(2;D2)"}      # optional
    }

Generators omitted from a class map default to exponent 0.  Declared degrees
must match the model index of the class (division algebras only); violations
are load-time errors naming the offending field.

Expression grammar::

    product := factor ("x" factor)*
    factor  := "X(" integer ";" name ")"

where the integer is the reduced dimension p^k (not k itself).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .brauer import AlgebraSpec, BrauerClass, BrauerGroupModel, _p_power_exponent
from .errors import InstanceFormatError, PreconditionError
from .reduction import GSBFactor, GSBProduct

_FORBIDDEN_NAME_CHARS = set("();,")


def _check_name(name: Any, what: str) -> str:
    if not isinstance(name, str) or not name:
        raise InstanceFormatError(f"{what}: name must be a nonempty string")
    if name != name.strip():
        raise InstanceFormatError(
            f"{what}: name {name!r} has leading or trailing whitespace"
        )
    bad = _FORBIDDEN_NAME_CHARS.intersection(name)
    if bad:
        raise InstanceFormatError(
            f"{what}: name {name!r} contains forbidden characters {sorted(bad)}"
        )
    return name


@dataclass
class Instance:
    """A loaded instance: the group model plus named algebras and varieties."""

    model: BrauerGroupModel
    generator_names: tuple[str, ...]
    algebras: dict[str, AlgebraSpec]
    aliases: dict[str, str] = field(default_factory=dict)
    varieties: dict[str, GSBProduct] = field(default_factory=dict)
    source: str = "<instance>"

    def algebra(self, name: str) -> AlgebraSpec:
        """Resolve an algebra by name or alias."""
        if name in self.algebras:
            return self.algebras[name]
        if name in self.aliases:
            return self.algebras[self.aliases[name]]
        raise InstanceFormatError(f"unknown algebra {name!r}")

    def algebra_list(self, names: str) -> list[AlgebraSpec]:
        """Resolve a comma-separated list of algebra names."""
        parts = [part.strip() for part in names.split(",")]
        if not any(parts):
            raise InstanceFormatError("empty algebra list")
        return [self.algebra(part) for part in parts if part]

    def product(self, text: str) -> GSBProduct:
        """A named variety if the text matches one, else a parsed expression."""
        if text in self.varieties:
            return self.varieties[text]
        return parse_variety_expression(text, self)


def _expect(doc: Mapping[str, Any], key: str, kind: type, what: str) -> Any:
    if key not in doc:
        raise InstanceFormatError(f"{what}: missing required key {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InstanceFormatError(
            f"{what}: {key!r} must be a {kind.__name__}, got {type(value).__name__}"
        )
    return value


def load_instance(doc: Any, source: str = "<instance>") -> Instance:
    """Validate a decoded JSON document into an Instance."""
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{source}: top level must be a JSON object")
    prime = _expect(doc, "prime", int, source)
    generators = _expect(doc, "generators", list, source)
    if not generators:
        raise InstanceFormatError(f"{source}: 'generators' must be nonempty")
    names: list[str] = []
    orders: list[int] = []
    for pos, entry in enumerate(generators):
        what = f"{source}: generator #{pos + 1}"
        if not isinstance(entry, dict):
            raise InstanceFormatError(f"{what}: must be an object")
        name = _check_name(entry.get("name"), what)
        if name in names:
            raise InstanceFormatError(f"{what}: duplicate generator name {name!r}")
        order = entry.get("order")
        if not isinstance(order, int) or isinstance(order, bool):
            raise InstanceFormatError(f"{what} ({name!r}): 'order' must be an integer")
        names.append(name)
        orders.append(order)
    try:
        model = BrauerGroupModel(prime, tuple(orders))
    except PreconditionError as exc:
        raise InstanceFormatError(f"{source}: {exc}") from exc

    algebras_doc = _expect(doc, "algebras", dict, source)
    algebras: dict[str, AlgebraSpec] = {}
    for name, spec in algebras_doc.items():
        what = f"{source}: algebra {name!r}"
        _check_name(name, what)
        if not isinstance(spec, dict):
            raise InstanceFormatError(f"{what}: must be an object")
        class_map = _expect(spec, "class", dict, what)
        exponents = [0] * model.rank
        for gen, value in class_map.items():
            if gen not in names:
                raise InstanceFormatError(f"{what}: unknown generator {gen!r}")
            if not isinstance(value, int) or isinstance(value, bool):
                raise InstanceFormatError(
                    f"{what}: exponent of {gen!r} must be an integer"
                )
            exponents[names.index(gen)] = value
        degree = _expect(spec, "degree", int, what)
        degree_exponent = _p_power_exponent(degree, prime)
        if degree_exponent is None:
            raise InstanceFormatError(
                f"{what}: degree {degree} is not a power of the prime {prime}"
            )
        cls = BrauerClass(model, tuple(exponents))
        try:
            algebras[name] = AlgebraSpec(cls, degree_exponent, label=name)
        except PreconditionError as exc:
            raise InstanceFormatError(f"{source}: {exc}") from exc

    aliases: dict[str, str] = {}
    if "aliases" in doc:
        aliases_doc = _expect(doc, "aliases", dict, source)
        for alias, target in aliases_doc.items():
            what = f"{source}: alias {alias!r}"
            _check_name(alias, what)
            if alias in algebras:
                raise InstanceFormatError(f"{what}: collides with an algebra name")
            if target not in algebras:
                raise InstanceFormatError(f"{what}: unknown target algebra {target!r}")
            aliases[alias] = target

    instance = Instance(
        model=model,
        generator_names=tuple(names),
        algebras=algebras,
        aliases=aliases,
        source=source,
    )

    if "varieties" in doc:
        varieties_doc = _expect(doc, "varieties", dict, source)
        for vname, text in varieties_doc.items():
            what = f"{source}: variety {vname!r}"
            _check_name(vname, what)
            if not isinstance(text, str):
                raise InstanceFormatError(f"{what}: expression must be a string")
            try:
                instance.varieties[vname] = parse_variety_expression(text, instance)
            except InstanceFormatError as exc:
                raise InstanceFormatError(f"{what}: {exc}") from exc
    return instance


def parse_instance(path: str | Path) -> Instance:
    """Load and validate an instance file."""
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file {p}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{p}: malformed JSON: {exc}") from exc
    return load_instance(doc, source=str(p))


class _Cursor:
    """Single-pass scanner for the variety grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            raise InstanceFormatError(
                f"expected {literal!r} at position {self.pos} in {self.text!r}"
            )
        self.pos += len(literal)

    def read_integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise InstanceFormatError(
                f"expected an integer at position {start} in {self.text!r}"
            )
        return int(self.text[start : self.pos])

    def read_until(self, stop: str) -> str:
        start = self.pos
        idx = self.text.find(stop, start)
        if idx < 0:
            raise InstanceFormatError(
                f"expected {stop!r} after position {start} in {self.text!r}"
            )
        self.pos = idx
        return self.text[start:idx]


def parse_variety_expression(text: str, instance: Instance) -> GSBProduct:
    """Parse "X(m;NAME) x X(m;NAME) x ..." against the instance's algebras.

    The integer m is the reduced dimension and must be a power of the
    instance prime; names resolve through aliases.  Out-of-range m (p^k with
    k >= the degree exponent) is reported by the factor type itself.
    """
    cur = _Cursor(text)
    factors = []
    while True:
        cur.skip_ws()
        cur.expect("X")
        cur.expect("(")
        cur.skip_ws()
        m = cur.read_integer()
        cur.skip_ws()
        cur.expect(";")
        name = cur.read_until(")").strip()
        cur.expect(")")
        if not name:
            raise InstanceFormatError(
                f"empty algebra name in factor ending at position {cur.pos} "
                f"in {text!r}"
            )
        p = instance.model.prime
        k = _p_power_exponent(m, p)
        if k is None:
            raise InstanceFormatError(
                f"reduced dimension {m} is not a power of the prime {p}"
            )
        factors.append(GSBFactor(instance.algebra(name), k))
        cur.skip_ws()
        if cur.at_end():
            break
        cur.expect("x")
    return GSBProduct(tuple(factors))
