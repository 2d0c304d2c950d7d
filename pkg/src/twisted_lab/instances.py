"""Instance files: JSON trees describing a twisted system, ideal generators,
or a raw algebra.  See README for the schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .coeff_algebra import AlgElement, BlockShape
from .conv_algebra import ConvElement
from .errors import ParseError
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, cyclic, dihedral, direct_product, validate_table
from .ideal_lab import RawAlgebra
from .scalars import CycScalar, euler_phi
from .twisted_action import AutoMap, Cocycle, TwistedSystem, bicharacter_cocycle

DATA = "data"


def shipped_names(kind: str = "instances") -> list[str]:
    root = resources.files("twisted_lab").joinpath(DATA).joinpath(kind)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve(path_or_name: Union[str, Path], kind: str = "instances") -> Path:
    p = Path(path_or_name)
    if p.exists():
        return p
    candidate = resources.files("twisted_lab").joinpath(DATA).joinpath(kind).joinpath(f"{path_or_name}.json")
    if candidate.is_file():
        return Path(str(candidate))
    raise ParseError(f"no such file or shipped {kind[:-1]}: {path_or_name}", path=str(path_or_name))


def read_json(path: Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", path=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: {exc.msg} at line {exc.lineno} column {exc.colno}",
            path=str(path), line=exc.lineno, column=exc.colno,
        ) from exc


# -- scalars and elements --

def parse_scalar(m: int, data: Any) -> CycScalar:
    if isinstance(data, bool):
        raise ParseError(f"invalid scalar {data!r}")
    if isinstance(data, int):
        return CycScalar.from_rational(m, data)
    if isinstance(data, str):
        try:
            return CycScalar.from_rational(m, Fraction(data))
        except ValueError as exc:
            raise ParseError(f"invalid rational {data!r}") from exc
    if isinstance(data, list):
        if len(data) != euler_phi(m):
            raise ParseError(f"coefficient list {data!r} needs {euler_phi(m)} entries for conductor {m}")
        return CycScalar(m, [Fraction(str(c)) for c in data])
    if isinstance(data, dict):
        if "root" in data:
            return CycScalar.root(m, int(data["root"])) * Fraction(str(data.get("scale", 1)))
        if "coeffs" in data:
            if int(data.get("conductor", m)) != m:
                raise ParseError(f"scalar conductor {data['conductor']} differs from instance conductor {m}")
            return parse_scalar(m, data["coeffs"])
    raise ParseError(f"invalid scalar {data!r}")


def parse_element(shape: BlockShape, m: int, data: Any) -> AlgElement:
    """Per-block row-major arrays, or a bare scalar meaning a multiple of 1."""
    if not isinstance(data, list) or (data and not isinstance(data[0], list)):
        return AlgElement.scalar(shape, m, parse_scalar(m, data))
    if len(data) != len(shape.blocks):
        raise ParseError(f"element has {len(data)} blocks, algebra has {len(shape.blocks)}")
    coords = []
    for block, n in zip(data, shape.blocks):
        if len(block) != n * n:
            raise ParseError(f"block of size {n} needs {n * n} entries, got {len(block)}")
        coords.extend(parse_scalar(m, x) for x in block)
    return AlgElement.from_coords(shape, m, coords)


def parse_conv_element(system: TwistedSystem, data: dict) -> ConvElement:
    z = system.unit_element * 0
    vals = [z] * system.group.order
    for key, value in data.items():
        x = int(key)
        if not 0 <= x < system.group.order:
            raise ParseError(f"group index {x} out of range")
        vals[x] = parse_element(system.shape, system.conductor, value)
    return ConvElement(system, vals)


# -- sections --

def parse_group(data: Any, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if not isinstance(data, dict):
        raise ParseError("group section must be an object")
    if "table" in data:
        return validate_table(data["table"], cap=cap)
    family = data.get("family")
    if family == "cyclic":
        return cyclic(int(data["n"]))
    if family == "dihedral":
        return dihedral(int(data["n"]))
    if family == "product":
        factors = [parse_group(f, cap) for f in data["factors"]]
        if not factors:
            raise ParseError("product needs at least one factor")
        g = factors[0]
        for h in factors[1:]:
            g = direct_product(g, h, cap=cap)
        return g
    raise ParseError(f"unknown group family {family!r}")


def parse_action(data: Any, group: FiniteGroup, shape: BlockShape, m: int) -> list:
    if isinstance(data, list):
        data = {"kind": "matrices", "maps": data}
    kind = data.get("kind")
    n = group.order
    if kind == "trivial":
        return [AutoMap.identity(shape, m)] * n
    if kind == "swap_blocks":
        perms = data["perm"]
        if len(perms) != n:
            raise ParseError(f"swap_blocks needs one block permutation per group element ({n})")
        return [AutoMap.block_permutation(shape, m, p) for p in perms]
    if kind == "inner":
        us = data["unitary"]
        if len(us) != n:
            raise ParseError(f"inner action needs one unitary per group element ({n})")
        return [AutoMap.inner(parse_element(shape, m, u)) for u in us]
    if kind == "matrices":
        maps = data["maps"]
        if len(maps) != n:
            raise ParseError(f"need one matrix per group element ({n})")
        return [AutoMap(shape, m, [[parse_scalar(m, x) for x in row] for row in mat]) for mat in maps]
    raise ParseError(f"unknown action kind {kind!r}")


def parse_cocycle(data: Any, group: FiniteGroup, shape: BlockShape, m: int) -> Cocycle:
    if isinstance(data, list):
        data = {"kind": "table", "table": data}
    kind = data.get("kind")
    if kind == "trivial":
        omega = Cocycle.trivial(group, shape, m)
    elif kind == "bicharacter":
        omega = bicharacter_cocycle(group, int(data["n"]), m, shape)
    elif kind == "table":
        rows = data["table"]
        if len(rows) != group.order or any(len(r) != group.order for r in rows):
            raise ParseError(f"cocycle table must be {group.order}x{group.order}")
        omega = Cocycle([[parse_element(shape, m, v) for v in row] for row in rows])
    else:
        raise ParseError(f"unknown cocycle kind {kind!r}")
    overrides = data.get("overrides", [])
    if overrides:
        table = [list(row) for row in omega.table]
        for o in overrides:
            table[int(o["x"])][int(o["y"])] = parse_element(shape, m, o["value"])
        omega = Cocycle(table)
    return omega


@dataclass
class InstanceSpec:
    name: str
    conductor: int
    group: dict
    algebra: dict
    action: Any
    cocycle: Any
    options: dict = field(default_factory=dict)
    source: str = ""

    @classmethod
    def from_dict(cls, data: Any, source: str = "") -> "InstanceSpec":
        if not isinstance(data, dict):
            raise ParseError("instance file must contain an object")
        missing = [k for k in ("conductor", "group", "algebra") if k not in data]
        if missing:
            raise ParseError(f"instance is missing sections: {', '.join(missing)}", missing=missing)
        return cls(
            name=str(data.get("name", Path(source).stem if source else "instance")),
            conductor=int(data["conductor"]),
            group=data["group"],
            algebra=data["algebra"],
            action=data.get("action", {"kind": "trivial"}),
            cocycle=data.get("cocycle", {"kind": "trivial"}),
            options=dict(data.get("options", {})),
            source=source,
        )

    def build_system(self) -> TwistedSystem:
        """Structurally parse into a system; axioms are not checked here."""
        try:
            m = self.conductor
            if m < 1:
                raise ParseError("conductor must be positive")
            cap = int(self.options.get("group_cap", DEFAULT_ORDER_CAP))
            group = parse_group(self.group, cap)
            shape = BlockShape.of(self.algebra["blocks"])
            alphas = parse_action(self.action, group, shape, m)
            omega = parse_cocycle(self.cocycle, group, shape, m)
            return TwistedSystem(group, shape, alphas, omega, m, self.name)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"{self.name}: malformed instance ({exc.__class__.__name__}: {exc})") from exc

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "conductor": self.conductor,
            "group": self.group,
            "algebra": self.algebra,
            "action": self.action,
            "cocycle": self.cocycle,
            "options": self.options,
        }


def load_instance(path_or_name: Union[str, Path]) -> InstanceSpec:
    path = resolve(path_or_name, "instances")
    return InstanceSpec.from_dict(read_json(path), source=str(path))


def load_system(path_or_name: Union[str, Path]) -> TwistedSystem:
    return load_instance(path_or_name).build_system()


def load_generators(system: TwistedSystem, path: Union[str, Path, None]) -> list[ConvElement]:
    if path is None:
        return []
    data = read_json(resolve(path, "generators"))
    if isinstance(data, dict):
        data = data.get("generators", [])
    if not isinstance(data, list):
        raise ParseError("generators file must hold a list of elements")
    try:
        return [parse_conv_element(system, g) for g in data]
    except (AttributeError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed generator: {exc}") from exc


def parse_raw_algebra(data: Any) -> RawAlgebra:
    try:
        q = int(data["dim"])
        m = int(data.get("conductor", 1))
        st = data["structure"]
        if len(st) != q or any(len(row) != q or any(len(v) != q for v in row) for row in st):
            raise ParseError(f"structure tensor must be {q}x{q}x{q}")
        structure = [[[parse_scalar(m, c) for c in st[i][j]] for j in range(q)] for i in range(q)]
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed raw algebra: {exc}") from exc
    return RawAlgebra(q, m, structure)


def load_raw_algebra(path_or_name: Union[str, Path]) -> RawAlgebra:
    return parse_raw_algebra(read_json(resolve(path_or_name, "raw")))
