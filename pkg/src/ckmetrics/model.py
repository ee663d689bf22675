"""Structural view of an object-oriented codebase, plus the per-module
metric and defect rows the analyses consume.

All types are frozen; collections are tuples / frozensets so instances
hash and compare by value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple

METRICS = ("cbo", "dit", "lcom", "noc", "rfc", "wmc")

# A receiver of None means the static type could not be resolved.
UNKNOWN = None

PRIMITIVES = frozenset(
    {"void", "int", "long", "short", "byte", "char", "boolean", "float", "double"}
)


class Invocation(NamedTuple):
    recv: str | None
    name: str
    arity: int


class Field(NamedTuple):
    name: str
    type: str


@dataclass(frozen=True)
class MethodInfo:
    name: str
    param_types: tuple[str, ...] = ()
    return_type: str = "void"
    is_constructor: bool = False
    invocations: frozenset[Invocation] = frozenset()
    field_uses: frozenset[str] = frozenset()
    referenced_types: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "param_types", tuple(self.param_types))
        object.__setattr__(
            self, "invocations", frozenset(Invocation(*i) for i in self.invocations)
        )
        object.__setattr__(self, "field_uses", frozenset(self.field_uses))
        object.__setattr__(self, "referenced_types", frozenset(self.referenced_types))

    @property
    def arity(self) -> int:
        return len(self.param_types)

    @property
    def key(self) -> tuple[str, int]:
        return (self.name, self.arity)


@dataclass(frozen=True)
class ClassInfo:
    name: str
    superclass: str | None = None
    external: bool = False
    interfaces: frozenset[str] = frozenset()
    fields: tuple[Field, ...] = ()
    methods: tuple[MethodInfo, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "interfaces", frozenset(self.interfaces))
        object.__setattr__(self, "fields", tuple(Field(*f) for f in self.fields))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.superclass is None and self.external:
            raise ValueError(f"{self.name}: external flag without a superclass")

    @property
    def field_names(self) -> frozenset[str]:
        return frozenset(f.name for f in self.fields)


@dataclass(frozen=True)
class ClassModel:
    classes: Mapping[str, ClassInfo]
    module_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        classes = dict(self.classes)
        for key, info in classes.items():
            if key != info.name:
                raise ValueError(f"class keyed as {key!r} is named {info.name!r}")
        ordered = {k: classes[k] for k in sorted(classes)}
        mm = {k: self.module_map[k] for k in sorted(self.module_map)}
        object.__setattr__(self, "classes", MappingProxyType(ordered))
        object.__setattr__(self, "module_map", MappingProxyType(mm))

    def __eq__(self, other):
        if not isinstance(other, ClassModel):
            return NotImplemented
        return dict(self.classes) == dict(other.classes) and dict(
            self.module_map
        ) == dict(other.module_map)

    def __hash__(self):
        return hash((tuple(self.classes.items()), tuple(self.module_map.items())))

    @classmethod
    def from_classes(cls, classes, module_map=None):
        return cls({c.name: c for c in classes}, dict(module_map or {}))

    def parent(self, name: str) -> str | None:
        """In-model superclass of ``name``, or None for roots and external parents."""
        info = self.classes[name]
        if info.superclass is None or info.external:
            return None
        return info.superclass

    def modules(self) -> list[str]:
        return sorted(set(self.module_map.values()))


@dataclass(frozen=True)
class MetricsRow:
    module: str
    cbo: int
    dit: int
    lcom: int
    noc: int
    rfc: int
    wmc: int

    def __post_init__(self):
        for m in METRICS:
            if getattr(self, m) < 0:
                raise ValueError(f"{self.module}: {m} must be non-negative")

    def value(self, metric: str):
        return getattr(self, metric)


@dataclass(frozen=True)
class DefectRow:
    module: str
    defects: int
    fix_hours: float = 0.0

    def __post_init__(self):
        if self.defects < 0 or self.fix_hours < 0:
            raise ValueError(f"{self.module}: defects and fix_hours must be non-negative")


class Violation(NamedTuple):
    cls: str
    rule: str
    detail: str = ""

    def __str__(self):
        tail = f" ({self.detail})" if self.detail else ""
        return f"{self.rule} at {self.cls}{tail}"


def _cycles(model: ClassModel) -> list[tuple[str, ...]]:
    """Superclass cycles of length >= 2, each as a sorted tuple of names."""
    state: dict[str, int] = {}  # 1 = on current path, 2 = done
    found = []
    for start in model.classes:
        path = []
        node = start
        while node is not None and state.get(node) is None:
            state[node] = 1
            path.append(node)
            nxt = model.parent(node)
            node = nxt if nxt in model.classes and nxt != node else None
        if node is not None and state.get(node) == 1:
            cyc = path[path.index(node):]
            found.append(tuple(sorted(cyc)))
        for n in path:
            state[n] = 2
    return sorted(found)


def validate_model(model: ClassModel) -> list[Violation]:
    """Check the structural invariants of ``model``.

    Returns a sorted list of violations; empty means the model is well formed.
    Mapping of classes to modules is not checked here (see
    ``build_class_model``).
    """
    out = []
    for name, info in model.classes.items():
        seen_fields = set()
        for f in info.fields:
            if f.name in seen_fields:
                out.append(Violation(name, "duplicate-field", f.name))
            seen_fields.add(f.name)
        seen_methods = set()
        for m in info.methods:
            if m.key in seen_methods:
                out.append(Violation(name, "duplicate-method", f"{m.name}/{m.arity}"))
            seen_methods.add(m.key)
            stray = m.field_uses - info.field_names
            if stray:
                out.append(
                    Violation(name, "undeclared-field-use", f"{m.name}: " + ",".join(sorted(stray)))
                )
        sup = info.superclass
        if sup is not None:
            if sup == name:
                out.append(Violation(name, "self-inheritance"))
            elif info.external and sup in model.classes:
                out.append(Violation(name, "stale-external", sup))
            elif not info.external and sup not in model.classes:
                out.append(Violation(name, "unknown-superclass", sup))
    for cyc in _cycles(model):
        out.append(Violation(cyc[0], "cycle", "{" + ",".join(cyc) + "}"))
    return sorted(set(out))


def topological_order(model: ClassModel) -> list[str]:
    """Classes ordered so every in-model parent precedes its children."""
    order: list[str] = []
    placed: set[str] = set()

    def place(n, trail=()):
        if n in placed:
            return
        if n in trail:
            raise ValueError("superclass relation is cyclic")
        p = model.parent(n)
        if p is not None and p in model.classes and p != n:
            place(p, trail + (n,))
        elif p == n:
            raise ValueError("superclass relation is cyclic")
        placed.add(n)
        order.append(n)

    for n in model.classes:
        place(n)
    return order
