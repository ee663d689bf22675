"""The six CK metrics per class and their roll-up to modules."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .errors import EmptyModule, UnmappedClass
from .model import METRICS, PRIMITIVES, ClassInfo, ClassModel, MetricsRow

SUM, MAX, MEAN = "sum", "max", "mean"

DEFAULT_POLICY = {"cbo": SUM, "dit": MAX, "lcom": SUM, "noc": SUM, "rfc": SUM, "wmc": SUM}


@dataclass(frozen=True)
class ClassMetrics:
    name: str
    wmc: int
    dit: int
    noc: int
    cbo: int
    rfc: int
    lcom: int

    def value(self, metric):
        return getattr(self, metric)


def wmc(cls: ClassInfo) -> int:
    """Number of declared methods, constructors included (unit weights)."""
    return len(cls.methods)


def dit(cls: ClassInfo, model: ClassModel) -> int:
    depth = 0
    info = cls
    while info.superclass is not None:
        depth += 1
        if info.external:
            break
        info = model.classes[info.superclass]
    return depth


def noc(cls: ClassInfo, model: ClassModel) -> int:
    return sum(
        1
        for other in model.classes.values()
        if other.superclass == cls.name and not other.external
    )


def coupled_classes(cls: ClassInfo) -> set[str]:
    names = set(cls.interfaces)
    if cls.superclass is not None:
        names.add(cls.superclass)
    names.update(f.type for f in cls.fields)
    for m in cls.methods:
        names.update(m.param_types)
        names.add(m.return_type)
        names.update(m.referenced_types)
        names.update(i.recv for i in m.invocations if i.recv is not None)
    names -= PRIMITIVES
    names.discard(cls.name)
    return names


def cbo(cls: ClassInfo, model: ClassModel | None = None) -> int:
    """Fan-out coupling: distinct other class names this class refers to."""
    return len(coupled_classes(cls))


def response_set(cls: ClassInfo) -> set[tuple]:
    rs = {(cls.name, m.name, m.arity) for m in cls.methods}
    rs.update((i.recv, i.name, i.arity) for i in _invocations(cls))
    return rs


def _invocations(cls: ClassInfo):
    for m in cls.methods:
        yield from m.invocations


def rfc(cls: ClassInfo) -> int:
    return len(response_set(cls))


def lcom(cls: ClassInfo) -> int:
    """Disjoint-field-usage method pairs minus sharing pairs, floored at 0.

    A method touching no fields is disjoint from every other method.
    """
    disjoint = sharing = 0
    for a, b in combinations(cls.methods, 2):
        if a.field_uses & b.field_uses:
            sharing += 1
        else:
            disjoint += 1
    return max(disjoint - sharing, 0)


def class_metrics(cls: ClassInfo, model: ClassModel) -> ClassMetrics:
    return ClassMetrics(
        name=cls.name,
        wmc=wmc(cls),
        dit=dit(cls, model),
        noc=noc(cls, model),
        cbo=cbo(cls, model),
        rfc=rfc(cls),
        lcom=lcom(cls),
    )


def compute_all(model: ClassModel) -> dict[str, ClassMetrics]:
    return {name: class_metrics(info, model) for name, info in model.classes.items()}


def _combine(rule, values):
    if rule == SUM:
        return sum(values)
    if rule == MAX:
        return max(values)
    if rule == MEAN:
        # half-up rounding; builtin round() would bank to even
        return int(sum(values) / len(values) + 0.5)
    raise ValueError(f"unknown aggregation rule {rule!r}")


def make_policy(overrides: Mapping[str, str] | None = None) -> dict[str, str]:
    policy = dict(DEFAULT_POLICY)
    for metric, rule in (overrides or {}).items():
        metric, rule = metric.lower(), rule.lower()
        if metric not in policy:
            raise ValueError(f"unknown metric {metric!r}")
        if rule not in (SUM, MAX, MEAN):
            raise ValueError(f"unknown aggregation rule {rule!r}")
        policy[metric] = rule
    return policy


def aggregate_modules(model: ClassModel, policy=None, modules=None) -> list[MetricsRow]:
    """One row per module, sorted by module name.

    ``modules`` may list module names explicitly; any of them without
    classes raises EmptyModule.
    """
    policy = make_policy(policy) if policy is None or set(policy) != set(METRICS) else policy
    per_class = compute_all(model)
    members: dict[str, list[str]] = {m: [] for m in (modules or [])}
    for name in model.classes:
        if name not in model.module_map:
            raise UnmappedClass(name)
        members.setdefault(model.module_map[name], []).append(name)
    rows = []
    for mod in sorted(members):
        names = members[mod]
        if not names:
            raise EmptyModule(mod)
        vals = {
            m: _combine(policy[m], [per_class[n].value(m) for n in names]) for m in METRICS
        }
        rows.append(MetricsRow(mod, **vals))
    return rows
