"""Source access-control policies and their translation to flow graphs.

Three policy families are supported:

* discretionary lists (access-control lists keyed by object, or capability
  lists keyed by subject), translated from read/write permissions;
* lattice policies (label dominance, Bell-LaPadula style), translated by
  enumerating ordered entity pairs whose labels dominate;
* role-based policies (role assignments plus a seniority hierarchy),
  translated from the privileges each role accumulates through the
  transitive closure of the hierarchy.

Every translation yields a well-formed :class:`~infoflow.model.CommonRepresentation`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .errors import SchemaError, ValidationError
from .model import CommonRepresentation, Explicit, Flow, Implicit, Mode

# Label carried by the implicit interfaces a lattice policy produces.
LBAC_LABEL = "lbac"


class RbacSemantics(enum.Enum):
    """How role privileges turn into flows.

    LITERAL pairs the read and write ports of the *same* object when a role
    holds both modes on it.  CROSS_OBJECT additionally pairs every readable
    object with every writable object held by the same role, capturing the
    transfer a role can perform between distinct objects.
    """

    LITERAL = "literal"
    CROSS_OBJECT = "cross-object"


Grants = frozenset[tuple[str, Mode]]


def _freeze_entries(entries: Mapping[str, Iterable[tuple[str, Mode]]]) -> dict[str, Grants]:
    return {key: frozenset(pairs) for key, pairs in entries.items()}


@dataclass(frozen=True)
class AclPolicy:
    """Object-keyed permission lists: entries maps object -> {(subject, mode)}."""

    objects: frozenset[str]
    subjects: frozenset[str]
    entries: Mapping[str, Grants]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "subjects", frozenset(self.subjects))
        object.__setattr__(self, "entries", _freeze_entries(self.entries))


@dataclass(frozen=True)
class CapabilityPolicy:
    """Subject-keyed permission lists: entries maps subject -> {(object, mode)}."""

    objects: frozenset[str]
    subjects: frozenset[str]
    entries: Mapping[str, Grants]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "subjects", frozenset(self.subjects))
        object.__setattr__(self, "entries", _freeze_entries(self.entries))


@dataclass(frozen=True)
class LatticePolicy:
    """Label-dominance policy.

    ``order`` lists cover pairs (lower, higher); dominance is their
    reflexive-transitive closure.  ``labelling`` assigns one label to every
    entity.
    """

    labels: frozenset[str]
    order: frozenset[tuple[str, str]]
    entities: frozenset[str]
    labelling: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "order", frozenset(tuple(p) for p in self.order))
        object.__setattr__(self, "entities", frozenset(self.entities))
        object.__setattr__(self, "labelling", dict(self.labelling))


@dataclass(frozen=True)
class RbacPolicy:
    """Role assignments plus a seniority hierarchy.

    A hierarchy pair (senior, junior) means the senior role inherits the
    junior role's privileges.
    """

    roles: frozenset[str]
    assignments: Mapping[str, Grants]
    hierarchy: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "roles", frozenset(self.roles))
        object.__setattr__(self, "assignments", _freeze_entries(self.assignments))
        object.__setattr__(self, "hierarchy", frozenset(tuple(p) for p in self.hierarchy))


SourcePolicy = AclPolicy | CapabilityPolicy | LatticePolicy | RbacPolicy


def _warshall(nodes: list[str], pairs: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    """Transitive closure of a relation over ``nodes`` (Warshall, set form)."""
    reach: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in pairs:
        if a in reach and b in reach:
            reach[a].add(b)
    for k in nodes:
        for i in nodes:
            if k in reach[i]:
                reach[i] |= reach[k]
    return {(i, j) for i in nodes for j in reach[i]}


def _label_closure(p: LatticePolicy) -> set[tuple[str, str]]:
    closure = _warshall(sorted(p.labels), p.order)
    closure |= {(label, label) for label in p.labels}
    return closure


def validate_policy(p: SourcePolicy) -> list[str]:
    """All invariant violations of a source policy, empty when valid."""
    if isinstance(p, AclPolicy):
        return _validate_listing(p, keyed_by=p.objects, granting=p.subjects,
                                 key_kind="object", grant_kind="subject")
    if isinstance(p, CapabilityPolicy):
        return _validate_listing(p, keyed_by=p.subjects, granting=p.objects,
                                 key_kind="subject", grant_kind="object")
    if isinstance(p, LatticePolicy):
        return _validate_lattice(p)
    if isinstance(p, RbacPolicy):
        return _validate_rbac(p)
    raise TypeError(f"not a source policy: {type(p).__name__}")


def _check_names(names: Iterable[str], kind: str) -> list[str]:
    return [f"empty {kind} name" for name in names if not name]


def _validate_listing(p: AclPolicy | CapabilityPolicy, *, keyed_by: frozenset[str],
                      granting: frozenset[str], key_kind: str, grant_kind: str) -> list[str]:
    problems = _check_names(p.objects, "object") + _check_names(p.subjects, "subject")
    for name in sorted(p.objects & p.subjects):
        problems.append(f"name {name!r} is declared as both an object and a subject")
    for key in sorted(p.entries):
        if key not in keyed_by:
            problems.append(f"entry key {key!r} is not a declared {key_kind}")
        for name in sorted({name for name, _mode in p.entries[key]}):
            if name not in granting:
                problems.append(f"entry for {key!r} names undeclared {grant_kind} {name!r}")
    return problems


def _validate_lattice(p: LatticePolicy) -> list[str]:
    problems = _check_names(p.labels, "label") + _check_names(p.entities, "entity")
    for low, high in sorted(p.order):
        for label in (low, high):
            if label not in p.labels:
                problems.append(f"order pair names undeclared label {label!r}")
    if not problems:
        closure = _label_closure(p)
        for l1, l2 in sorted(closure):
            if l1 < l2 and (l2, l1) in closure:
                problems.append(
                    f"order is not antisymmetric: {l1!r} and {l2!r} dominate each other"
                )
    for entity in sorted(p.entities):
        if entity not in p.labelling:
            problems.append(f"entity {entity!r} has no label")
    for entity, label in sorted(p.labelling.items()):
        if entity not in p.entities:
            problems.append(f"labelling names undeclared entity {entity!r}")
        if label not in p.labels:
            problems.append(f"entity {entity!r} carries undeclared label {label!r}")
    return problems


def _validate_rbac(p: RbacPolicy) -> list[str]:
    problems = _check_names(p.roles, "role")
    for role in sorted(p.assignments):
        if role not in p.roles:
            problems.append(f"assignment names undeclared role {role!r}")
        problems += [
            "empty object name in assignment"
            for name, _mode in p.assignments[role]
            if not name
        ]
    for senior, junior in sorted(p.hierarchy):
        for role in (senior, junior):
            if role not in p.roles:
                problems.append(f"hierarchy pair names undeclared role {role!r}")
        if senior == junior:
            problems.append(f"role {senior!r} cannot be its own junior")
    if not problems:
        closure = _warshall(sorted(p.roles), p.hierarchy)
        cyclic = sorted(r for r, s in closure if r == s)
        if cyclic:
            problems.append(f"hierarchy contains a cycle through {cyclic[0]!r}")
    return problems


def _check_valid(p: SourcePolicy) -> None:
    problems = validate_policy(p)
    if problems:
        raise ValidationError("; ".join(problems))


def acl_to_cr(p: AclPolicy) -> CommonRepresentation:
    """Translate an object-keyed permission list.

    Every object and subject contributes both an R and a W interface.  A
    write permission (s, W) on object o becomes the flow (s.R, o.W): the
    subject's content moves into the object.  A read permission (s, R)
    becomes (o.R, s.W): the object's content moves to the subject.
    """
    _check_valid(p)
    interfaces = {
        Explicit(name, mode)
        for name in p.objects | p.subjects
        for mode in (Mode.R, Mode.W)
    }
    flows = set()
    for obj in p.entries:
        for subject, mode in p.entries[obj]:
            if mode is Mode.W:
                flows.add(Flow(Explicit(subject, Mode.R), Explicit(obj, Mode.W)))
            else:
                flows.add(Flow(Explicit(obj, Mode.R), Explicit(subject, Mode.W)))
    return CommonRepresentation(interfaces=interfaces, flows=flows)


def transpose_capabilities(p: CapabilityPolicy) -> AclPolicy:
    """Regroup subject-keyed grants by object."""
    by_object: dict[str, set[tuple[str, Mode]]] = {}
    for subject in p.entries:
        for obj, mode in p.entries[subject]:
            by_object.setdefault(obj, set()).add((subject, mode))
    return AclPolicy(
        objects=p.objects,
        subjects=p.subjects,
        entries={obj: frozenset(pairs) for obj, pairs in by_object.items()},
    )


def capability_to_cr(p: CapabilityPolicy) -> CommonRepresentation:
    """Translate a subject-keyed permission list; identical flows to the
    object-keyed form of the same matrix."""
    _check_valid(p)
    return acl_to_cr(transpose_capabilities(p))


def lattice_dominates(p: LatticePolicy, l1: str, l2: str) -> bool:
    """True iff ``l1`` is dominated by ``l2`` (reflexive-transitive)."""
    for label in (l1, l2):
        if label not in p.labels:
            raise ValueError(f"unknown label {label!r}")
    return (l1, l2) in _label_closure(p)


def lbac_to_cr(p: LatticePolicy) -> CommonRepresentation:
    """Translate a label-dominance policy.

    Entities become implicit interfaces (no mode is involved), and every
    ordered pair of distinct entities whose labels satisfy dominance gets a
    flow.  Equal labels yield flows in both directions.
    """
    _check_valid(p)
    closure = _label_closure(p)
    interfaces = {Implicit(e, LBAC_LABEL) for e in p.entities}
    flows = {
        Flow(Implicit(e1, LBAC_LABEL), Implicit(e2, LBAC_LABEL))
        for e1 in p.entities
        for e2 in p.entities
        if e1 != e2 and (p.labelling[e1], p.labelling[e2]) in closure
    }
    return CommonRepresentation(interfaces=interfaces, flows=flows)


def rbac_closure(p: RbacPolicy) -> frozenset[tuple[str, str]]:
    """Transitive closure of the role hierarchy."""
    _check_valid(p)
    return frozenset(_warshall(sorted(p.roles), p.hierarchy))


def rbac_seniority(p: RbacPolicy, role: str) -> frozenset[str]:
    """All roles junior to ``role``, the role itself excluded."""
    if role not in p.roles:
        raise ValueError(f"unknown role {role!r}")
    return frozenset(j for s, j in rbac_closure(p) if s == role and j != role)


def rbac_privileges(p: RbacPolicy, role: str) -> Grants:
    """The role's own grants plus everything inherited from junior roles."""
    if role not in p.roles:
        raise ValueError(f"unknown role {role!r}")
    grants = set(p.assignments.get(role, frozenset()))
    for junior in rbac_seniority(p, role):
        grants |= p.assignments.get(junior, frozenset())
    return frozenset(grants)


def rbac_to_cr(p: RbacPolicy, semantics: RbacSemantics = RbacSemantics.LITERAL) -> CommonRepresentation:
    """Translate a role policy under the chosen flow semantics.

    Both modes of every object mentioned in any assignment become
    interfaces.  See :class:`RbacSemantics` for how flows are derived.
    """
    if not isinstance(semantics, RbacSemantics):
        raise ValueError(f"unknown semantics {semantics!r}")
    _check_valid(p)
    juniors: dict[str, list[str]] = {}
    for senior, junior in _warshall(sorted(p.roles), p.hierarchy):
        juniors.setdefault(senior, []).append(junior)
    mentioned = {obj for grants in p.assignments.values() for obj, _mode in grants}
    interfaces = {Explicit(o, m) for o in mentioned for m in (Mode.R, Mode.W)}
    flows: set[Flow] = set()
    for role in p.roles:
        privileges = set(p.assignments.get(role, frozenset()))
        for junior in juniors.get(role, ()):
            privileges |= p.assignments.get(junior, frozenset())
        readable = {o for o, m in privileges if m is Mode.R}
        writable = {o for o, m in privileges if m is Mode.W}
        if semantics is RbacSemantics.LITERAL:
            flows |= {
                Flow(Explicit(o, Mode.R), Explicit(o, Mode.W))
                for o in readable & writable
            }
        else:
            flows |= {
                Flow(Explicit(r, Mode.R), Explicit(w, Mode.W))
                for r in readable
                for w in writable
            }
    return CommonRepresentation(interfaces=interfaces, flows=flows)


def policy_to_cr(policy: SourcePolicy,
                 rbac_semantics: RbacSemantics = RbacSemantics.LITERAL) -> CommonRepresentation:
    """Dispatch a policy of any supported family to its translation."""
    if isinstance(policy, AclPolicy):
        return acl_to_cr(policy)
    if isinstance(policy, CapabilityPolicy):
        return capability_to_cr(policy)
    if isinstance(policy, LatticePolicy):
        return lbac_to_cr(policy)
    if isinstance(policy, RbacPolicy):
        return rbac_to_cr(policy, rbac_semantics)
    raise TypeError(f"not a source policy: {type(policy).__name__}")


# -- policy file schema ------------------------------------------------------

def _parse_names(value: Any, where: str) -> frozenset[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"{where}: expected an array of strings")
    return frozenset(value)


def _parse_pair(value: Any, where: str) -> tuple[str, str]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, str) for v in value)
    ):
        raise SchemaError(f"{where}: expected a [name, name] pair")
    return (value[0], value[1])


def _parse_grants(value: Any, where: str) -> Grants:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected an array of [name, mode] pairs")
    grants = set()
    for n, item in enumerate(value):
        name, mode = _parse_pair(item, f"{where}[{n}]")
        if mode not in ("R", "W"):
            raise SchemaError(f"{where}[{n}]: mode must be 'R' or 'W', got {mode!r}")
        grants.add((name, Mode(mode)))
    return frozenset(grants)


def _parse_grant_map(value: Any, where: str) -> dict[str, Grants]:
    if not isinstance(value, dict):
        raise SchemaError(f"{where}: expected an object")
    return {key: _parse_grants(item, f"{where}.{key}") for key, item in value.items()}


def _parse_pairs(value: Any, where: str) -> frozenset[tuple[str, str]]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected an array of pairs")
    return frozenset(_parse_pair(item, f"{where}[{n}]") for n, item in enumerate(value))


def _parse_str_map(value: Any, where: str) -> dict[str, str]:
    if not isinstance(value, dict) or not all(isinstance(v, str) for v in value.values()):
        raise SchemaError(f"{where}: expected an object mapping names to names")
    return dict(value)


def _require_fields(obj: dict[str, Any], fields: set[str]) -> None:
    missing = fields - obj.keys()
    if missing:
        raise SchemaError(f"policy: missing field {sorted(missing)[0]!r}")
    unknown = obj.keys() - fields - {"kind"}
    if unknown:
        raise SchemaError(f"policy: unknown field {sorted(unknown)[0]!r}")


def policy_from_dict(obj: Any) -> SourcePolicy:
    """Parse a policy document; the ``kind`` tag picks the family.

    Structure problems raise :class:`SchemaError`; a structurally sound
    policy that breaks a semantic invariant raises :class:`ValidationError`.
    """
    if not isinstance(obj, dict):
        raise SchemaError(f"policy: expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind in ("acl", "capabilities"):
        _require_fields(obj, {"objects", "subjects", "entries"})
        cls = AclPolicy if kind == "acl" else CapabilityPolicy
        policy: SourcePolicy = cls(
            objects=_parse_names(obj["objects"], "objects"),
            subjects=_parse_names(obj["subjects"], "subjects"),
            entries=_parse_grant_map(obj["entries"], "entries"),
        )
    elif kind == "lbac":
        _require_fields(obj, {"labels", "order", "entities", "labelling"})
        policy = LatticePolicy(
            labels=_parse_names(obj["labels"], "labels"),
            order=_parse_pairs(obj["order"], "order"),
            entities=_parse_names(obj["entities"], "entities"),
            labelling=_parse_str_map(obj["labelling"], "labelling"),
        )
    elif kind == "rbac":
        _require_fields(obj, {"roles", "assignments", "hierarchy"})
        policy = RbacPolicy(
            roles=_parse_names(obj["roles"], "roles"),
            assignments=_parse_grant_map(obj["assignments"], "assignments"),
            hierarchy=_parse_pairs(obj["hierarchy"], "hierarchy"),
        )
    else:
        raise SchemaError(
            f"policy: kind must be 'acl', 'capabilities', 'lbac' or 'rbac', got {kind!r}"
        )
    _check_valid(policy)
    return policy
