"""Directed information-flow graphs and the intrinsic queries over them.

The central value is :class:`CommonRepresentation`, a directed graph whose
vertices are communication interfaces and whose edges are permitted
information flows.  A flow ``(src, dst)`` means information may move from
``src`` to ``dst`` and implies nothing about the reverse direction; a
bidirectional exchange needs both flows, and such a pair is called
complementary.

All values are immutable after construction and every operation is a pure
function, so they can be shared freely across threads.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import UnknownInterfaceError


class Mode(enum.Enum):
    """Access mode of an explicit interface."""

    R = "R"
    W = "W"


class GrantResult(enum.Enum):
    """Tri-state outcome of an access check."""

    PERMIT = "permit"
    DENY = "deny"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class Explicit:
    """An (entity, mode) port.

    ``(e, R)`` is the port through which e's content leaves (a source
    endpoint); ``(e, W)`` is the port through which content enters e (a
    sink endpoint).
    """

    entity: str
    mode: Mode


@dataclass(frozen=True)
class Implicit:
    """A mode-less agent port; one agent may carry several, told apart by label."""

    agent: str
    label: str


InterfaceId = Explicit | Implicit


def interface_key(iface: InterfaceId) -> tuple[str, str, str]:
    """Canonical sort key: variant tag, then names, then mode."""
    if isinstance(iface, Explicit):
        return ("explicit", iface.entity, iface.mode.value)
    return ("implicit", iface.agent, iface.label)


def format_interface(iface: InterfaceId) -> str:
    """Render an interface as text: ``entity.R``, ``entity.W`` or ``agent#label``."""
    if isinstance(iface, Explicit):
        return f"{iface.entity}.{iface.mode.value}"
    return f"{iface.agent}#{iface.label}"


@dataclass(frozen=True)
class Flow:
    """A directed edge: information may move from ``src`` to ``dst``.

    Self-loops on a single interface are rejected; a flow between the R and
    W interfaces of the same entity is fine because those are distinct
    interfaces.
    """

    src: InterfaceId
    dst: InterfaceId

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError(f"self-flow on interface {format_interface(self.src)}")

    def inverse(self) -> "Flow":
        """The reverse flow; ``f.inverse().inverse() == f``."""
        return Flow(self.dst, self.src)


def inverse(flow: Flow) -> Flow:
    return flow.inverse()


def is_complementary(f1: Flow, f2: Flow) -> bool:
    """True iff the two flows form a bidirectional pair."""
    return f2 == f1.inverse()


def flow_key(flow: Flow) -> tuple[tuple[str, str, str], tuple[str, str, str]]:
    return (interface_key(flow.src), interface_key(flow.dst))


def format_flow(flow: Flow) -> str:
    return f"{format_interface(flow.src)} -> {format_interface(flow.dst)}"


@dataclass(frozen=True)
class CommonRepresentation:
    """A finite set of interfaces plus a finite set of flows between them."""

    interfaces: frozenset[InterfaceId] = frozenset()
    flows: frozenset[Flow] = frozenset()

    def __post_init__(self) -> None:
        # Accept any iterables; store canonical frozensets.
        object.__setattr__(self, "interfaces", frozenset(self.interfaces))
        object.__setattr__(self, "flows", frozenset(self.flows))


EMPTY_CR = CommonRepresentation()


@dataclass(frozen=True)
class AvailabilityGraph:
    """Undirected view of a graph: one edge per complementary flow pair."""

    vertices: frozenset[InterfaceId] = frozenset()
    edges: frozenset[frozenset[InterfaceId]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))


def validate(cr: CommonRepresentation) -> list[str]:
    """Well-formedness check.

    Returns an empty list iff every flow endpoint is a declared interface
    and every name component is non-empty; otherwise one entry per problem.
    """
    problems: list[str] = []
    for iface in sorted(cr.interfaces, key=interface_key):
        if isinstance(iface, Explicit):
            parts = {"entity": iface.entity}
        else:
            parts = {"agent": iface.agent, "label": iface.label}
        for name, value in parts.items():
            if not value:
                problems.append(f"interface {format_interface(iface)!r} has an empty {name}")
    for flow in sorted(cr.flows, key=flow_key):
        for endpoint in (flow.src, flow.dst):
            if endpoint not in cr.interfaces:
                problems.append(
                    f"flow {format_flow(flow)} references undeclared interface "
                    f"{format_interface(endpoint)}"
                )
    return problems


def grant(i1: InterfaceId, i2: InterfaceId, cr: CommonRepresentation) -> GrantResult:
    """Tri-state access check from ``i1`` to ``i2``.

    UNDEFINED when the graph is not authoritative over both interfaces
    (either one is undeclared), PERMIT when the flow is present, DENY
    otherwise.  Never raises; all outcomes are values.
    """
    if i1 not in cr.interfaces or i2 not in cr.interfaces:
        return GrantResult.UNDEFINED
    if i1 != i2 and Flow(i1, i2) in cr.flows:
        return GrantResult.PERMIT
    return GrantResult.DENY


def availability_graph(cr: CommonRepresentation) -> AvailabilityGraph:
    """Replace each complementary flow pair with one undirected edge.

    One-directional flows contribute no edge at all.
    """
    edges = {
        frozenset((f.src, f.dst)) for f in cr.flows if f.inverse() in cr.flows
    }
    return AvailabilityGraph(vertices=cr.interfaces, edges=edges)


def connected_components(graph: AvailabilityGraph) -> list[frozenset[InterfaceId]]:
    """Components of the undirected graph, in canonical vertex order."""
    neighbours: dict[InterfaceId, set[InterfaceId]] = {v: set() for v in graph.vertices}
    for edge in graph.edges:
        a, b = tuple(edge)
        neighbours[a].add(b)
        neighbours[b].add(a)
    seen: set[InterfaceId] = set()
    components: list[frozenset[InterfaceId]] = []
    for start in sorted(graph.vertices, key=interface_key):
        if start in seen:
            continue
        queue = deque([start])
        component: set[InterfaceId] = set()
        while queue:
            v = queue.popleft()
            if v in component:
                continue
            component.add(v)
            queue.extend(neighbours[v] - component)
        seen |= component
        components.append(frozenset(component))
    return components


def is_lively(cr: CommonRepresentation) -> bool:
    """True iff the availability graph has exactly one connected component.

    The empty graph has zero components and is therefore not lively; a
    single isolated interface is.
    """
    return len(connected_components(availability_graph(cr))) == 1


def reachable(cr: CommonRepresentation, src: InterfaceId, dst: InterfaceId) -> bool:
    """True iff a directed walk leads from ``src`` to ``dst``; trivially true
    when they coincide.  Raises :class:`UnknownInterfaceError` if either
    interface is undeclared.
    """
    for iface in (src, dst):
        if iface not in cr.interfaces:
            raise UnknownInterfaceError(f"unknown interface {format_interface(iface)}")
    if src == dst:
        return True
    successors: dict[InterfaceId, set[InterfaceId]] = {}
    for flow in cr.flows:
        successors.setdefault(flow.src, set()).add(flow.dst)
    seen = {src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for nxt in successors.get(v, ()):
            if nxt == dst:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False
