"""Canonical JSON interchange for flow graphs, plus DOT export.

A graph document looks like::

    {
      "interfaces": [
        {"kind": "explicit", "entity": "o1", "mode": "R"},
        {"kind": "implicit", "agent": "alice", "label": "chat"}
      ],
      "flows": [
        {"from": {...}, "to": {...}}
      ]
    }

Arrays are emitted in canonical order (variant tag, then names, then mode),
so serialization is deterministic byte for byte.  Loading is strict:
unknown or missing fields raise :class:`SchemaError`.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SchemaError, ValidationError
from .model import (
    CommonRepresentation,
    Explicit,
    Flow,
    Implicit,
    InterfaceId,
    Mode,
    flow_key,
    format_interface,
    interface_key,
)


def _require_keys(obj: dict[str, Any], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = required - obj.keys()
    if missing:
        raise SchemaError(f"{where}: missing field {sorted(missing)[0]!r}")
    unknown = obj.keys() - required
    if unknown:
        raise SchemaError(f"{where}: unknown field {sorted(unknown)[0]!r}")


def _require_str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def interface_to_dict(iface: InterfaceId) -> dict[str, str]:
    if isinstance(iface, Explicit):
        return {"kind": "explicit", "entity": iface.entity, "mode": iface.mode.value}
    return {"kind": "implicit", "agent": iface.agent, "label": iface.label}


def interface_from_dict(obj: Any, where: str = "interface") -> InterfaceId:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "explicit":
        _require_keys(obj, {"kind", "entity", "mode"}, where)
        mode = obj["mode"]
        if mode not in ("R", "W"):
            raise SchemaError(f"{where}: mode must be 'R' or 'W', got {mode!r}")
        return Explicit(_require_str(obj["entity"], f"{where}.entity"), Mode(mode))
    if kind == "implicit":
        _require_keys(obj, {"kind", "agent", "label"}, where)
        return Implicit(
            _require_str(obj["agent"], f"{where}.agent"),
            _require_str(obj["label"], f"{where}.label"),
        )
    raise SchemaError(f"{where}: kind must be 'explicit' or 'implicit', got {kind!r}")


def flow_to_dict(flow: Flow) -> dict[str, Any]:
    return {"from": interface_to_dict(flow.src), "to": interface_to_dict(flow.dst)}


def flow_from_dict(obj: Any, where: str = "flow") -> Flow:
    _require_keys(obj, {"from", "to"}, where)
    src = interface_from_dict(obj["from"], f"{where}.from")
    dst = interface_from_dict(obj["to"], f"{where}.to")
    try:
        return Flow(src, dst)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def cr_to_dict(cr: CommonRepresentation) -> dict[str, Any]:
    return {
        "interfaces": [
            interface_to_dict(i) for i in sorted(cr.interfaces, key=interface_key)
        ],
        "flows": [flow_to_dict(f) for f in sorted(cr.flows, key=flow_key)],
    }


def cr_from_dict(obj: Any) -> CommonRepresentation:
    _require_keys(obj, {"interfaces", "flows"}, "graph")
    if not isinstance(obj["interfaces"], list) or not isinstance(obj["flows"], list):
        raise SchemaError("graph: 'interfaces' and 'flows' must be arrays")
    interfaces = {
        interface_from_dict(item, f"interfaces[{n}]")
        for n, item in enumerate(obj["interfaces"])
    }
    flows = {flow_from_dict(item, f"flows[{n}]") for n, item in enumerate(obj["flows"])}
    return CommonRepresentation(interfaces=interfaces, flows=flows)


def dumps(cr: CommonRepresentation) -> str:
    """Serialize to canonical, newline-terminated JSON text."""
    return json.dumps(cr_to_dict(cr), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> CommonRepresentation:
    """Parse JSON text into a graph; :class:`SchemaError` on malformed input."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return cr_from_dict(obj)


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(cr: CommonRepresentation) -> str:
    """Render the graph as DOT text for visual inspection.

    Explicit interfaces become ``entity.R`` / ``entity.W`` nodes, implicit
    ones ``agent#label``; one edge per flow, everything in canonical order.
    """
    lines = ["digraph cr {"]
    for iface in sorted(cr.interfaces, key=interface_key):
        lines.append(f"  {_dot_quote(format_interface(iface))};")
    for flow in sorted(cr.flows, key=flow_key):
        src = _dot_quote(format_interface(flow.src))
        dst = _dot_quote(format_interface(flow.dst))
        lines.append(f"  {src} -> {dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"
