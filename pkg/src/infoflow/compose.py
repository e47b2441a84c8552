"""Composites over flow graphs: permissive merge and deny-favouring append.

Both operations assume consistent interface naming: an interface appearing
in both operands is the same interface.  Merge is commutative; append is
not, so the n-ary fold is strictly left-to-right.
"""

from __future__ import annotations

from typing import Sequence

from .model import CommonRepresentation


def merge(a: CommonRepresentation, b: CommonRepresentation) -> CommonRepresentation:
    """Component-wise union; favours permit.

    Commutative, associative and idempotent, with the empty graph as
    identity.
    """
    return CommonRepresentation(
        interfaces=a.interfaces | b.interfaces,
        flows=a.flows | b.flows,
    )


def append(a: CommonRepresentation, b: CommonRepresentation) -> CommonRepresentation:
    """Priority composite; ``a`` wins where the two disagree.

    Interfaces are unioned.  All of a's flows survive; a flow of b survives
    only when neither it nor its inverse appears in a's flows.
    """
    survivors = {
        f for f in b.flows if f not in a.flows and f.inverse() not in a.flows
    }
    return CommonRepresentation(
        interfaces=a.interfaces | b.interfaces,
        flows=a.flows | survivors,
    )


def append_strict(a: CommonRepresentation, b: CommonRepresentation) -> CommonRepresentation:
    """Stricter priority composite: no new flows between a's own interfaces.

    A flow of b is dropped whenever both of its endpoints already belong to
    ``a`` unless ``a`` itself contains that exact flow.  Flows reaching at
    least one genuinely new interface pass through.
    """
    survivors = {
        f
        for f in b.flows
        if f in a.flows or f.src not in a.interfaces or f.dst not in a.interfaces
    }
    return CommonRepresentation(
        interfaces=a.interfaces | b.interfaces,
        flows=a.flows | survivors,
    )


def merge_all(crs: Sequence[CommonRepresentation]) -> CommonRepresentation:
    """Fold of :func:`merge`; the result is independent of order."""
    if not crs:
        raise ValueError("merge_all needs at least one graph")
    result = crs[0]
    for cr in crs[1:]:
        result = merge(result, cr)
    return result


def append_all(crs: Sequence[CommonRepresentation]) -> CommonRepresentation:
    """Left-to-right fold of :func:`append`; order matters."""
    if not crs:
        raise ValueError("append_all needs at least one graph")
    result = crs[0]
    for cr in crs[1:]:
        result = append(result, cr)
    return result
