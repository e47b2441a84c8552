"""Information-flow view of access-control policies.

Translate classical policies (permission lists, label lattices, role
hierarchies) into one directed graph of permitted information flows, then
compose, conflict-check and query those graphs.
"""

from .analyze import common_flows, conflicting, conflicts, diffs, one_sided_conflicts
from .compose import append, append_all, append_strict, merge, merge_all
from .errors import SchemaError, UnknownInterfaceError, ValidationError
from .model import (
    EMPTY_CR,
    AvailabilityGraph,
    CommonRepresentation,
    Explicit,
    Flow,
    GrantResult,
    Implicit,
    InterfaceId,
    Mode,
    availability_graph,
    connected_components,
    format_flow,
    format_interface,
    grant,
    interface_key,
    inverse,
    is_complementary,
    is_lively,
    reachable,
    validate,
)
from .policies import (
    LBAC_LABEL,
    AclPolicy,
    CapabilityPolicy,
    LatticePolicy,
    RbacPolicy,
    RbacSemantics,
    SourcePolicy,
    acl_to_cr,
    capability_to_cr,
    lattice_dominates,
    lbac_to_cr,
    policy_from_dict,
    policy_to_cr,
    rbac_closure,
    rbac_privileges,
    rbac_seniority,
    rbac_to_cr,
    transpose_capabilities,
    validate_policy,
)
from .rules import (
    Action,
    And,
    CompositionDecision,
    CompositionRule,
    Condition,
    ConflictCountAtMost,
    ConflictsComplementaryIn,
    NoConflicts,
    Not,
    Side,
    apply_rule,
    condition_from_dict,
    eval_condition,
    rule_from_dict,
)
from .serialize import cr_from_dict, cr_to_dict, dumps, loads, to_dot

__version__ = "0.1.0"

__all__ = [
    "AclPolicy",
    "Action",
    "And",
    "AvailabilityGraph",
    "CapabilityPolicy",
    "CommonRepresentation",
    "CompositionDecision",
    "CompositionRule",
    "Condition",
    "ConflictCountAtMost",
    "ConflictsComplementaryIn",
    "EMPTY_CR",
    "Explicit",
    "Flow",
    "GrantResult",
    "Implicit",
    "InterfaceId",
    "LBAC_LABEL",
    "LatticePolicy",
    "Mode",
    "NoConflicts",
    "Not",
    "RbacPolicy",
    "RbacSemantics",
    "SchemaError",
    "Side",
    "SourcePolicy",
    "UnknownInterfaceError",
    "ValidationError",
    "acl_to_cr",
    "append",
    "append_all",
    "append_strict",
    "apply_rule",
    "availability_graph",
    "capability_to_cr",
    "common_flows",
    "condition_from_dict",
    "conflicting",
    "conflicts",
    "connected_components",
    "cr_from_dict",
    "cr_to_dict",
    "diffs",
    "dumps",
    "eval_condition",
    "format_flow",
    "format_interface",
    "grant",
    "interface_key",
    "inverse",
    "is_complementary",
    "is_lively",
    "lattice_dominates",
    "lbac_to_cr",
    "loads",
    "merge",
    "merge_all",
    "one_sided_conflicts",
    "policy_from_dict",
    "policy_to_cr",
    "rbac_closure",
    "rbac_privileges",
    "rbac_seniority",
    "rbac_to_cr",
    "reachable",
    "rule_from_dict",
    "to_dot",
    "transpose_capabilities",
    "validate",
    "validate_policy",
]
