"""Exact-rational discrete Bayesian reasoning with channels.

States (distributions), fuzzy predicates, and channels over named finite
spaces, with the full transformation calculus: prediction, backward
evidence transport, validity, conditioning, Bayesian channel inversion,
and the two soft-evidence update rules (Jeffrey's and Pearl's) together
with their event-based forms and exact-fraction rendering.
"""

from .core import (
    Channel,
    Element,
    Predicate,
    ProductSpace,
    Space,
    State,
    as_fraction,
    compose,
    condition,
    conjunction,
    identity_channel,
    indicator,
    lift_function,
    make_channel,
    make_predicate,
    make_state,
    marginal,
    point,
    point_mass,
    predicate_transform,
    product_space,
    product_state,
    render_decimal,
    render_element,
    render_fraction,
    render_predicate,
    render_state,
    scale,
    state_transform,
    truth,
    uniform_state,
    validity,
)
from .updates import (
    BayesFactor,
    EventStrength,
    EvidenceKind,
    PredicateEvidence,
    StateEvidence,
    UpdateReport,
    atc_update,
    blend_update,
    dagger,
    forward_inference,
    jeffrey_update,
    nec_update,
    normalize_predicate,
    partition_jeffrey,
    pearl_update,
    state_to_predicate,
    state_to_predicate_ratio,
    total_variation,
)
from . import errors, netspec, oracle, sampling

__all__ = [
    "Channel",
    "Element",
    "Predicate",
    "ProductSpace",
    "Space",
    "State",
    "as_fraction",
    "compose",
    "condition",
    "conjunction",
    "identity_channel",
    "indicator",
    "lift_function",
    "make_channel",
    "make_predicate",
    "make_state",
    "marginal",
    "point",
    "point_mass",
    "predicate_transform",
    "product_space",
    "product_state",
    "render_decimal",
    "render_element",
    "render_fraction",
    "render_predicate",
    "render_state",
    "scale",
    "state_transform",
    "truth",
    "uniform_state",
    "validity",
    "BayesFactor",
    "EventStrength",
    "EvidenceKind",
    "PredicateEvidence",
    "StateEvidence",
    "UpdateReport",
    "atc_update",
    "blend_update",
    "dagger",
    "forward_inference",
    "jeffrey_update",
    "nec_update",
    "normalize_predicate",
    "partition_jeffrey",
    "pearl_update",
    "state_to_predicate",
    "state_to_predicate_ratio",
    "total_variation",
    "errors",
    "netspec",
    "oracle",
    "sampling",
]
