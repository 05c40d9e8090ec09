"""Bayesian channel inversion and the soft-evidence update rules.

Two rules accommodate soft evidence about the codomain of a channel
``c : X -> Y`` with prior ``sigma`` on X:

* Pearl's rule treats the evidence as a fuzzy predicate ``q`` on Y and
  *factors it in* by backward inference: the posterior is ``sigma``
  conditioned on ``c << q``.  Iterated Pearl updates commute, and the
  updated state makes the evidence "more true" (improvement).

* Jeffrey's rule treats the evidence as a new state of affairs ``rho``
  on Y and *adjusts to it* by pushing ``rho`` through the inverted
  channel: the posterior is ``dagger(c, sigma) >> rho`` (correction).
  Iterated Jeffrey updates do not commute in general.

The inversion ``dagger(c, sigma)`` only exists when the prediction
``c >> sigma`` has full support.  ``jeffrey_update`` offers a relaxed
mode that inverts only the rows the evidence actually touches, which is
the natural precondition for partition-style updates.

Also here: the event-based softness specifications ("all things
considered" posterior validity and "nothing else considered" Bayes
factor), the convex blend of the two rules, total variation distance,
and state/predicate conversions.  States and predicates stay distinct
types throughout; the conversions are explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from . import core
from .core import (
    Channel,
    Element,
    Predicate,
    Space,
    State,
    as_fraction,
    condition,
    indicator,
    predicate_transform,
    render_element,
    state_transform,
    validity,
)
from .errors import (
    DegenerateDenominator,
    DegenerateEvent,
    DivisionBySupportGap,
    EmptyBlockWithMass,
    NotDeterministic,
    NotFullSupport,
    ValueOutOfRange,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Bayesian inversion


def dagger(c: Channel, sigma: State) -> Channel:
    """The inverted channel c†_sigma : Y -> X.

    Row at y is sigma conditioned on the point evidence 1_y pulled back
    through c, i.e. weight sigma(x)*c(x)(y) / (c >> sigma)(y).  Requires
    the predicted state c >> sigma to have full support; raises
    NotFullSupport naming the first offending element otherwise.
    """
    rows = _dagger_rows(c, sigma, c.codomain.elements)
    return Channel(c.codomain, c.domain, rows)


def _dagger_rows(
    c: Channel, sigma: State, needed: Iterable[Element]
) -> dict[Element, State]:
    core._require_same_space(sigma.space, c.domain, "inversion")
    tau = state_transform(c, sigma)
    rows: dict[Element, State] = {}
    for y in needed:
        mass = tau.weights[y]
        if mass == 0:
            raise NotFullSupport(
                f"cannot invert: predicted state has weight 0 at "
                f"{render_element(y)}",
                element=y,
            )
        rows[y] = State(
            c.domain,
            {x: sigma.weights[x] * c.rows[x].weights[y] / mass for x in c.domain},
        )
    return rows


# ---------------------------------------------------------------------------
# the two update rules


def pearl_update(sigma: State, c: Channel, q: Predicate) -> State:
    """Factor predicate evidence in by backward inference: sigma|_(c << q)."""
    return condition(sigma, predicate_transform(c, q))


def jeffrey_update(
    sigma: State, c: Channel, rho: State, *, relaxed: bool = False
) -> State:
    """Adjust to a new state of affairs: dagger(c, sigma) >> rho.

    With ``relaxed=True`` the inversion is computed only at elements
    where rho has positive weight, so the prediction c >> sigma may have
    support gaps as long as the evidence avoids them.
    """
    core._require_same_space(rho.space, c.codomain, "Jeffrey update")
    needed = rho.support() if relaxed else c.codomain.elements
    rows = _dagger_rows(c, sigma, needed)
    weights = {x: ZERO for x in sigma.space.elements}
    for y in needed:
        r = rho.weights[y]
        if r == 0:
            continue
        for x, w in rows[y].weights.items():
            weights[x] += r * w
    return State(sigma.space, weights)


def forward_inference(sigma: State, c: Channel, p: Predicate) -> State:
    """Condition on predicate evidence, then predict: c >> (sigma|_p)."""
    return state_transform(c, condition(sigma, p))


# ---------------------------------------------------------------------------
# state/predicate conversions


def state_to_predicate(rho: State) -> Predicate:
    """Read a state's weights as predicate values (they lie in [0, 1])."""
    return Predicate(rho.space, dict(rho.weights))


def normalize_predicate(p: Predicate) -> State:
    """Normalise a predicate with positive total value to a state."""
    total = sum(p.values.values(), ZERO)
    if total == 0:
        raise ValueOutOfRange("cannot normalise the zero predicate to a state")
    return State(p.space, {x: v / total for x, v in p.values.items()})


def state_to_predicate_ratio(rho: State, tau: State) -> Predicate:
    """The ratio predicate rho/tau, rescaled so its maximum value is 1.

    Translates Jeffrey evidence rho into Pearl evidence against the
    prediction tau: conditioning on this predicate reproduces the
    Jeffrey posterior.  Undefined where rho is positive but tau is 0.
    """
    core._require_same_space(rho.space, tau.space, "state ratio")
    ratios: dict[Element, Fraction] = {}
    for y in rho.space.elements:
        t = tau.weights[y]
        r = rho.weights[y]
        if t == 0:
            if r > 0:
                raise DivisionBySupportGap(
                    f"ratio undefined: evidence has mass at "
                    f"{render_element(y)} where the prediction has none"
                )
            ratios[y] = ZERO
        else:
            ratios[y] = r / t
    peak = max(ratios.values())
    # rho sums to 1, so some ratio is positive whenever tau is a state
    return Predicate(rho.space, {y: q / peak for y, q in ratios.items()})


# ---------------------------------------------------------------------------
# partition / event forms


def partition_blocks(f: Channel) -> dict[Element, tuple[Element, ...]]:
    """The partition induced by a deterministic channel: i -> f^{-1}(i)."""
    if not f.is_deterministic:
        raise NotDeterministic(
            "partition update needs a deterministic channel (all rows point masses)"
        )
    blocks: dict[Element, list[Element]] = {i: [] for i in f.codomain.elements}
    for x in f.domain.elements:
        image = next(y for y, w in f.rows[x].weights.items() if w == 1)
        blocks[image].append(x)
    return {i: tuple(xs) for i, xs in blocks.items()}


def partition_jeffrey(f: Channel, omega: State, rho: State) -> State:
    """Jeffrey's rule along a deterministic channel, by block conditioning.

    Computes sum_i rho(i) * omega|_(1_{U_i}) over the blocks U_i = f^{-1}(i).
    Agrees exactly with ``jeffrey_update(omega, f, rho, relaxed=True)``;
    stated separately because the block form needs no inversion machinery.
    """
    core._require_same_space(omega.space, f.domain, "partition update")
    core._require_same_space(rho.space, f.codomain, "partition update")
    blocks = partition_blocks(f)
    weights = {x: ZERO for x in omega.space.elements}
    for i, r in rho.weights.items():
        if r == 0:
            continue
        block_mass = sum((omega.weights[x] for x in blocks[i]), ZERO)
        if block_mass == 0:
            raise EmptyBlockWithMass(
                f"evidence gives mass {r} to block {render_element(i)} "
                "whose prior mass is 0"
            )
        for x in blocks[i]:
            weights[x] += r * omega.weights[x] / block_mass
    return State(omega.space, weights)


def _event_masses(
    omega: State, event: Iterable[Element]
) -> tuple[frozenset, Fraction, Fraction]:
    members = frozenset(event)
    if not members:
        raise DegenerateEvent("event must be a nonempty set of elements")
    for x in members:
        omega.space.require(x)
    inside = sum((omega.weights[x] for x in members), ZERO)
    return members, inside, ONE - inside


def atc_update(omega: State, event: Iterable[Element], strength) -> State:
    """"All things considered": prescribe the posterior validity of an event.

    The result gives the event total mass exactly ``strength``, scaling
    inside and outside the event separately (Jeffrey on the two-block
    partition).  Degenerate when the needed side of the partition has
    prior mass 0.
    """
    q = as_fraction(strength)
    if q < 0 or q > 1:
        raise ValueOutOfRange(f"strength {q} lies outside [0, 1]")
    members, inside, outside = _event_masses(omega, event)
    if q > 0 and inside == 0:
        raise DegenerateEvent(f"event has prior mass 0 but target validity {q}")
    if q < 1 and outside == 0:
        raise DegenerateEvent(
            f"event complement has prior mass 0 but target validity {q}"
        )
    weights = {}
    for x in omega.space.elements:
        if x in members:
            weights[x] = q * omega.weights[x] / inside if q > 0 else ZERO
        else:
            weights[x] = (ONE - q) * omega.weights[x] / outside if q < 1 else ZERO
    return State(omega.space, weights)


def nec_update(omega: State, event: Iterable[Element], factor) -> State:
    """"Nothing else considered": weigh an event by a Bayes factor k > 0.

    Multiplies mass inside the event by k and renormalises; equivalent to
    Pearl's rule with the two-valued predicate {E: 1, not-E: 1/k} (scaled
    into [0, 1] when k < 1, which conditioning ignores anyway).
    """
    k = as_fraction(factor)
    if k <= 0:
        raise ValueOutOfRange(f"Bayes factor must be positive, got {k}")
    members, inside, outside = _event_masses(omega, event)
    denom = k * inside + outside
    if denom == 0:
        raise DegenerateDenominator("event split has total weighted mass 0")
    return State(
        omega.space,
        {
            x: (k if x in members else ONE) * omega.weights[x] / denom
            for x in omega.space.elements
        },
    )


def blend_update(s, jr: State, pr: State) -> State:
    """Convex mix s*JR + (1-s)*PR of a Jeffrey and a Pearl posterior."""
    s = as_fraction(s)
    if s < 0 or s > 1:
        raise ValueOutOfRange(f"blend weight {s} lies outside [0, 1]")
    core._require_same_space(jr.space, pr.space, "blend")
    return State(
        jr.space,
        {x: s * jr.weights[x] + (ONE - s) * pr.weights[x] for x in jr.space},
    )


def total_variation(sigma: State, other: State) -> Fraction:
    """Distance sum_x |sigma(x) - other(x)| (un-halved convention)."""
    core._require_same_space(sigma.space, other.space, "total variation")
    return sum(
        (abs(sigma.weights[x] - other.weights[x]) for x in sigma.space), ZERO
    )


# ---------------------------------------------------------------------------
# evidence descriptions and update reports (for tooling/explain output)


@dataclass(frozen=True)
class PredicateEvidence:
    predicate: Predicate


@dataclass(frozen=True)
class StateEvidence:
    state: State


@dataclass(frozen=True)
class EventStrength:
    space: Space
    event: frozenset
    strength: Fraction

    def __post_init__(self):
        object.__setattr__(self, "event", frozenset(self.event))
        object.__setattr__(self, "strength", as_fraction(self.strength))
        _check_event(self.space, self.event)
        if not 0 <= self.strength <= 1:
            raise ValueOutOfRange(f"strength {self.strength} lies outside [0, 1]")


@dataclass(frozen=True)
class BayesFactor:
    space: Space
    event: frozenset
    factor: Fraction

    def __post_init__(self):
        object.__setattr__(self, "event", frozenset(self.event))
        object.__setattr__(self, "factor", as_fraction(self.factor))
        _check_event(self.space, self.event)
        if self.factor <= 0:
            raise ValueOutOfRange(f"Bayes factor must be positive, got {self.factor}")


def _check_event(space: Space, event: frozenset) -> None:
    for x in event:
        space.require(x)
    if not event:
        raise DegenerateEvent("event must be nonempty")
    if len(event) == len(space):
        raise DegenerateEvent("event must be a proper subset of its space")


EvidenceKind = Union[PredicateEvidence, StateEvidence, EventStrength, BayesFactor]


@dataclass(frozen=True)
class UpdateReport:
    """A posterior together with how it was obtained.

    ``intermediate`` carries the working shown in step-by-step displays:
    the transformed predicate and its validity for Pearl-style updates,
    the inverted channel for Jeffrey-style ones.
    """

    rule: str  # jeffrey | pearl | atc | nec | blend
    prior: State
    evidence: Optional[EvidenceKind]
    posterior: State
    intermediate: Mapping[str, object]


def pearl_report(sigma: State, c: Channel, q: Predicate) -> UpdateReport:
    transformed = predicate_transform(c, q)
    return UpdateReport(
        rule="pearl",
        prior=sigma,
        evidence=PredicateEvidence(q),
        posterior=condition(sigma, transformed),
        intermediate={
            "transformed_predicate": transformed,
            "validity": validity(sigma, transformed),
        },
    )


def jeffrey_report(
    sigma: State, c: Channel, rho: State, *, relaxed: bool = False
) -> UpdateReport:
    posterior = jeffrey_update(sigma, c, rho, relaxed=relaxed)
    needed = rho.support() if relaxed else c.codomain.elements
    rows = _dagger_rows(c, sigma, needed)
    return UpdateReport(
        rule="jeffrey",
        prior=sigma,
        evidence=StateEvidence(rho),
        posterior=posterior,
        intermediate={"inverted_rows": rows, "prediction": state_transform(c, sigma)},
    )


def atc_report(omega: State, event: Iterable[Element], strength) -> UpdateReport:
    members = frozenset(event)
    posterior = atc_update(omega, members, strength)
    return UpdateReport(
        rule="atc",
        prior=omega,
        evidence=EventStrength(omega.space, members, as_fraction(strength)),
        posterior=posterior,
        intermediate={"event_prior_mass": validity(omega, indicator(omega.space, members))},
    )


def nec_report(omega: State, event: Iterable[Element], factor) -> UpdateReport:
    members = frozenset(event)
    k = as_fraction(factor)
    posterior = nec_update(omega, members, k)
    eq_values = {
        x: (ONE if x in members else ONE / k) if k >= 1 else (k if x in members else ONE)
        for x in omega.space.elements
    }
    return UpdateReport(
        rule="nec",
        prior=omega,
        evidence=BayesFactor(omega.space, members, k),
        posterior=posterior,
        intermediate={"equivalent_predicate": Predicate(omega.space, eq_values)},
    )


def blend_report(s, jr: State, pr: State) -> UpdateReport:
    s = as_fraction(s)
    return UpdateReport(
        rule="blend",
        prior=pr,
        evidence=None,
        posterior=blend_update(s, jr, pr),
        intermediate={"jeffrey_part": jr, "pearl_part": pr, "novelty": s},
    )
