"""Exact discrete probability: spaces, states, predicates, channels.

A *state* is a probability distribution with exact rational weights over a
named finite space, written as a ket sum such as ``1/100|d> + 99/100|~d>``.
A *predicate* assigns each element a rational truth value in [0, 1] (soft
evidence); events are the {0, 1}-valued special case.  A *channel* maps
each element of a domain space to a state on a codomain space, i.e. it is
a conditional probability table / stochastic matrix.

Everything is `fractions.Fraction` end to end.  Floats are rejected at the
boundary: the point of the library is that results like 117/2000 are exact,
and no binary floating-point value may enter the pipeline.  All values are
immutable after construction, so they can be shared freely across threads.

Weight maps are total: every element of the space has an entry, and zero
weights are stored rather than dropped.  Iteration always follows the
space's element order, which makes rendering and CSV output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    DuplicateElement,
    MissingRow,
    NotAProductSpace,
    SpaceMismatch,
    UnknownElement,
    ValueOutOfRange,
    WeightSumNotOne,
    ZeroValidity,
)

# Elements are identifiers; product-space elements are pairs (nested for
# iterated products).
Element = Union[str, tuple]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: Union[Fraction, int, str]) -> Fraction:
    """Coerce to an exact rational.

    Accepts Fraction, int, and strings like ``"1/2"`` or ``"0.25"``
    (decimal strings convert exactly, so ``"0.1"`` becomes 1/10, not the
    nearest double).  Floats are rejected outright.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(
            f"exact rational required, got {type(value).__name__} {value!r}; "
            "pass a Fraction, int, or string literal"
        )
    return Fraction(value)


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    """A named finite sample space with a fixed element order."""

    name: str
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) == 0:
            raise ValueError(f"space {self.name!r} needs at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise DuplicateElement(f"space {self.name!r} has repeated elements")

    def __contains__(self, element: Element) -> bool:
        return element in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def require(self, element: Element) -> None:
        if element not in self.elements:
            raise UnknownElement(
                f"{render_element(element)!r} is not an element of space {self.name!r}"
            )

    def __repr__(self) -> str:
        return f"Space({self.name!r}, {{{', '.join(render_element(x) for x in self.elements)}}})"


@dataclass(frozen=True, repr=False)
class ProductSpace(Space):
    """Binary product of two spaces; elements are pairs in left-major order.

    n-ary products are built by nesting left-associatively.  The name is
    derived from the factors, so two products of equal factors are equal.
    """

    left: Space = field(default=None)  # type: ignore[assignment]
    right: Space = field(default=None)  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ProductSpace({self.left.name!r} * {self.right.name!r})"


def product_space(left: Space, right: Space) -> ProductSpace:
    """The product space with elements (l, r) ordered left-major."""
    elements = tuple((l, r) for l in left.elements for r in right.elements)
    return ProductSpace(
        name=f"{left.name}*{right.name}", elements=elements, left=left, right=right
    )


def _require_same_space(a: Space, b: Space, what: str) -> None:
    if a != b:
        raise SpaceMismatch(f"{what}: space {a.name!r} is not space {b.name!r}")


# ---------------------------------------------------------------------------
# states and predicates


def _total_map(
    space: Space, entries: Mapping[Element, Fraction]
) -> Mapping[Element, Fraction]:
    """Entries re-keyed in space order, zeros filled in, wrapped read-only."""
    return MappingProxyType({x: entries.get(x, ZERO) for x in space.elements})


@dataclass(frozen=True)
class State:
    """A distribution on a space: exact weights in [0, 1] summing to 1."""

    space: Space
    weights: Mapping[Element, Fraction]

    def __post_init__(self):
        for x, w in self.weights.items():
            self.space.require(x)
            if not isinstance(w, Fraction):
                raise TypeError(f"weight at {render_element(x)} is not a Fraction")
            if w < 0 or w > 1:
                raise ValueOutOfRange(
                    f"weight {w} at {render_element(x)} lies outside [0, 1]"
                )
        total = sum(self.weights.values(), ZERO)
        if total != 1:
            raise WeightSumNotOne(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "weights", _total_map(self.space, self.weights))

    def __call__(self, element: Element) -> Fraction:
        self.space.require(element)
        return self.weights[element]

    def items(self) -> Iterator[tuple[Element, Fraction]]:
        return iter(self.weights.items())

    def support(self) -> tuple[Element, ...]:
        return tuple(x for x, w in self.weights.items() if w > 0)

    @property
    def has_full_support(self) -> bool:
        return all(w > 0 for w in self.weights.values())

    def __str__(self) -> str:
        return render_state(self)

    def __repr__(self) -> str:
        return f"<State {self} on {self.space.name!r}>"


@dataclass(frozen=True)
class Predicate:
    """A fuzzy predicate: each element gets a truth value in [0, 1]."""

    space: Space
    values: Mapping[Element, Fraction]

    def __post_init__(self):
        for x, v in self.values.items():
            self.space.require(x)
            if not isinstance(v, Fraction):
                raise TypeError(f"value at {render_element(x)} is not a Fraction")
            if v < 0 or v > 1:
                raise ValueOutOfRange(
                    f"value {v} at {render_element(x)} lies outside [0, 1]"
                )
        object.__setattr__(self, "values", _total_map(self.space, self.values))

    def __call__(self, element: Element) -> Fraction:
        self.space.require(element)
        return self.values[element]

    def items(self) -> Iterator[tuple[Element, Fraction]]:
        return iter(self.values.items())

    def __str__(self) -> str:
        return render_predicate(self)

    def __repr__(self) -> str:
        return f"<Predicate {self} on {self.space.name!r}>"


def _collect_entries(
    space: Space, entries, what: str
) -> dict[Element, Fraction]:
    """Validate a weight/value listing: known elements, no duplicates."""
    if isinstance(entries, Mapping):
        entries = entries.items()
    out: dict[Element, Fraction] = {}
    for element, raw in entries:
        space.require(element)
        if element in out:
            raise DuplicateElement(
                f"{what}: element {render_element(element)} listed twice"
            )
        out[element] = as_fraction(raw)
    return out


def make_state(space: Space, weights) -> State:
    """Build a state from (element, weight) pairs or a mapping.

    Unlisted elements get weight 0.  Raises UnknownElement,
    DuplicateElement, ValueOutOfRange, or WeightSumNotOne.
    """
    return State(space, _collect_entries(space, weights, "state"))


def make_predicate(space: Space, values) -> Predicate:
    """Build a predicate from (element, value) pairs or a mapping; unlisted
    elements get value 0."""
    return Predicate(space, _collect_entries(space, values, "predicate"))


def point_mass(space: Space, element: Element) -> State:
    """The Dirac state 1|element>."""
    space.require(element)
    return State(space, {element: ONE})


def uniform_state(space: Space) -> State:
    n = len(space)
    return State(space, {x: Fraction(1, n) for x in space.elements})


# ---------------------------------------------------------------------------
# predicate algebra


def truth(space: Space) -> Predicate:
    """The constantly-1 predicate."""
    return Predicate(space, {x: ONE for x in space.elements})


def point(space: Space, element: Element) -> Predicate:
    """The point predicate 1_y: 1 at the given element, 0 elsewhere."""
    space.require(element)
    return Predicate(space, {element: ONE})


def indicator(space: Space, subset: Iterable[Element]) -> Predicate:
    """The sharp indicator 1_E of an event (a subset of the space)."""
    values: dict[Element, Fraction] = {}
    for x in subset:
        space.require(x)
        values[x] = ONE
    return Predicate(space, values)


def conjunction(p: Predicate, q: Predicate) -> Predicate:
    """Pointwise product p & q."""
    _require_same_space(p.space, q.space, "conjunction")
    return Predicate(p.space, {x: p.values[x] * q.values[x] for x in p.space})


def scale(s, p: Predicate) -> Predicate:
    """The scalar multiple s . p for s in [0, 1]."""
    s = as_fraction(s)
    if s < 0 or s > 1:
        raise ValueOutOfRange(f"scalar {s} lies outside [0, 1]")
    return Predicate(p.space, {x: s * v for x, v in p.values.items()})


# ---------------------------------------------------------------------------
# channels


@dataclass(frozen=True)
class Channel:
    """A stochastic map: one state on the codomain per domain element."""

    domain: Space
    codomain: Space
    rows: Mapping[Element, State]

    def __post_init__(self):
        for x in self.rows:
            self.domain.require(x)
        for x in self.domain.elements:
            row = self.rows.get(x)
            if row is None:
                raise MissingRow(
                    f"channel has no row for {render_element(x)} "
                    f"in domain {self.domain.name!r}"
                )
            _require_same_space(row.space, self.codomain, "channel row")
        object.__setattr__(
            self,
            "rows",
            MappingProxyType({x: self.rows[x] for x in self.domain.elements}),
        )

    def __call__(self, element: Element) -> State:
        self.domain.require(element)
        return self.rows[element]

    @property
    def is_deterministic(self) -> bool:
        """True when every row is a point mass (the channel lifts a function)."""
        return all(
            any(w == 1 for w in row.weights.values()) for row in self.rows.values()
        )

    def __str__(self) -> str:
        return render_channel(self)

    def __repr__(self) -> str:
        return f"<Channel {self.domain.name!r} -> {self.codomain.name!r}>"


def make_channel(domain: Space, codomain: Space, rows) -> Channel:
    """Build a channel from a mapping element -> weight listing."""
    if isinstance(rows, Mapping):
        rows = rows.items()
    built: dict[Element, State] = {}
    for element, weights in rows:
        domain.require(element)
        if element in built:
            raise DuplicateElement(
                f"channel: row for {render_element(element)} listed twice"
            )
        built[element] = make_state(codomain, weights)
    return Channel(domain, codomain, built)


def identity_channel(space: Space) -> Channel:
    """The Dirac channel x -> 1|x>."""
    return Channel(space, space, {x: point_mass(space, x) for x in space.elements})


def lift_function(domain: Space, codomain: Space, f: Mapping[Element, Element]) -> Channel:
    """Turn a total function between spaces into a deterministic channel."""
    rows: dict[Element, State] = {}
    for x in domain.elements:
        if x not in f:
            raise UnknownElement(
                f"function is not total: no value for {render_element(x)}"
            )
        codomain.require(f[x])
        rows[x] = point_mass(codomain, f[x])
    return Channel(domain, codomain, rows)


# ---------------------------------------------------------------------------
# the transformation calculus


def state_transform(c: Channel, sigma: State) -> State:
    """Push a state forward through a channel (prediction): c >> sigma."""
    _require_same_space(sigma.space, c.domain, "state transformation")
    weights = {
        y: sum((sigma.weights[x] * c.rows[x].weights[y] for x in c.domain), ZERO)
        for y in c.codomain.elements
    }
    return State(c.codomain, weights)


def predicate_transform(c: Channel, q: Predicate) -> Predicate:
    """Pull a predicate backward through a channel: c << q."""
    _require_same_space(q.space, c.codomain, "predicate transformation")
    values = {
        x: sum((c.rows[x].weights[y] * q.values[y] for y in c.codomain), ZERO)
        for x in c.domain.elements
    }
    return Predicate(c.domain, values)


def validity(sigma: State, p: Predicate) -> Fraction:
    """The expected value of p in sigma: sigma |= p."""
    _require_same_space(sigma.space, p.space, "validity")
    return sum((sigma.weights[x] * p.values[x] for x in sigma.space), ZERO)


def condition(sigma: State, p: Predicate) -> State:
    """The updated state sigma|_p; undefined when sigma |= p is 0."""
    v = validity(sigma, p)
    if v == 0:
        raise ZeroValidity("cannot condition: predicate has validity 0")
    return State(
        sigma.space, {x: sigma.weights[x] * p.values[x] / v for x in sigma.space}
    )


def compose(d: Channel, c: Channel) -> Channel:
    """Sequential composition (d after c): (d . c)(x) = d >> c(x)."""
    _require_same_space(c.codomain, d.domain, "channel composition")
    return Channel(
        c.domain, d.codomain, {x: state_transform(d, c.rows[x]) for x in c.domain}
    )


def product_state(sigma: State, omega: State) -> State:
    """The independent product on the product space: weight sigma(x)*omega(y)."""
    space = product_space(sigma.space, omega.space)
    weights = {
        (x, y): sigma.weights[x] * omega.weights[y]
        for x in sigma.space.elements
        for y in omega.space.elements
    }
    return State(space, weights)


def marginal(tau: State, which: str) -> State:
    """First or second marginal of a state on a binary product space."""
    if not isinstance(tau.space, ProductSpace):
        raise NotAProductSpace(
            f"marginal needs a product-space state, got space {tau.space.name!r}"
        )
    if which not in ("first", "second"):
        raise ValueError(f"which must be 'first' or 'second', got {which!r}")
    pick = 0 if which == "first" else 1
    target = tau.space.left if which == "first" else tau.space.right
    weights = {z: ZERO for z in target.elements}
    for (pair, w) in tau.weights.items():
        weights[pair[pick]] += w
    return State(target, weights)


# ---------------------------------------------------------------------------
# rendering (the canonical golden-test representation)


def render_fraction(q: Fraction) -> str:
    """``1/2`` style; whole numbers render bare (``0``, ``1``)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_decimal(q: Fraction, digits: int) -> str:
    """Exact round-half-even rendering of a rational to fixed decimals."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scaled = round(q * Fraction(10) ** digits)  # Fraction round: ties to even
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def render_element(x: Element) -> str:
    """Flatten (nested) pair elements with commas: ('b','e') -> ``b,e``."""
    if isinstance(x, tuple):
        return ",".join(render_element(part) for part in x)
    return str(x)


def render_state(
    sigma: State, show_zeros: bool = False, decimal: int | None = None
) -> str:
    """Ket-sum text like ``1/100|d> + 99/100|~d>`` in space element order."""
    fmt = (lambda w: render_decimal(w, decimal)) if decimal else render_fraction
    terms = [
        f"{fmt(w)}|{render_element(x)}>"
        for x, w in sigma.weights.items()
        if show_zeros or w != 0
    ]
    return " + ".join(terms)


def render_predicate(p: Predicate, decimal: int | None = None) -> str:
    fmt = (lambda v: render_decimal(v, decimal)) if decimal else render_fraction
    inner = ", ".join(
        f"{render_element(x)}: {fmt(v)}" for x, v in p.values.items()
    )
    return "{" + inner + "}"


def render_channel(c: Channel, decimal: int | None = None) -> str:
    return "\n".join(
        f"{render_element(x)} -> {render_state(row, decimal=decimal)}"
        for x, row in c.rows.items()
    )
