"""Shared fixtures: the four networks used throughout the literature tests."""

from fractions import Fraction as F

import pytest

from softbayes import (
    Space,
    lift_function,
    make_channel,
    make_state,
    product_state,
)


@pytest.fixture
def disease():
    """Disease-test network: 1% prior, 90%/5% test, 80%/20% certainty node."""
    disease_sp = Space("disease", ("d", "~d"))
    test_sp = Space("test", ("t", "~t"))
    certainty_sp = Space("certainty", ("c", "~c"))
    prior = make_state(disease_sp, {"d": F(1, 100), "~d": F(99, 100)})
    sens = make_channel(
        disease_sp,
        test_sp,
        {
            "d": {"t": F(9, 10), "~t": F(1, 10)},
            "~d": {"t": F(1, 20), "~t": F(19, 20)},
        },
    )
    ev = make_channel(
        test_sp,
        certainty_sp,
        {
            "t": {"c": F(8, 10), "~c": F(2, 10)},
            "~t": {"c": F(2, 10), "~c": F(8, 10)},
        },
    )
    return disease_sp, test_sp, certainty_sp, prior, sens, ev


@pytest.fixture
def halpern():
    """Color-glimpse partition network."""
    color = Space("color", ("r", "b", "g", "y"))
    glimpse = Space("glimpse", ("gb", "ry"))
    prior = make_state(
        color, {"r": F(1, 5), "b": F(1, 5), "g": F(1, 5), "y": F(2, 5)}
    )
    coarse = lift_function(
        color, glimpse, {"r": "ry", "b": "gb", "g": "gb", "y": "ry"}
    )
    return color, glimpse, prior, coarse


@pytest.fixture
def barber():
    """Burglar/earthquake priors, their joint, and the alarm table."""
    burglar = Space("burglar", ("b", "~b"))
    quake = Space("quake", ("e", "~e"))
    alarm = Space("alarm", ("a", "~a"))
    prior_b = make_state(burglar, {"b": F(1, 100), "~b": F(99, 100)})
    prior_e = make_state(
        quake, {"e": F(1, 10**6), "~e": F(999999, 10**6)}
    )
    joint = product_state(prior_b, prior_e)
    ring = make_channel(
        joint.space,
        alarm,
        {
            ("b", "e"): {"a": F(9999, 10**4), "~a": F(1, 10**4)},
            ("b", "~e"): {"a": F(99, 100), "~a": F(1, 100)},
            ("~b", "e"): {"a": F(99, 100), "~a": F(1, 100)},
            ("~b", "~e"): {"a": F(1, 10**4), "~a": F(9999, 10**4)},
        },
    )
    return joint, ring, alarm


@pytest.fixture
def dietrich():
    """Competence/experience joint prior with the two projections."""
    comp = Space("comp", ("c", "~c"))
    exp = Space("exp", ("e", "~e"))
    from softbayes import product_space

    cand = product_space(comp, exp)
    prior = make_state(
        cand,
        {
            ("c", "e"): F(4, 10),
            ("c", "~e"): F(1, 10),
            ("~c", "e"): F(1, 10),
            ("~c", "~e"): F(4, 10),
        },
    )
    proj_comp = lift_function(
        cand, comp, {x: x[0] for x in cand.elements}
    )
    proj_exp = lift_function(
        cand, exp, {x: x[1] for x in cand.elements}
    )
    return cand, comp, exp, prior, proj_comp, proj_exp
