"""The burglar/earthquake alarm with a hard-of-hearing witness.

Two independent priors combine into a joint product state; the alarm
table is a channel out of the product space.  Being 70% sure the alarm
rang yields wildly different burglary probabilities under the two rules
(roughly 69% versus 2%).  The event-based softness specifications are
shown on the predicted alarm state: prescribing a posterior validity
("all things considered") and weighing by a Bayes factor ("nothing else
considered").
"""

from fractions import Fraction as F

from softbayes import (
    Space,
    atc_update,
    identity_channel,
    indicator,
    jeffrey_update,
    make_channel,
    make_predicate,
    make_state,
    marginal,
    nec_update,
    pearl_update,
    product_state,
    render_decimal,
    state_transform,
    validity,
)


def main() -> None:
    burglar = Space("burglar", ("b", "~b"))
    quake = Space("quake", ("e", "~e"))
    alarm = Space("alarm", ("a", "~a"))

    prior_b = make_state(burglar, {"b": "0.01", "~b": "0.99"})
    prior_e = make_state(quake, {"e": "0.000001", "~e": "0.999999"})
    joint = product_state(prior_b, prior_e)
    print("joint prior:", joint)

    ring = make_channel(
        joint.space,
        alarm,
        {
            ("b", "e"): {"a": "0.9999", "~a": "0.0001"},
            ("b", "~e"): {"a": "0.99", "~a": "0.01"},
            ("~b", "e"): {"a": "0.99", "~a": "0.01"},
            ("~b", "~e"): {"a": "0.0001", "~a": "0.9999"},
        },
    )

    heard = make_state(alarm, {"a": F(7, 10), "~a": F(3, 10)})
    jeffrey_b = marginal(jeffrey_update(joint, ring, heard), "first")
    print("\nJeffrey burglary marginal:", render_decimal(jeffrey_b("b"), 4))

    heard_ev = make_predicate(alarm, {"a": F(7, 10), "~a": F(3, 10)})
    pearl_b = marginal(pearl_update(joint, ring, heard_ev), "first")
    print("Pearl burglary marginal:  ", render_decimal(pearl_b("b"), 4))

    predicted = state_transform(ring, joint)
    print("\npredicted alarm state:", render_decimal(predicted("a"), 6), "at a")

    atc = atc_update(predicted, {"a"}, F(7, 10))
    print("ATC to validity 7/10:", atc,
          "| new validity:", validity(atc, indicator(alarm, {"a"})))

    nec = nec_update(predicted, {"a"}, F(4))
    same = pearl_update(
        predicted,
        identity_channel(alarm),
        make_predicate(alarm, {"a": F(8, 10), "~a": F(2, 10)}),
    )
    print("NEC with Bayes factor 4 equals Pearl with an 80/20 predicate:",
          nec == same)


if __name__ == "__main__":
    main()
