"""A hiring decision mixing both update styles.

The interviewer holds a joint prior over a candidate's competence and
experience.  Expected information (the letter confirms experience) is
factored in with Pearl's rule; an unforeseen shock (the letter is badly
written, dropping the competence belief to 1/8) is adjusted to with
Jeffrey's rule.  The order of operations matters, and the final
competence belief lands below the base rate.
"""

from fractions import Fraction as F

from softbayes import (
    Space,
    jeffrey_update,
    lift_function,
    make_state,
    marginal,
    pearl_update,
    point,
    product_space,
)


def main() -> None:
    comp = Space("comp", ("c", "~c"))
    exp = Space("exp", ("e", "~e"))
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
    proj_comp = lift_function(cand, comp, {x: x[0] for x in cand.elements})
    proj_exp = lift_function(cand, exp, {x: x[1] for x in cand.elements})

    print("joint prior:       ", prior)
    print("competence base rate:", marginal(prior, "first"))

    # if the letter simply confirmed experience, Ann would factor it in
    experienced = pearl_update(prior, proj_exp, point(exp, "e"))
    print("\nexperience only ->", marginal(experienced, "first"))

    # but the letter's poor English is a surprise: adjust competence to 1/8
    shock = make_state(comp, {"c": F(1, 8), "~c": F(7, 8)})
    adjusted = jeffrey_update(prior, proj_comp, shock)
    print("after the surprise:", adjusted)
    print("competence now:    ", marginal(adjusted, "first"))

    # the experience content of the letter is then factored into that
    final = pearl_update(adjusted, proj_exp, point(exp, "e"))
    print("\nfinal joint:       ", final)
    print("final competence:  ", marginal(final, "first"))


if __name__ == "__main__":
    main()
