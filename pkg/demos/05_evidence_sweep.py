"""Sweep the evidence strength r from 0 to 1 and compare the rules.

For each r, Jeffrey updates with the state r|t> + (1-r)|~t> while Pearl
conditions on the predicate {t: r, ~t: 1-r}.  The two columns coincide
exactly at r = 0 and r = 1 (hard evidence) and split in between: the
Jeffrey column is affine in r, the Pearl column is not.  The same CSV
comes from `softbayes sweep`.
"""

from fractions import Fraction as F

from softbayes import (
    Space,
    State,
    jeffrey_update,
    make_channel,
    make_predicate,
    make_state,
    pearl_update,
    render_decimal,
    render_fraction,
)


def sweep(prior_d: F, steps: int) -> list[tuple[F, F, F]]:
    disease = Space("disease", ("d", "~d"))
    test = Space("test", ("t", "~t"))
    prior = make_state(disease, {"d": prior_d, "~d": 1 - prior_d})
    sens = make_channel(
        disease,
        test,
        {
            "d": {"t": F(9, 10), "~t": F(1, 10)},
            "~d": {"t": F(1, 20), "~t": F(19, 20)},
        },
    )
    rows = []
    for i in range(steps + 1):
        r = F(i, steps)
        rho = State(test, {"t": r, "~t": 1 - r})
        jeffrey = jeffrey_update(prior, sens, rho, relaxed=True)
        pearl = pearl_update(
            prior, sens, make_predicate(test, {"t": r, "~t": 1 - r})
        )
        rows.append((r, jeffrey("d"), pearl("d")))
    return rows


def main() -> None:
    for prior_d in (F(1, 100), F(1, 10)):
        print(f"--- disease prior {render_fraction(prior_d)} ---")
        rows = sweep(prior_d, steps=10)
        print("r,jeffrey,pearl")
        for r, jeffrey, pearl in rows:
            print(
                f"{render_decimal(r, 1)},"
                f"{render_decimal(jeffrey, 4)},{render_decimal(pearl, 4)}"
            )
        jeffreys = [row[1] for row in rows]
        straight = all(
            jeffreys[i + 2] - 2 * jeffreys[i + 1] + jeffreys[i] == 0
            for i in range(len(jeffreys) - 2)
        )
        print("Jeffrey column affine in r:", straight)
        print("endpoints coincide:",
              rows[0][1] == rows[0][2] and rows[-1][1] == rows[-1][2])
        print()


if __name__ == "__main__":
    main()
