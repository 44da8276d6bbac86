"""Named multi-fans used for cross-checks and the acceptance suite."""

from __future__ import annotations

from .cohomology import search_c1_zero_fan
from .fan import (
    MultiFan,
    bundle_fan,
    example_fan_1,
    example_fan_2,
    hirzebruch_fan,
    product_fan,
    projective_fan,
    weighted_projective_2211,
)


def corpus() -> dict[str, MultiFan]:
    """Complete fans covering nonsingular, orbifold and multi-fan cases."""
    fans = {f"P{n}": projective_fan(n) for n in (1, 2, 3, 4)}
    fans["P1xP1"] = product_fan(projective_fan(1), projective_fan(1))
    for a in (1, 2, 3):
        fans[f"F{a}"] = hirzebruch_fan(a)
    for n in (2, 3, 4):
        fans[f"P{n}(2..2,1,1)"] = weighted_projective_2211(n)
    for b in (1, 2, 3, 4):
        fans[f"example1(b={b})"] = example_fan_1(b)
        fans[f"example2(b={b})"] = example_fan_2(b)
    fans["bundle(3;1,0)"] = bundle_fan(3, (1, 0))
    fans["c1zero"] = search_c1_zero_fan()
    return fans


def small_corpus() -> dict[str, MultiFan]:
    """Rank at most three; used where q-series are expanded."""
    return {k: f for k, f in corpus().items() if f.rank <= 3}
