# One-sided versus two-sided state updates for the sender's preparation.
#
# The pipeline applies the preparation once and renormalizes by the trace.
# One might insist on the two-sided rule instead: sandwich the state between
# two copies of the preparation, then divide by the full trace. For the
# projective preparations both rules land on the same receiver state. For
# the automatic preparation the two-sided numerator comes out exactly twice
# the one-sided one (P acts once on each side and P^2 = 2P), and the factor
# disappears in the normalization, so the final states coincide there too.

import numpy as np

from ensemble_teleport import (
    BELL_INDICES,
    automatic_preparation,
    compare_conventions,
    preparation_from_bell,
    sample_mixed_uniform,
    sandwich_numerator,
    alice_prepare,
)


def main():
    rng = np.random.default_rng(31)
    inputs = [sample_mixed_uniform(rng) for _ in range(200)]

    print("-" * 72)
    print("worst entrywise gap between the two conventions, 200 random inputs")
    print("-" * 72)
    print(f"{'preparation':>12} {'max gap':>10} {'prenorm ratio':>14}")
    for i in BELL_INDICES:
        u = preparation_from_bell(i)
        gap = max(compare_conventions(u, c).max_abs_diff for c in inputs)
        ratio = compare_conventions(u, inputs[0]).prenorm_ratio
        print(f"{'bell ' + str(i):>12} {gap:>10.2e} {ratio:>14.6f}")
    u = automatic_preparation()
    gap = max(compare_conventions(u, c).max_abs_diff for c in inputs)
    ratio = compare_conventions(u, inputs[0]).prenorm_ratio
    print(f"{'automatic':>12} {gap:>10.2e} {ratio:>14.6f}")

    print()
    print("the factor two, explicitly, for one input")
    print("-" * 72)
    c = inputs[0]
    one_sided = alice_prepare(u, c)
    two_sided = sandwich_numerator(u, c)
    print(f"one-sided numerator trace : {np.trace(one_sided).real:.6f}")
    print(f"two-sided numerator trace : {np.trace(two_sided).real:.6f}")
    print(f"entrywise ratio residual  : {np.max(np.abs(two_sided - 2 * one_sided)):.2e}")
    result = compare_conventions(u, c)
    print(f"post-normalization gap    : {result.max_abs_diff:.2e}")

    print()
    print("and the quarter trace of the projective numerator:")
    u1 = preparation_from_bell(1)
    traces = [np.trace(sandwich_numerator(u1, c)).real for c in inputs[:50]]
    print(f"  min {min(traces):.12f}  max {max(traces):.12f}  (expected 0.25)")


if __name__ == "__main__":
    main()
