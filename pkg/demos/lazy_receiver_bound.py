# What happens when the receiver refuses to apply the correction?
#
# For the first Bell projection the fidelity collapses to the closed form
# 2 c11 c22 - 2 c12 c21. Scanning the admissible coefficient set shows the
# ceiling sits at 1/2 (for the maximally mixed input) and at exactly 0 on the
# pure-state boundary: skipping the correction costs everything that made
# the input worth teleporting.
#
# The script also exhibits the divergence between the trace-form fidelity and
# the bilinear vector form once c12 picks up an imaginary part.

import numpy as np

from ensemble_teleport import (
    CoefficientVector,
    alice_prepare,
    fidelity_report,
    fidelity_trace,
    lazy_fidelity,
    maximize_lazy_fidelity,
    preparation_from_bell,
    renormalize,
    transformation_matrix,
)


def main():
    print("-" * 72)
    print("lazy-receiver fidelity along the c12 = 0 slice")
    print("-" * 72)
    u = preparation_from_bell(1)
    print(f"{'c11':>6} {'closed form':>12} {'trace form':>12}")
    for c11 in np.linspace(0.0, 1.0, 11):
        c = CoefficientVector.from_components(c11)
        bob = renormalize(alice_prepare(u, c))
        print(f"{c11:>6.2f} {lazy_fidelity(c):>12.6f} {fidelity_trace(c, bob):>12.6f}")

    result = maximize_lazy_fidelity(200)
    print(
        f"\nconstrained maximum: {result.value:.9f} at "
        f"c11 = {result.argmax.c11:.6f}, |c12| = {abs(result.argmax.c12):.6f}"
    )

    print("\npure inputs (|c12|^2 = c11 c22) sit identically at zero:")
    for c11 in (0.1, 0.3, 0.5, 0.7):
        c = CoefficientVector.from_components(c11, np.sqrt(c11 * (1 - c11)))
        print(f"  c11 = {c11:.1f}: closed form {lazy_fidelity(c):+.2e}")

    print()
    print("trace form vs bilinear vector form for a complex off-diagonal")
    print("-" * 72)
    t = transformation_matrix(u)
    for mag_im in (0.0, 0.2, 0.4):
        c = CoefficientVector.from_components(0.5, 1j * mag_im)
        bob = renormalize(alice_prepare(u, c))
        report = fidelity_report(c, t, bob)
        marker = "agree" if report.agree else "DIVERGE"
        print(
            f"c12 = {mag_im:.1f}i: trace {report.trace_form:.4f} "
            f"vector {report.vector_form:.4f} -> {marker}"
        )
    print("\nthe two readings coincide exactly when the coefficient vector is real.")


if __name__ == "__main__":
    main()
