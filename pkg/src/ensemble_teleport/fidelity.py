"""Teleportation fidelity: trace and vector formulations, the lazy-receiver bound, averages.

Two formulations coexist on purpose. The trace form Tr(rho_in * rho_out) is
the authoritative overlap; the vector form evaluates the same quantity
through bilinear (unconjugated) products of coefficient 4-vectors and agrees
with the trace form only for real coefficient vectors. FidelityReport
records both and flags divergence instead of hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .linalg import as_matrix
from .protocol import (
    ANNIHILATION_TOL,
    CoefficientVector,
    TransformationMatrix,
    alice_prepare,
    bob_correct,
    renormalize,
    resolve_preparation,
)

_IMAG_TOL = 1e-12
_AGREE_TOL = 1e-9


def fidelity_trace(c: CoefficientVector, bob) -> float:
    """Overlap Tr(rho_in * rho_bob) with the input transported to the receiver basis.

    ``bob`` must have unit trace. A non-negligible imaginary part in the
    overlap signals a non-Hermitian pipeline bug and raises.
    """
    arr = as_matrix(bob)
    if arr.shape != (2, 2):
        raise ValueError(f"fidelity expects a 2x2 receiver state, got shape {arr.shape}")
    tr = complex(np.trace(arr))
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"receiver state must have unit trace, got {tr!r}")
    overlap = complex(np.trace(c.matrix() @ arr))
    if abs(overlap.imag) > _IMAG_TOL:
        raise ValueError(
            f"fidelity has non-negligible imaginary part {overlap.imag:.3e}; "
            "the pipeline produced a non-Hermitian state"
        )
    return float(overlap.real)


def fidelity_vector(c: CoefficientVector, t) -> float:
    """Vector-form fidelity c.c + c.(T/||Tc|| - 1).c with bilinear products.

    ||.|| is the trace reading of a coefficient 4-vector: the sum of its
    first and fourth components. Raises when the transformed vector has no
    positive trace component (the transformation annihilates the input).
    """
    tm = t.matrix if isinstance(t, TransformationMatrix) else np.asarray(t, dtype=complex)
    if tm.shape != (4, 4):
        raise ValueError(f"expected a 4x4 transformation, got shape {tm.shape}")
    cv = c.as_vector()
    tc = tm @ cv
    norm = complex(tc[0] + tc[3])
    if abs(norm.imag) > _IMAG_TOL or norm.real <= ANNIHILATION_TOL:
        raise ValueError(
            f"transformation annihilates the input: trace component {norm!r}"
        )
    contamination = (tm / norm.real) @ cv - cv
    value = complex(cv @ cv + cv @ contamination)
    if abs(value.imag) > _AGREE_TOL:
        raise ValueError(
            f"vector-form fidelity has imaginary part {value.imag:.3e}"
        )
    return float(value.real)


def lazy_fidelity(c: CoefficientVector) -> float:
    """Closed-form fidelity when the receiver skips the correction.

    This is the no-correction outcome of the antisymmetric-pair projection
    (Bell index 1): 2*c11*c22 - 2*c12*c21.
    """
    return float(2.0 * c.c11 * c.c22 - 2.0 * (c.c12 * c.c21).real)


@dataclass(frozen=True)
class LazyFidelityMaximum:
    """Result of the constrained maximization of the lazy fidelity."""

    argmax: CoefficientVector
    value: float


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10) -> float:
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def maximize_lazy_fidelity(grid_resolution: int) -> LazyFidelityMaximum:
    """Maximize the lazy fidelity over the admissible coefficient set.

    Scans a (c11, |c12|) grid respecting c11 + c22 = 1, nonnegativity and
    |c12|^2 <= c11*c22, then refines c11 by golden-section search. The
    objective is phase-independent, so the grid covers magnitudes only.
    """
    resolution = int(grid_resolution)
    if resolution < 10:
        raise ValueError(f"grid resolution must be at least 10, got {grid_resolution}")

    best_value = -np.inf
    best_c11 = 0.0
    best_mag = 0.0
    for c11 in np.linspace(0.0, 1.0, resolution):
        c22 = 1.0 - c11
        mag_max = np.sqrt(max(c11 * c22, 0.0))
        for mag in np.linspace(0.0, mag_max, resolution):
            value = 2.0 * c11 * c22 - 2.0 * mag * mag
            if value > best_value:
                best_value = value
                best_c11 = float(c11)
                best_mag = float(mag)

    spacing = 1.0 / (resolution - 1)
    lo = max(0.0, best_c11 - spacing)
    hi = min(1.0, best_c11 + spacing)

    def objective(c11: float) -> float:
        return 2.0 * c11 * (1.0 - c11) - 2.0 * best_mag * best_mag

    refined_c11 = _golden_section_max(objective, lo, hi)
    argmax = CoefficientVector.from_components(refined_c11, best_mag)
    return LazyFidelityMaximum(argmax=argmax, value=lazy_fidelity(argmax))


def sample_pure_uniform(rng: np.random.Generator) -> CoefficientVector:
    """One pure input drawn uniformly from the Bloch sphere (Haar measure)."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    r = np.sqrt(max(1.0 - z * z, 0.0))
    return CoefficientVector.from_bloch(r * np.cos(phi), r * np.sin(phi), z)


def sample_mixed_uniform(rng: np.random.Generator) -> CoefficientVector:
    """One input drawn uniformly from the interior-and-boundary Bloch ball."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    radius = rng.uniform(0.0, 1.0) ** (1.0 / 3.0)
    r = np.sqrt(max(1.0 - z * z, 0.0))
    return CoefficientVector.from_bloch(
        radius * r * np.cos(phi), radius * r * np.sin(phi), radius * z
    )


SAMPLERS: dict[str, Callable[[np.random.Generator], CoefficientVector]] = {
    "pure_uniform": sample_pure_uniform,
    "mixed_uniform": sample_mixed_uniform,
}


class AverageFidelity(NamedTuple):
    mean: float
    stderr: float


def average_fidelity(
    prep,
    bob_acts: bool,
    sampler: str = "pure_uniform",
    n: int = 1000,
    seed: int = 0,
) -> AverageFidelity:
    """Monte-Carlo mean of the trace-form fidelity over sampled inputs.

    Deterministic for a fixed (seed, n). ``prep`` is a Bell index or a
    PreparationTensor; with ``bob_acts`` the receiver correction for the
    identified preparation is applied before measuring the overlap.
    """
    if n < 100:
        raise ValueError(f"need at least 100 samples, got {n}")
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; expected one of {sorted(SAMPLERS)}")
    resolved = resolve_preparation(prep)
    if bob_acts and resolved.bell_index is None and not resolved.automatic:
        raise ValueError("no correction rule for this preparation; run with bob_acts=False")
    draw = SAMPLERS[sampler]
    rng = np.random.default_rng(seed)

    values = np.empty(n, dtype=float)
    for i in range(n):
        c = draw(rng)
        state = renormalize(alice_prepare(resolved.tensor, c))
        if bob_acts and resolved.bell_index is not None:
            state = bob_correct(resolved.bell_index, state)
        values[i] = fidelity_trace(c, state)
    stderr = float(values.std(ddof=1) / np.sqrt(n))
    return AverageFidelity(mean=float(values.mean()), stderr=stderr)


@dataclass(frozen=True)
class FidelityReport:
    """Both fidelity formulations side by side."""

    trace_form: float
    vector_form: float
    agree: bool
    note: str


def fidelity_report(c: CoefficientVector, transformation, bob) -> FidelityReport:
    """Evaluate both formulations against one receiver state and transformation."""
    trace_form = fidelity_trace(c, bob)
    vector_form = fidelity_vector(c, transformation)
    diff = abs(trace_form - vector_form)
    agree = diff < _AGREE_TOL
    note = (
        ""
        if agree
        else (
            f"forms differ by {diff:.3e}: the bilinear vector algebra matches the "
            "trace overlap only for real coefficient vectors"
        )
    )
    return FidelityReport(trace_form=trace_form, vector_form=vector_form, agree=agree, note=note)
