"""Bell-type basis vectors, their projectors, Pauli matrices, and the PPT entanglement test."""

from __future__ import annotations

import numpy as np

from .linalg import (
    LAYOUT_AB,
    SubsystemLayout,
    as_matrix,
    hermitian_spectrum,
    partial_transpose,
)

BELL_INDICES = (1, 2, 3, 4)

# index -> (parity, sign): 1, 2 are the even pair, 3, 4 the odd pair
_BELL_LABELS = {1: ("even", "+"), 2: ("even", "-"), 3: ("odd", "+"), 4: ("odd", "-")}

_ALLOWED_PAIRS = (("A", "B"), ("C", "A"))


def matrix_unit(row: int, col: int) -> np.ndarray:
    """|row><col| on one two-level factor, indices in {1, 2}."""
    if row not in (1, 2) or col not in (1, 2):
        raise ValueError(f"matrix unit indices must be 1 or 2, got ({row}, {col})")
    e = np.zeros((2, 2), dtype=complex)
    e[row - 1, col - 1] = 1.0
    return e


def _bell_pattern(parity: str, sign: str) -> np.ndarray:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    s = 1.0 if sign == "+" else -1.0
    v = np.zeros(4, dtype=complex)
    if parity == "even":
        v[0], v[3] = 1.0, s
    else:
        v[1], v[2] = 1.0, s
    return v


def bell_vector(parity: str, sign: str) -> np.ndarray:
    """Unit vector of the Bell-type basis on a pair of two-level factors.

    even: (|11> ± |22>) / sqrt(2), odd: (|12> ± |21>) / sqrt(2), in the
    product basis |11>, |12>, |21>, |22> with the second index fastest.
    """
    return _bell_pattern(parity, sign) / np.sqrt(2.0)


def bell_projector(index: int, subsystems=("A", "B")) -> np.ndarray:
    """4x4 projector onto the indexed Bell-type vector.

    ``subsystems`` records which factor pair the operator acts on: the
    shared pair ("A", "B") or the sender-side pair ("C", "A"). The matrix
    entries are identical for either placement; only the label differs.
    """
    if index not in BELL_INDICES:
        raise ValueError(f"Bell index must be in {BELL_INDICES}, got {index}")
    pair = tuple(subsystems)
    if pair not in _ALLOWED_PAIRS:
        raise ValueError(f"unsupported subsystem pair {pair}; expected one of {_ALLOWED_PAIRS}")
    # Outer product of the unnormalized (0, ±1) pattern halved, so the
    # entries are exactly ±1/2 rather than one ulp off through 1/sqrt(2).
    w = _bell_pattern(*_BELL_LABELS[index])
    return np.outer(w, w.conj()) / 2.0


def pauli(k: int) -> np.ndarray:
    """Pauli matrix: k=1 is the bit flip, k=3 the phase flip."""
    if k == 1:
        return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    if k == 3:
        return np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    raise ValueError(f"only pauli(1) and pauli(3) are defined here, got {k}")


def _require_statistical_operator(op: np.ndarray) -> None:
    asymmetry = float(np.max(np.abs(op - op.conj().T)))
    if asymmetry > 1e-10:
        raise ValueError(
            f"not a statistical operator: not Hermitian (asymmetry {asymmetry:.3e})"
        )
    tr = complex(np.trace(op))
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"not a statistical operator: trace {tr.real:.12g} != 1")
    smallest = float(hermitian_spectrum(op)[-1])
    if smallest < -1e-10:
        raise ValueError(
            f"not a statistical operator: negative eigenvalue {smallest:.3e}"
        )


def ppt_entangled(op, layout: SubsystemLayout = LAYOUT_AB, negativity_tol: float = 1e-10) -> bool:
    """True iff a two-qubit statistical operator fails the partial-transpose test.

    For a pair of two-level factors the test is conclusive: the state is
    entangled exactly when the partial transpose has a negative eigenvalue.
    The input must be a valid statistical operator (Hermitian, unit trace,
    positive semidefinite); violations raise with the offending invariant.
    """
    arr = as_matrix(op)
    if len(layout.factors) != 2 or arr.shape[0] != 4:
        raise ValueError("PPT test expects a 4x4 operator on a two-factor layout")
    _require_statistical_operator(arr)
    transposed = partial_transpose(arr, layout, layout.factors[1])
    return bool(hermitian_spectrum(transposed)[-1] < -negativity_tol)
