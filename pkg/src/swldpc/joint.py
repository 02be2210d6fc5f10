"""Two-stage decoding: belief propagation wrapped in a correlation-tracking loop.

The decoder does not know the realized flip probability between the source
and the side information. It starts from the design value, decodes, measures
the disagreement between the tentative reconstruction and the side
information, and repeats with the refreshed log-odds until the estimate
moves by less than 1e-4 or the global-iteration cap is reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bp import DEFAULT_Q, DEFAULT_S_MAX, bp_decode, init_from_side_info
from .codes import SparseParityMatrix
from .encoding import as_bit_array

__all__ = [
    "ALPHA_TOLERANCE",
    "GlobalIterationRecord",
    "CorrelationState",
    "JointDecodeResult",
    "initial_alpha",
    "estimate_alpha",
    "joint_decode",
    "non_iterative_decode",
]

ALPHA_TOLERANCE = 1e-4


@dataclass
class GlobalIterationRecord:
    """One global iteration: its estimate and whether decoding converged."""

    index: int
    alpha: float
    p_hat: float
    syndrome_ok: bool


@dataclass
class CorrelationState:
    """Current correlation estimate: log-odds alpha = ln(p_hat / (1 - p_hat))."""

    alpha: float
    p_hat: float
    trace: list = field(default_factory=list)


@dataclass
class JointDecodeResult:
    """Reconstruction of the k source bits plus convergence bookkeeping."""

    x_hat: np.ndarray
    success: bool
    global_iters_used: int
    local_iters_total: int
    final_state: CorrelationState


def initial_alpha(design_p: float) -> float:
    """Log-odds of the design flip probability; negative for design_p < 0.5."""
    if not 0.0 < design_p < 0.5:
        raise ValueError(f"design_p must lie in (0, 0.5), got {design_p}")
    return math.log(design_p / (1.0 - design_p))


def estimate_alpha(x_hat, y) -> CorrelationState:
    """Empirical correlation between a tentative reconstruction and y.

    The disagreement count is clamped to [1, k-1] so the log-odds stay
    finite. alpha is computed as log(w) - log(k - w), which makes the
    estimate exactly antisymmetric in w <-> k - w.
    """
    x_hat = np.asarray(x_hat)
    y = as_bit_array(y, x_hat.size, "side information")
    x_hat = as_bit_array(x_hat, y.size, "reconstruction")
    k = int(y.size)
    if k < 2:
        raise ValueError("need at least two bits to estimate a flip rate")
    w = int(np.count_nonzero(x_hat ^ y))
    w = min(max(w, 1), k - 1)
    alpha = math.log(w) - math.log(k - w)
    return CorrelationState(alpha=alpha, p_hat=w / k)


def joint_decode(
    h: SparseParityMatrix,
    z,
    y,
    design_p: float,
    max_global: int = 5,
    max_local: int = 50,
    kernel: str = "table",
    q: int = DEFAULT_Q,
    s_max: int = DEFAULT_S_MAX,
) -> JointDecodeResult:
    """Decode the source bits from parity z and side information y.

    Each global iteration runs a full belief-propagation attempt seeded with
    the current correlation log-odds, then re-estimates the log-odds from the
    result. The loop leaves early only when the estimate moves by less than
    ALPHA_TOLERANCE; a converged decode therefore still spends one more
    global iteration confirming its own estimate. success requires the final
    hard decisions to satisfy every check and to reproduce the received
    parity exactly.
    """
    z = as_bit_array(z, h.m, "parity block")
    y = as_bit_array(y, h.k, "side information")
    alpha = initial_alpha(design_p)

    trace: list[GlobalIterationRecord] = []
    local_total = 0
    outcome = None
    est = None
    for i in range(1, max_global + 1):
        init = init_from_side_info(y, z, alpha, q=q, s_max=s_max)
        outcome = bp_decode(h, init, max_local_iters=max_local, kernel=kernel)
        local_total += outcome.iterations_used
        est = estimate_alpha(outcome.hard_bits[: h.k], y)
        trace.append(
            GlobalIterationRecord(
                index=i, alpha=est.alpha, p_hat=est.p_hat, syndrome_ok=outcome.syndrome_ok
            )
        )
        moved = abs(est.alpha - alpha)
        alpha = est.alpha
        if moved < ALPHA_TOLERANCE:
            break

    success = bool(
        outcome.syndrome_ok and np.array_equal(outcome.hard_bits[h.k :], z)
    )
    return JointDecodeResult(
        x_hat=outcome.hard_bits[: h.k].copy(),
        success=success,
        global_iters_used=len(trace),
        local_iters_total=local_total,
        final_state=CorrelationState(alpha=est.alpha, p_hat=est.p_hat, trace=trace),
    )


def non_iterative_decode(
    h: SparseParityMatrix,
    z,
    y,
    design_p: float,
    max_local: int = 50,
    kernel: str = "table",
    q: int = DEFAULT_Q,
    s_max: int = DEFAULT_S_MAX,
) -> JointDecodeResult:
    """Single-shot baseline: one decode at the design log-odds, no tracking."""
    return joint_decode(
        h,
        z,
        y,
        design_p,
        max_global=1,
        max_local=max_local,
        kernel=kernel,
        q=q,
        s_max=s_max,
    )
