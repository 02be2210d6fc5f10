"""Integer-metric belief propagation over the full staircase Tanner graph.

Log-likelihood ratios are quantized to integers scaled by 2**q and clipped
to +-s_max; the convention for stored values is that positive favors bit 1.
Internally the decoder negates everything so that the textbook check-node
rule applies without degree-dependent sign flips. The check-node kernel is
selectable: an exact pairwise reduction with a small integer correction
table (default), or pure min-sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import SparseParityMatrix
from .encoding import as_bit_array

__all__ = [
    "DEFAULT_Q",
    "DEFAULT_S_MAX",
    "LlrqVector",
    "DecodeOutcome",
    "quantize_llr",
    "make_correction_table",
    "init_from_side_info",
    "bp_decode",
    "hard_syndrome",
]

DEFAULT_Q = 3
DEFAULT_S_MAX = 10000

KERNELS = ("table", "minsum")


@dataclass
class LlrqVector:
    """Quantized LLRs for all n bits: scaled by 2**q, magnitudes <= s_max."""

    values: np.ndarray
    q: int = DEFAULT_Q
    s_max: int = DEFAULT_S_MAX
    k: int | None = None

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.int32)
        if self.values.ndim != 1:
            raise ValueError("LLR vector must be one-dimensional")
        if self.s_max <= 0 or self.q < 0:
            raise ValueError(f"need s_max > 0 and q >= 0, got {self.s_max}, {self.q}")
        if np.abs(self.values, dtype=np.int64).max(initial=0) > self.s_max:
            raise ValueError(f"LLR magnitudes must not exceed s_max={self.s_max}")


@dataclass
class DecodeOutcome:
    """Result of one belief-propagation run."""

    hard_bits: np.ndarray
    posterior: LlrqVector
    iterations_used: int
    syndrome_ok: bool


def quantize_llr(l: float, q: int = DEFAULT_Q, s_max: int = DEFAULT_S_MAX) -> int:
    """Map a real LLR to the integer grid: floor(2**q * l + 0.5), clipped."""
    if not math.isfinite(l):
        raise ValueError(f"LLR must be finite, got {l}")
    v = math.floor(2**q * l + 0.5)
    return max(-s_max, min(s_max, v))


_TABLES: dict = {}


def make_correction_table(q: int) -> np.ndarray:
    """Integer correction term t[u] = round(2**q * ln(1 + exp(-u / 2**q))).

    The table ends at the first zero entry; its length stays within 8 * 2**q.
    """
    scale = float(2**q)
    out = []
    u = 0
    while True:
        val = math.floor(scale * math.log1p(math.exp(-u / scale)) + 0.5)
        if val == 0:
            break
        out.append(val)
        u += 1
    table = np.asarray(out, dtype=np.int32)
    assert table.size <= 8 * 2**q
    return table


def _table_for(q: int) -> np.ndarray:
    if q not in _TABLES:
        # one trailing zero so clipped lookups land on "no correction"
        _TABLES[q] = np.concatenate([make_correction_table(q), [0]]).astype(np.int32)
    return _TABLES[q]


def init_from_side_info(
    y,
    z,
    alpha: float,
    q: int = DEFAULT_Q,
    s_max: int = DEFAULT_S_MAX,
) -> LlrqVector:
    """Build the decoder's starting LLRs from side information and parity.

    Systematic positions get the quantized LLR (2*y - 1) * |alpha|, so the
    favored value is always y itself; parity positions are known exactly and
    saturate to (2*z - 1) * s_max.
    """
    y = as_bit_array(y, np.asarray(y).size, "side information")
    z = as_bit_array(z, np.asarray(z).size, "parity block")
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    l_sys = (2.0 * y - 1.0) * abs(alpha)
    v_sys = np.clip(np.floor(2**q * l_sys + 0.5), -s_max, s_max).astype(np.int32)
    v_par = ((2 * z.astype(np.int32) - 1) * s_max).astype(np.int32)
    return LlrqVector(np.concatenate([v_sys, v_par]), q=q, s_max=s_max, k=int(y.size))


def hard_syndrome(h: SparseParityMatrix, bits) -> np.ndarray:
    """Parity of every check for a full hard-decision word of length n."""
    bits = as_bit_array(bits, h.n_cols, "codeword")
    plan = h.decode_plan()
    csum = np.concatenate([[0], np.cumsum(bits[plan.edge_col], dtype=np.int64)])
    return ((csum[plan.row_ptr[1:]] - csum[plan.row_ptr[:-1]]) & 1).astype(np.uint8)


def _box_table(a, b, table, tmax):
    mag = np.minimum(np.abs(a), np.abs(b))
    out = np.sign(a) * np.sign(b) * mag
    out += table[np.minimum(np.abs(a + b), tmax)]
    out -= table[np.minimum(np.abs(a - b), tmax)]
    return out


def _box_minsum(a, b):
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def bp_decode(
    h: SparseParityMatrix,
    init: LlrqVector,
    max_local_iters: int = 50,
    kernel: str = "table",
) -> DecodeOutcome:
    """Flooding-schedule decoding with integer messages.

    Each round updates every check node and then every bit node; hard
    decisions are bit = 1 iff the posterior is positive (ties resolve to 0).
    The run stops as soon as the hard decisions satisfy every check, so a
    clean starting point reports zero iterations. All messages stay within
    [-s_max, s_max].
    """
    if kernel not in KERNELS:
        raise ValueError(f"kernel must be one of {KERNELS}, got {kernel!r}")
    if init.values.size != h.n_cols:
        raise ValueError(f"init has {init.values.size} values for n={h.n_cols}")
    plan = h.decode_plan()
    s_max = init.s_max
    ident = np.int32(2 * s_max)
    table = _table_for(init.q)
    tmax = table.size - 1

    if kernel == "table":
        def box(a, b):
            return _box_table(a, b, table, tmax)
    else:
        box = _box_minsum

    lam0 = -init.values.astype(np.int64)  # internal domain: positive favors bit 0
    tot = lam0.copy()
    bits = (tot < 0).astype(np.uint8)

    def checks_pass() -> bool:
        csum = np.concatenate([[0], np.cumsum(bits[plan.edge_col], dtype=np.int64)])
        seg = (csum[plan.row_ptr[1:]] - csum[plan.row_ptr[:-1]]) & 1
        return not seg.any()

    iterations = 0
    ok = checks_pass()
    if not ok:
        v2c = lam0[plan.edge_col].astype(np.int32)
        for iterations in range(1, max_local_iters + 1):
            fw = v2c.copy()
            for idx in plan.scan_fw:
                fw[idx] = box(fw[idx - 1], v2c[idx])
            bw = v2c.copy()
            for idx in plan.scan_bw:
                bw[idx] = box(bw[idx + 1], v2c[idx])
            left = np.full(plan.n_edges, ident, dtype=np.int32)
            left[plan.not_first] = fw[plan.not_first - 1]
            right = np.full(plan.n_edges, ident, dtype=np.int32)
            right[plan.not_last] = bw[plan.not_last + 1]
            c2v = np.clip(box(left, right), -s_max, s_max).astype(np.int32)

            csum = np.concatenate([[0], np.cumsum(c2v[plan.by_col], dtype=np.int64)])
            col_sum = csum[plan.col_ptr[1:]] - csum[plan.col_ptr[:-1]]
            tot = lam0 + col_sum
            v2c = np.clip(tot[plan.edge_col] - c2v, -s_max, s_max).astype(np.int32)
            assert np.abs(v2c).max(initial=0) <= s_max
            bits = (tot < 0).astype(np.uint8)
            if checks_pass():
                ok = True
                break

    posterior = LlrqVector(
        np.clip(-tot, -s_max, s_max).astype(np.int32),
        q=init.q,
        s_max=s_max,
        k=init.k,
    )
    return DecodeOutcome(
        hard_bits=bits,
        posterior=posterior,
        iterations_used=iterations,
        syndrome_ok=bool(ok),
    )
