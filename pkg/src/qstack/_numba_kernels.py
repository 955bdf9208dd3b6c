"""Numba-compiled bodies for the optimized backend.

All kernels work on flat contiguous complex128 buffers. Loops over
independent rows use prange so they scale with the thread budget;
with a single worker they degrade to plain serial loops.
"""

import numba
import numpy as np
from numba import njit, prange

# workqueue works everywhere and avoids the TBB version probe warning
numba.config.THREADING_LAYER = "workqueue"


def maxThreads() -> int:
    return int(numba.config.NUMBA_NUM_THREADS)


def setThreads(n: int) -> None:
    numba.set_num_threads(max(1, min(n, maxThreads())))


@njit(parallel=True, cache=True)
def kronExpand(v, w0, w1, out):
    for i in prange(v.size):
        a = v[i]
        out[2 * i] = a * w0
        out[2 * i + 1] = a * w1


@njit(parallel=True, cache=True)
def suffixMatmul2(buf, cols, g00, g01, g10, g11):
    rows = buf.size // cols
    base = cols - 2
    for r in prange(rows):
        off = r * cols + base
        a = buf[off]
        b = buf[off + 1]
        buf[off] = g00 * a + g01 * b
        buf[off + 1] = g10 * a + g11 * b


@njit(parallel=True, cache=True)
def suffixMatmul4(buf, cols, g):
    rows = buf.size // cols
    base = cols - 4
    for r in prange(rows):
        off = r * cols + base
        a0 = buf[off]
        a1 = buf[off + 1]
        a2 = buf[off + 2]
        a3 = buf[off + 3]
        for j in range(4):
            buf[off + j] = g[j, 0] * a0 + g[j, 1] * a1 + g[j, 2] * a2 + g[j, 3] * a3


@njit(parallel=True, cache=True)
def suffixMatmulN(buf, cols, g):
    d = g.shape[0]
    rows = buf.size // cols
    base = cols - d
    for r in prange(rows):
        off = r * cols + base
        seg = buf[off:off + d].copy()
        for j in range(d):
            acc = 0.0 + 0.0j
            for k in range(d):
                acc += g[j, k] * seg[k]
            buf[off + j] = acc


@njit(parallel=True, cache=True)
def middleAxisSwap(src, out, a_count, b_count):
    stride = 2 * b_count
    for a in prange(a_count):
        base = a * stride
        for b in range(b_count):
            out[base + 2 * b] = src[base + b]
            out[base + 2 * b + 1] = src[base + b_count + b]


@njit(parallel=True, cache=True)
def columnNormsSquared(buf):
    rows = buf.size // 2
    s0 = 0.0
    s1 = 0.0
    for r in prange(rows):
        a = buf[2 * r]
        b = buf[2 * r + 1]
        s0 += a.real * a.real + a.imag * a.imag
        s1 += b.real * b.real + b.imag * b.imag
    return s0, s1
