"""Pluggable dense-math kernels behind the workspace operations.

Every state-vector operation reduces to one of four dense kernels:
Kronecker expansion (push), suffix-column in-place matrix multiply
(gate application), a 3-axis middle swap (qubit reordering), and
column sums of squared magnitudes (probabilities). A BackendHandle
bundles one implementation of all four:

- "reference": straightforward numpy, kept deliberately simple.
- "optimized": fused allocation-free loops compiled by numba, parallel
  across independent rows when more than one worker thread is allowed.

Both produce numerically equivalent results within 1e-12 and identical
control flow, so a workspace behaves the same on either.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch


def _isPowerOfTwo(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


class BackendHandle:
    """Selects and hosts one implementation of the four dense kernels.

    Fields:
        kind: "reference" or "optimized".
        worker_budget: worker threads the optimized kernels may use.
    """

    kind = "unset"

    def __init__(self, worker_budget: int = 1):
        if worker_budget < 1:
            raise ValueError("worker_budget must be a positive integer")
        self.worker_budget = worker_budget

    # -- shared argument checks ------------------------------------------

    def _checkSuffix(self, buf: np.ndarray, cols: int, d: int, g: np.ndarray) -> None:
        if not (_isPowerOfTwo(cols) and _isPowerOfTwo(d) and d <= cols):
            raise ShapeMismatch(f"need powers of two with d <= cols, got cols={cols} d={d}")
        if buf.size % cols != 0:
            raise ShapeMismatch(f"buffer size {buf.size} is not a multiple of cols={cols}")
        if g.shape != (d, d):
            raise ShapeMismatch(f"gate matrix shape {g.shape} does not match d={d}")

    def _checkSwap(self, buf: np.ndarray, a_count: int, b_count: int) -> None:
        if a_count < 1 or b_count < 1 or buf.size != a_count * 2 * b_count:
            raise ShapeMismatch(
                f"buffer size {buf.size} does not factor as ({a_count}, 2, {b_count})")

    def _checkColumns(self, buf: np.ndarray) -> None:
        if buf.size % 2 != 0:
            raise ShapeMismatch(f"buffer size {buf.size} is odd")

    # -- kernel interface -------------------------------------------------

    def kronExpand(self, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Return the length-2n interleaving (v[0]w[0], v[0]w[1], v[1]w[0], ...)."""
        raise NotImplementedError

    def suffixMatmulInPlace(self, buf: np.ndarray, cols: int, d: int, g: np.ndarray) -> None:
        """View buf as (rows, cols) row-major and multiply the last d columns by g
        transposed, row by row. The leading cols - d columns are untouched.
        d must equal the gate matrix dimension."""
        raise NotImplementedError

    def middleAxisSwap(self, buf: np.ndarray, a_count: int, b_count: int) -> np.ndarray:
        """View buf as (a_count, 2, b_count) row-major and return a fresh flat
        buffer reordered to (a_count, b_count, 2): out[a,b,i] == in[a,i,b]."""
        raise NotImplementedError

    def columnNormsSquared(self, buf: np.ndarray) -> tuple[float, float]:
        """View buf as (rows, 2) row-major and return per-column sums of |.|^2."""
        raise NotImplementedError

    def warmup(self) -> None:
        """Pay any one-time compilation cost now rather than inside a timing."""


class _ReferenceBackend(BackendHandle):
    """Plain numpy kernels, the simplest correct expression of each contract."""

    kind = "reference"

    def kronExpand(self, v, w):
        return np.kron(v, w)

    def suffixMatmulInPlace(self, buf, cols, d, g):
        self._checkSuffix(buf, cols, d, g)
        sub = buf.reshape(-1, cols)[:, cols - d:]
        np.matmul(sub, g.T, out=sub)

    def middleAxisSwap(self, buf, a_count, b_count):
        self._checkSwap(buf, a_count, b_count)
        cube = buf.reshape(a_count, 2, b_count)
        return np.ascontiguousarray(cube.swapaxes(-2, -1)).reshape(-1)

    def columnNormsSquared(self, buf):
        self._checkColumns(buf)
        cols = buf.reshape(-1, 2)
        s = np.sum(cols.real ** 2 + cols.imag ** 2, axis=0)
        return float(s[0]), float(s[1])


class _OptimizedBackend(BackendHandle):
    """Numba-compiled kernels: no temporaries, suffix segments kept in registers,
    rows split across worker_budget threads when the runtime allows more than one."""

    kind = "optimized"

    def __init__(self, worker_budget: int | None = None):
        from . import _numba_kernels as k

        available = k.maxThreads()
        if worker_budget is None:
            worker_budget = available
        super().__init__(worker_budget)
        self.worker_budget = min(self.worker_budget, available)
        k.setThreads(self.worker_budget)
        self._k = k

    def warmup(self) -> None:
        """Run every kernel once on tiny inputs so JIT compilation happens
        before any timed region."""
        v = np.array([0.6 + 0.0j, 0.8j])
        g = np.eye(2, dtype=np.complex128)
        self.kronExpand(v, v)
        buf = v.copy()
        self.suffixMatmulInPlace(buf, 2, 2, g)
        self.suffixMatmulInPlace(np.kron(v, v), 4, 4, np.eye(4, dtype=np.complex128))
        self.suffixMatmulInPlace(
            np.kron(np.kron(v, v), v), 8, 8, np.eye(8, dtype=np.complex128))
        self.middleAxisSwap(np.kron(v, v), 1, 2)
        self.columnNormsSquared(v)

    def kronExpand(self, v, w):
        out = np.empty(2 * v.size, dtype=np.complex128)
        self._k.kronExpand(np.ascontiguousarray(v, dtype=np.complex128),
                           complex(w[0]), complex(w[1]), out)
        return out

    def suffixMatmulInPlace(self, buf, cols, d, g):
        self._checkSuffix(buf, cols, d, g)
        g = np.ascontiguousarray(g, dtype=np.complex128)
        if d == 2:
            self._k.suffixMatmul2(buf, cols, g[0, 0], g[0, 1], g[1, 0], g[1, 1])
        elif d == 4:
            self._k.suffixMatmul4(buf, cols, g)
        else:
            self._k.suffixMatmulN(buf, cols, g)

    def middleAxisSwap(self, buf, a_count, b_count):
        self._checkSwap(buf, a_count, b_count)
        out = np.empty_like(buf)
        self._k.middleAxisSwap(buf, out, a_count, b_count)
        return out

    def columnNormsSquared(self, buf):
        self._checkColumns(buf)
        s0, s1 = self._k.columnNormsSquared(buf)
        return float(s0), float(s1)


_CACHE: dict[tuple, BackendHandle] = {}


def getBackend(kind: str = "reference", worker_budget: int | None = None) -> BackendHandle:
    """Return a shared handle for the named kernel implementation."""
    key = (kind, worker_budget)
    if key not in _CACHE:
        if kind == "reference":
            _CACHE[key] = _ReferenceBackend()
        elif kind == "optimized":
            _CACHE[key] = _OptimizedBackend(worker_budget)
        else:
            raise ValueError(f"unknown backend kind: {kind!r}")
    return _CACHE[key]
