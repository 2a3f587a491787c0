"""int64 stencil kernel for constant terms of powers of a Laurent polynomial.

The running product W^k is stored as a dense int64 array over the box
|e_i| <= w_i * floor(K/2), where w_i is the largest absolute exponent of
variable i in W; no coefficient outside that box can influence a constant
term of W^k for k <= K.  Each step shifts and adds once per monomial of W.

Safe only when every intermediate coefficient fits in int64.  All
coefficients of W^k are bounded by (sum of |coefficients of W|)^k, so the
caller checks that bound against 2^62 and falls back to exact Python ints
otherwise.  Set GRAPHPOTENTIALS_PURE=1 to force the fallback.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        if args and callable(args[0]):
            return args[0]
        return wrap

INT64_SAFE = 1 << 62
MAX_BOX = 1 << 26  # cells; 0.5 GiB for two int64 copies


@njit(cache=True)
def _step(prev, dims, strides, shifts, coeffs, bound_cur, bound_prev):
    n = dims.shape[0]
    out = np.zeros(prev.shape[0], dtype=np.int64)
    idx = np.empty(n, dtype=np.int64)
    total = 1
    for i in range(n):
        idx[i] = -bound_cur[i]
        total *= 2 * bound_cur[i] + 1
    half = np.empty(n, dtype=np.int64)
    for i in range(n):
        half[i] = dims[i] // 2
    for _ in range(total):
        flat = 0
        for i in range(n):
            flat += (idx[i] + half[i]) * strides[i]
        acc = 0
        for m in range(shifts.shape[0]):
            src = 0
            ok = True
            for i in range(n):
                s = idx[i] - shifts[m, i]
                if s < -bound_prev[i] or s > bound_prev[i]:
                    ok = False
                    break
                src += (s + half[i]) * strides[i]
            if ok:
                acc += coeffs[m] * prev[src]
        out[flat] = acc
        for i in range(n - 1, -1, -1):
            idx[i] += 1
            if idx[i] <= bound_cur[i]:
                break
            idx[i] = -bound_cur[i]
    return out


def int64_safe(coeffs, order: int) -> bool:
    """Whether every coefficient of W^order provably fits in int64."""
    total = sum(abs(int(c)) for c in coeffs)
    return total ** order < INT64_SAFE


def constant_terms_of_powers(monomials, nvars: int, order: int) -> list[int] | None:
    """[W^k]_0 for k = 0..order, or None when the dense path is unusable.

    ``monomials`` is a list of (exponent tuple, integer coefficient).
    """
    if not HAVE_NUMBA:
        return None
    coeffs = [c for _, c in monomials]
    if not int64_safe(coeffs, order):
        return None
    if nvars == 0:
        c = sum(coeffs)
        return [int(c) ** k for k in range(order + 1)]
    w = [max((abs(e[i]) for e, _ in monomials), default=0) for i in range(nvars)]
    halfwidth = [wi * (order // 2) for wi in w]
    dims = np.array([2 * h + 1 for h in halfwidth], dtype=np.int64)
    if int(np.prod(dims.astype(object))) > MAX_BOX:
        return None
    strides = np.ones(nvars, dtype=np.int64)
    for i in range(nvars - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    size = int(strides[0] * dims[0])
    shifts = np.array([list(e) for e, _ in monomials], dtype=np.int64)
    cvec = np.array(coeffs, dtype=np.int64)

    cur = np.zeros(size, dtype=np.int64)
    center = int(sum((dims[i] // 2) * strides[i] for i in range(nvars)))
    cur[center] = 1
    out = [1]
    bound_prev = np.zeros(nvars, dtype=np.int64)
    for k in range(1, order + 1):
        bound_cur = np.array(
            [w[i] * min(k, order - k) for i in range(nvars)], dtype=np.int64)
        cur = _step(cur, dims, strides, shifts, cvec, bound_cur, bound_prev)
        out.append(int(cur[center]))
        bound_prev = bound_cur
    return out


def warmup():
    """Trigger JIT compilation on a tiny instance (cached across runs)."""
    constant_terms_of_powers([((1,), 1), ((-1,), 1)], 1, 2)
