"""numba-compiled kernels; same contracts as ``_kernels_numpy``."""

import numpy as np
from numba import njit

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_INV_2_53 = 1.0 / 9007199254740992.0

# fastmath stays off: contraction to FMA would break bit-equality with numpy.
_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _next_double(state):
    z = state[0] + _GAMMA
    state[0] = z
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return (z >> _S11) * _INV_2_53


@njit(**_opts)
def measure(beta, n, state):
    k = beta.shape[0]
    bits = np.zeros((n, k), dtype=np.uint8)
    for r in range(n):
        for j in range(k):
            if _next_double(state) < beta[j] * beta[j]:
                bits[r, j] = 1
    return bits


@njit(**_opts)
def _nth(row, weights, want_set, limit, target):
    # index of the target-th (0-based) position matching the candidate rule
    seen = 0
    for j in range(row.shape[0]):
        if want_set:
            ok = row[j] == 1
        else:
            ok = row[j] == 0 and weights[j] <= limit
        if ok:
            if seen == target:
                return j
            seen += 1
    return -1


@njit(**_opts)
def repair(bits, weights, profits, budget, state):
    n, k = bits.shape
    wsum = np.empty(n, dtype=np.int64)
    psum = np.empty(n, dtype=np.int64)
    for r in range(n):
        row = bits[r]
        total = 0
        count = 0
        for j in range(k):
            if row[j] == 1:
                total += weights[j]
                count += 1
        while total > budget:
            j = _nth(row, weights, True, 0, int(_next_double(state) * count))
            row[j] = 0
            total -= weights[j]
            count -= 1
        while True:
            limit = budget - total
            fits = 0
            for j in range(k):
                if row[j] == 0 and weights[j] <= limit:
                    fits += 1
            if fits == 0:
                break
            j = _nth(row, weights, False, limit, int(_next_double(state) * fits))
            row[j] = 1
            total += weights[j]
        wsum[r] = total
        p = 0
        for j in range(k):
            if row[j] == 1:
                p += profits[j]
        psum[r] = p
    return wsum, psum


@njit(**_opts)
def update(alpha, beta, best_rows, worst_rows, cos_tab, sin_tab):
    for i in range(best_rows.shape[0]):
        c = cos_tab[i]
        for j in range(alpha.shape[0]):
            b = best_rows[i, j]
            if b == worst_rows[i, j]:
                continue
            a0 = alpha[j]
            b0 = beta[j]
            s = sin_tab[i]
            if b == 0:
                s = -s
            if a0 * b0 < 0.0:
                s = -s
            alpha[j] = c * a0 - s * b0
            beta[j] = s * a0 + c * b0
