"""Pure-numpy kernels.  Reference path, and the fallback when numba is off.

Signatures and random-draw order match ``_kernels_numba`` exactly.
"""

import numpy as np

from .rng import next_block, next_double


def measure(beta, n, state):
    k = beta.shape[0]
    u = next_block(state, n * k).reshape(n, k)
    return (u < beta * beta).astype(np.uint8)


def repair(bits, weights, profits, budget, state):
    n = bits.shape[0]
    wsum = np.empty(n, dtype=np.int64)
    psum = np.empty(n, dtype=np.int64)
    for r in range(n):
        row = bits[r]
        total = int(weights @ row)
        while total > budget:
            selected = np.flatnonzero(row)
            j = selected[int(next_double(state) * selected.shape[0])]
            row[j] = 0
            total -= int(weights[j])
        while True:
            fits = np.flatnonzero((row == 0) & (weights <= budget - total))
            if fits.shape[0] == 0:
                break
            j = fits[int(next_double(state) * fits.shape[0])]
            row[j] = 1
            total += int(weights[j])
        wsum[r] = total
        psum[r] = int(profits @ row)
    return wsum, psum


def update(alpha, beta, best_rows, worst_rows, cos_tab, sin_tab):
    for i in range(best_rows.shape[0]):
        b = best_rows[i]
        w = worst_rows[i]
        differ = b != w
        first_third = alpha * beta >= 0.0
        sign = np.where(b == 1, 1.0, -1.0) * np.where(first_third, 1.0, -1.0)
        c = cos_tab[i]
        s = sign * sin_tab[i]
        new_alpha = c * alpha - s * beta
        new_beta = s * alpha + c * beta
        alpha[:] = np.where(differ, new_alpha, alpha)
        beta[:] = np.where(differ, new_beta, beta)
