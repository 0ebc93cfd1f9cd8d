"""Compiled circle-count histogram; absent when numba is not installed."""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None


if njit is not None:

    @njit(cache=True, nogil=True)
    def circle_histogram(peer, lo, hi, out):
        nports = peer.shape[0]
        seen = np.full(nports, -1, np.int64)
        for s in range(lo, hi):
            circles = 0
            for start in range(nports):
                if seen[start] == s:
                    continue
                circles += 1
                p = start
                while True:
                    q = peer[p]
                    seen[p] = s
                    seen[q] = s
                    c = q >> 2
                    j = q & 3
                    if (s >> c) & 1:
                        p = 4 * c + 3 - j
                    else:
                        p = 4 * c + (j ^ 1)
                    if p == start:
                        break
            out[circles] += 1

else:
    circle_histogram = None
