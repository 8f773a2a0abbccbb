"""Hand-transcribed qutrit star-tensor tables (1-based (row, col) -> value, upper triangle)."""
import numpy as np

h = np.sqrt(3.0) / 2.0

D3_UPPER = {
    1: {(1, 8): 1.0, (4, 6): h, (5, 7): h},
    2: {(2, 8): 1.0, (4, 7): -h, (5, 6): h},
    3: {(3, 8): 1.0, (4, 4): h, (5, 5): h, (6, 6): -h, (7, 7): -h},
    4: {(1, 6): h, (2, 7): -h, (3, 4): h, (4, 8): -0.5},
    5: {(1, 7): h, (2, 6): h, (3, 5): h, (5, 8): -0.5},
    6: {(1, 4): h, (2, 5): h, (3, 6): -h, (6, 8): -0.5},
    7: {(1, 5): h, (2, 4): -h, (3, 7): -h, (7, 8): -0.5},
    8: {(1, 1): 1.0, (2, 2): 1.0, (3, 3): 1.0, (4, 4): -0.5, (5, 5): -0.5, (6, 6): -0.5, (7, 7): -0.5, (8, 8): -1.0},
}


def d3_matrices() -> np.ndarray:
    out = np.zeros((8, 8, 8))
    for k, entries in D3_UPPER.items():
        for (i, j), v in entries.items():
            out[k - 1, i - 1, j - 1] = v
            out[k - 1, j - 1, i - 1] = v
    return out
