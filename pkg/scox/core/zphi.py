"""
Exact arithmetic in Z[phi], phi the golden ratio.

A number a + b*phi is stored as the integer pair (a, b). Arrays of shape
(..., 2) hold vectors of such numbers so that reflections act on a whole
root at once. phi satisfies phi**2 = phi + 1, which covers every Cartan
entry of types A, B, D, E, F, H and I2(5), I2(6).
"""
import math
from typing import Tuple

import numpy as np

ZPhi = Tuple[int, int]

ZERO: ZPhi = (0, 0)
ONE: ZPhi = (1, 0)
TWO: ZPhi = (2, 0)
PHI: ZPhi = (0, 1)


def mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Multiply elementwise; both operands broadcast over the last axis of length 2."""
    a1, b1 = x[..., 0], x[..., 1]
    a2, b2 = y[..., 0], y[..., 1]
    b1b2 = b1 * b2
    return np.stack((a1 * a2 + b1b2, a1 * b2 + a2 * b1 + b1b2), axis=-1)


def sign(value: ZPhi) -> int:
    """Sign of a + b*phi, decided without floating point."""
    a, b = int(value[0]), int(value[1])
    # 2(a + b*phi) = x + y*sqrt(5)
    x, y = 2 * a + b, b
    if x >= 0 and y >= 0:
        return 0 if x == 0 and y == 0 else 1
    if x <= 0 and y <= 0:
        return -1
    if x > 0:
        return 1 if x * x > 5 * y * y else -1
    return 1 if 5 * y * y > x * x else -1


def to_float(value: ZPhi) -> float:
    """Approximate value, for display only."""
    return value[0] + value[1] * (1 + math.sqrt(5)) / 2


def cartan_pair(m: int) -> Tuple[ZPhi, ZPhi]:
    """
    Off-diagonal Cartan entries (A[i][j], A[j][i]) for an edge labelled m.

    Their product is 4*cos(pi/m)**2, as a Cartan matrix requires.
    """
    if m == 2:
        return ZERO, ZERO
    if m == 3:
        return (-1, 0), (-1, 0)
    if m == 4:
        return (-1, 0), (-2, 0)
    if m == 5:
        return (0, -1), (0, -1)
    if m == 6:
        return (-1, 0), (-3, 0)
    raise ValueError(f"no Z[phi] Cartan entry for m={m}")
