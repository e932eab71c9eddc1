"""
Golden-section search for maximizing a unimodal function on a closed interval.
"""

from typing import Callable, Tuple

import numpy as np

_INVERSE_GOLDEN_RATIO = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_maximize(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-7,
) -> Tuple[float, float]:
    """
    Maximizes ``f`` on [a, b], comparing the interior result against both endpoints.

    Args:
        f (Callable[[float], float]): Objective, unimodal on [a, b].
        a (float): Left bound.
        b (float): Right bound, > a.
        tol (float): Width of the final bracket.

    Returns:
        Tuple[float, float]: The maximizer and its value. Ties go to the leftmost point.
    """
    c = b - (b - a) * _INVERSE_GOLDEN_RATIO
    d = a + (b - a) * _INVERSE_GOLDEN_RATIO
    fc, fd = f(c), f(d)
    lo, hi = a, b
    while abs(d - c) > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * _INVERSE_GOLDEN_RATIO
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * _INVERSE_GOLDEN_RATIO
            fd = f(d)
    x = (lo + hi) / 2.0
    best_x, best_value = a, f(a)
    for point in (x, b):
        value = f(point)
        if value > best_value:
            best_x, best_value = point, value
    return best_x, best_value
