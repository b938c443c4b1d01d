"""Independent reference values for the test suite.

Everything here is computed by methods unrelated to the package
internals: accelerated alternating series for eta and zeta, plain
partial sums, and closed forms. Tests compare package output against
these, never against the package itself.
"""

from __future__ import annotations

import math


def alternating_eta(s: complex, n: int = 50) -> complex:
    """eta(s) = sum_{k>=1} (-1)^(k-1) k^(-s), Cohen-Villegas-Zagier.

    The acceleration converges like (3 + sqrt 8)^(-n) for s bounded away
    from the negative axis; n = 50 leaves double precision as the floor
    for Re s in (0, 4] with moderate imaginary part.
    """
    s = complex(s)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    total = 0.0 + 0.0j
    for k in range(n):
        c = b - c
        total += c * (k + 1.0) ** (-s)
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return total / d


def zeta_from_eta(s: complex, n: int = 50) -> complex:
    """zeta through the alternating series; valid away from s = 1."""
    s = complex(s)
    return alternating_eta(s, n) / (1.0 - 2.0 ** (1.0 - s))


def zeta_partial(s: float, terms: int = 200000) -> float:
    """Plain partial sum plus integral tail bound midpoint.

    For real s > 1: sum_{k<=N} k^-s + N^(1-s)/(s-1) corrects the tail to
    O(N^-s), enough for 1e-12 at s >= 2 with the default N.
    """
    total = sum(k ** (-s) for k in range(1, terms + 1))
    return total + terms ** (1.0 - s) / (s - 1.0)


def spectrum_zeta_direct(spectrum, alpha: complex) -> complex:
    """sum e^-alpha over a finite spectrum, by plain summation."""
    return sum(complex(e) ** (-complex(alpha)) for e in spectrum)
