"""Shared fixtures and published reference tables for the six bundled networks."""

from fractions import Fraction

import numpy as np
import pytest

import netphi

# Pole positions of phi along the g axis (ascending per network).
TABLE1 = {
    1: [0.111111, 1.0],
    2: [0.266223, 0.659656, 0.892236, 2.08888, 3.05524],
    3: [0.333333, 0.618034, 1.61803],
    4: [0.333333, 0.404394, 0.51668, 0.618034, 0.683715, 1.61803],
    5: [0.373813, 0.649693, 0.823506, 1.0],
    6: [0.5, 0.618034, 1.61803],
}

# Unit-template adjacency eigenvalues (as multiples of g).
TABLE2 = {
    1: [9, -1, -1, -1, -1, -1, -1, -1, -1, -1],
    2: [3.75626, -3.75626, 1.51594, -1.51594, 1.12078, -1.12078,
        0.478725, -0.478725, 0.327307, -0.327307],
    3: [3, -3, 1.61803, 1.61803, -1.61803, -1.61803,
        0.618034, 0.618034, -0.618034, -0.618034],
    4: [3, -2.47283, 1.93543, -1.61803, -1.61803, 1.61803,
        -1.4626, -0.618034, 0.618034, 0.618034],
    5: [2.67513, -2.67513, 1.53919, -1.53919, 1.21432, -1.21432, 1, 1, -1, -1],
    6: [2, -2, 1.61803, 1.61803, -1.61803, -1.61803,
        0.618034, 0.618034, -0.618034, -0.618034],
}

# Published closed forms as factored polynomials in q = g^2:
# (factor coefficients ascending, exponent) lists for numerator/denominator.
PUBLISHED_FORMS = {
    1: ([((1, -73), 10)],
        [((1, -82, 81), 10)]),
    2: ([((1, -15, 32, -19, 2), 2), ((1, -15, 35, -16, 2), 2),
         ((1, -13, 37, -30, 3), 2), ((1, -15, 37, -27, 4), 2),
         ((1, -14, 36, -26, 4), 2)],
        [((-1, 18, -59, 59, -15, 1), 10)]),
    3: ([((1, -9, 11), 10)],
        [((1, -12, 28, -9), 10)]),
    4: ([((1, -21, 161, -563, 895, -517), 4), ((1, -21, 159, -535, 793, -409), 4),
         ((1, -21, 159, -533, 769, -355), 2)],
        [((1, -3, 1), 10), ((1, -21, 152, -445, 441), 10)]),
    5: ([((1, -8, 11), 2), ((1, -10, 26, -19), 4), ((1, -9, 22, -16), 4)],
        [((-1, 1), 8), ((1, -11, 31, -25), 10)]),
    6: ([((1, -5, 5), 10)],
        [((1, -7, 13, -4), 10)]),
}

ALL_IDS = (1, 2, 3, 4, 5, 6)


def expand_published(network_id):
    """Expand a factored published form with exact integer convolution.

    Kept independent of the package's polynomial helpers so it can serve
    as an oracle for them.
    """

    def conv(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += Fraction(ai) * Fraction(bj)
        return out

    def expand(factors):
        poly = [Fraction(1)]
        for coeffs, power in factors:
            for _ in range(power):
                poly = conv(poly, list(coeffs))
        return tuple(poly)

    num_factors, den_factors = PUBLISHED_FORMS[network_id]
    return expand(num_factors), expand(den_factors)


def isotropic_model(template, g, sigma2=1.0):
    return netphi.NetworkModel(
        template, g, netphi.NoiseCovariance.isotropic(template.n, sigma2)
    )


@pytest.fixture(scope="session")
def templates():
    return {i: netphi.paper_network(i) for i in ALL_IDS}


@pytest.fixture(scope="session")
def closed_forms(templates):
    """Exact rational closed forms, reconstructed once per session."""
    return {i: netphi.phi_rational(templates[i]) for i in ALL_IDS}
