"""Seeded deterministic sampling of small-height parameters.

Verification sweeps draw parameter tuples and seed elements from a
deterministic generator over Gaussian rationals of bounded height, so
reports are reproducible from (seed, config) and exact arithmetic stays
fast.  Nothing here is statistical: samples only choose *which* exact
identities get checked.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import Scalar
from .polymod import FamilyParams, THETA
from .classify import twice_beta_is_nonneg_int


class ParamSampler:
    """Deterministic small-height Gaussian-rational sampler."""

    def __init__(self, seed=0, height=3):
        self.rng = random.Random(seed)
        self.height = height

    def rational(self, allow_zero=True):
        h = self.height
        while True:
            num = self.rng.randint(-h, h)
            den = self.rng.randint(1, h)
            if allow_zero or num:
                return Fraction(num, den)

    def scalar(self, allow_zero=True, imaginary=False):
        re = self.rational()
        im = self.rational() if (imaginary and self.rng.random() < 0.5) else 0
        s = Scalar(re, im)
        if not allow_zero and not s:
            return self.scalar(allow_zero=False, imaginary=imaginary)
        return s

    def distinct_nonzero(self, n, imaginary=False):
        out = []
        while len(out) < n:
            s = self.scalar(allow_zero=False, imaginary=imaginary)
            if s not in out:
                out.append(s)
        return out

    def family_params(self, family, lam=None, admissible=True):
        """One rank-one parameter tuple; for Theta, ``admissible`` keeps
        2*beta away from the nonnegative integers."""
        if lam is None:
            lam = self.scalar(allow_zero=False)
        alpha = self.scalar(allow_zero=False)
        beta = self.scalar(imaginary=True)
        if family == THETA and admissible:
            while twice_beta_is_nonneg_int(beta):
                beta = self.scalar(imaginary=True)
        gamma = self.scalar()
        return FamilyParams(family, lam, alpha, beta, gamma)

    def factor_list(self, family, m, admissible=True):
        lams = self.distinct_nonzero(m)
        return tuple(self.family_params(family, lam=lam, admissible=admissible)
                     for lam in lams)

    def hw_tuple(self):
        return (self.scalar(), self.scalar(), self.scalar())
