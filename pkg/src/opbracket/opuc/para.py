"""Paraorthogonal polynomials and their C/S combinations.

    P_N = zΦ_{N−1} − β̄Φ*_{N−1},   Q_N = zΨ_{N−1} + β̄Ψ*_{N−1},
    C_N = (P_N + Q_N)/2,          S_N = (P_N − Q_N)/2.

The Carathéodory function is F = −Q_N/P_N and the Schur function f = −C_N/(zS_N).
"""
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..core import CoeffPoly, PoleError, VerblunskyParams, conj, value_of
from ..core.errors import ArgumentError
from .szego import SzegoPair, szego_sequence

logger = logging.getLogger(__name__)

Z = CoeffPoly.of([0.0 + 0j, 1.0 + 0j])
POLE_DISTANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ParaFamily:
    """P_N, Q_N, C_N, S_N of one parameter point, plus the Szegő pairs of degree 0..N−1."""

    params: VerblunskyParams
    p: CoeffPoly
    q: CoeffPoly
    c: CoeffPoly
    s: CoeffPoly
    szego: List[SzegoPair] = field(default_factory=list)

    @property
    def N(self) -> int:
        return self.params.N

    def F(self, z):
        """Carathéodory function, no pole check."""
        return -self.q(z) / self.p(z)

    def f(self, z):
        """Schur function, no pole check."""
        return -self.c(z) / (z * self.s(z))


def para_family(v: VerblunskyParams) -> ParaFamily:
    pairs = szego_sequence(v, v.N - 1)
    last = pairs[-1]
    beta_bar = conj(v.beta)
    p = last.phi.shift(1) - last.phi_star * beta_bar
    q = last.psi.shift(1) + last.psi_star * beta_bar
    return ParaFamily(v, p, q, (p + q) * 0.5, (p - q) * 0.5, pairs)


def _max_coeff(poly: CoeffPoly) -> float:
    if poly.is_zero():
        return 0.0
    return float(np.max(np.abs(np.asarray(poly.values(), dtype=complex))))


def strip_cs(v: VerblunskyParams) -> Tuple[ParaFamily, ParaFamily, float]:
    """Families for (α_0..α_{N−2}, β) and (α_1..α_{N−2}, β) with the stripping residual.

    The residual is the largest coefficient of

        C_N − (zC' − α_0 zS'),          S_N − (S' − ᾱ_0 C'),
        P_N − ½[(z − α_0z − ᾱ_0 + 1)P' + (z + α_0z − ᾱ_0 − 1)Q'],
        Q_N − ½[(z − α_0z + ᾱ_0 − 1)P' + (z + α_0z + ᾱ_0 + 1)Q'],

    where primes denote the stripped family.
    """
    if v.N < 2:
        raise ArgumentError("coefficient stripping needs N >= 2")
    full = para_family(v)
    stripped = para_family(v.strip(1))
    alpha = v.alpha[0]
    alpha_bar = conj(alpha)
    zc, zs = stripped.c.shift(1), stripped.s.shift(1)
    zp, zq = stripped.p.shift(1), stripped.q.shift(1)
    p_prime, q_prime = stripped.p, stripped.q

    c_rhs = zc - zs * alpha
    s_rhs = stripped.s - stripped.c * alpha_bar
    p_rhs = (zp - zp * alpha - p_prime * alpha_bar + p_prime
             + zq + zq * alpha - q_prime * alpha_bar - q_prime) * 0.5
    q_rhs = (zp - zp * alpha + p_prime * alpha_bar - p_prime
             + zq + zq * alpha + q_prime * alpha_bar + q_prime) * 0.5
    residual = max(_max_coeff(full.c - c_rhs), _max_coeff(full.s - s_rhs),
                   _max_coeff(full.p - p_rhs), _max_coeff(full.q - q_rhs))
    logger.debug("strip_cs: N=%d residual %.3e", v.N, residual)
    return full, stripped, residual


def _check_pole(poly: CoeffPoly, z: complex, what: str):
    for root in poly.roots():
        if abs(z - root) < POLE_DISTANCE * max(1.0, abs(root)):
            raise PoleError(f"{what} evaluated at a zero {root!r}", pole=root)


def caratheodory_F(v: VerblunskyParams, z: complex) -> complex:
    """F(z) = −Q_N(z)/P_N(z).

    Raises:
        PoleError: at zeros of P_N.
    """
    family = para_family(v.values())
    _check_pole(family.p, z, "Caratheodory function")
    return complex(family.F(z))


def schur_f(v: VerblunskyParams, z: complex) -> complex:
    """f(z) = −C_N(z)/(zS_N(z)).

    Raises:
        PoleError: at z = 0 or at zeros of S_N.
    """
    if abs(z) < POLE_DISTANCE:
        raise PoleError("Schur function evaluated at z = 0", pole=0.0)
    family = para_family(v.values())
    if family.s.degree >= 1:
        _check_pole(family.s, z, "Schur function")
    return complex(value_of(family.f(z)))
