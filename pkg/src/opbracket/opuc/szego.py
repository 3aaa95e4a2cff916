from dataclasses import dataclass
from typing import List

from ..core import CoeffPoly, VerblunskyParams, conj
from ..core.errors import ArgumentError

ONE = CoeffPoly.of([1.0 + 0j])


@dataclass(frozen=True, eq=False)
class SzegoPair:
    """Φ_n, Φ_n*, Ψ_n, Ψ_n* of one degree n."""

    n: int
    phi: CoeffPoly
    phi_star: CoeffPoly
    psi: CoeffPoly
    psi_star: CoeffPoly


def _step(pair: SzegoPair, alpha) -> SzegoPair:
    # Φ_{n+1} = zΦ_n − ᾱΦ*_n,  Φ*_{n+1} = Φ*_n − αzΦ_n; Ψ uses −α in place of α
    z_phi = pair.phi.shift(1)
    z_psi = pair.psi.shift(1)
    alpha_bar = conj(alpha)
    return SzegoPair(
        n=pair.n + 1,
        phi=z_phi - pair.phi_star * alpha_bar,
        phi_star=pair.phi_star - z_phi * alpha,
        psi=z_psi + pair.psi_star * alpha_bar,
        psi_star=pair.psi_star + z_psi * alpha,
    )


def szego_sequence(v: VerblunskyParams, n: int) -> List[SzegoPair]:
    """Pairs of degree 0..n."""
    if not 0 <= n <= v.N - 1:
        raise ArgumentError(f"degree {n} outside 0..{v.N - 1}")
    pairs = [SzegoPair(0, ONE, ONE, ONE, ONE)]
    for j in range(n):
        pairs.append(_step(pairs[-1], v.alpha[j]))
    return pairs


def szego_polys(v: VerblunskyParams, n: int) -> SzegoPair:
    """Szegő recursion up to degree n (0 <= n <= N−1), generic over dual coefficients."""
    return szego_sequence(v, n)[n]
