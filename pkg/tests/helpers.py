from opbracket.core import JacobiParams, VerblunskyParams
from opbracket.run import instance_rng, random_jacobi, random_verblunsky


def seeded_jacobi(N: int, index: int = 0, seed: int = 7) -> JacobiParams:
    return random_jacobi(instance_rng(seed, N, index), N)


def seeded_verblunsky(N: int, index: int = 0, seed: int = 7) -> VerblunskyParams:
    return random_verblunsky(instance_rng(seed, N, index), N)


def asserted_failures(reports):
    return [(r.identity_id, r.size, r.max_residual, r.tolerance) for r in reports if r.passed is False]
