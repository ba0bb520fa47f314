"""Randomized numerical checks of the quadratic-representation identities."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .algebra import (
    JordanAlgebraSpec,
    JordanElement,
    inverse,
    koecher_det,
    quadratic_rep,
    random_element,
)

IDENTITIES = (
    "P(x)x^-1 = x",
    "P(x)^-1 = P(x^-1)",
    "Dj(x) = P(x)^-1",
    "Det P(x) = det(x)^(2n/r)",
    "det(P(y)x) = det(y)^2 det(x)",
)
FD_IDENTITY = IDENTITIES[2]


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    trials: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        return out


def deviation(lhs, rhs) -> float:
    """Max abs difference, scaled by max(1, |rhs|) so large norms compare relatively."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(rhs)))))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def nonsingular_sample(spec: JordanAlgebraSpec, rng: np.random.Generator, scale: float = 0.5, floor: float = 1e-1) -> JordanElement:
    for _ in range(1000):
        x = random_element(spec, rng, scale)
        if abs(koecher_det(x)) > floor:
            return x
    raise RuntimeError("could not draw a well-conditioned sample")


def inversion_jacobian(x: JordanElement, step: float) -> np.ndarray:
    """Central-difference Jacobian of j(z) = -z^-1 (holomorphic, so real steps suffice)."""
    n = x.spec.dim
    cols = []
    for i in range(n):
        dz = np.zeros(n, dtype=complex)
        dz[i] = step
        plus = inverse(JordanElement(x.spec, x.coords + dz)).coords
        minus = inverse(JordanElement(x.spec, x.coords - dz)).coords
        cols.append(-(plus - minus) / (2 * step))
    return np.stack(cols, axis=1)


def verify_jordan_identities(
    spec: JordanAlgebraSpec,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-8,
    step: float = 1e-5,
    fd_tolerance: float = 1e-5,
) -> list[IdentityReport]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    power = 2 * spec.dim // spec.rank
    worst = dict.fromkeys(IDENTITIES, 0.0)
    for t in range(trials):
        rng = trial_rng(seed, t)
        x = nonsingular_sample(spec, rng)
        y = nonsingular_sample(spec, rng)
        xinv = inverse(x)
        px = quadratic_rep(x)
        px_inv = np.linalg.inv(px.matrix)
        dx = koecher_det(x)
        checks = {
            IDENTITIES[0]: (px(xinv).coords, x.coords),
            IDENTITIES[1]: (px_inv, quadratic_rep(xinv).matrix),
            IDENTITIES[2]: (inversion_jacobian(x, step), px_inv),
            IDENTITIES[3]: (np.linalg.det(px.matrix), dx**power),
            IDENTITIES[4]: (koecher_det(quadratic_rep(y)(x)), koecher_det(y) ** 2 * dx),
        }
        for name, (lhs, rhs) in checks.items():
            worst[name] = max(worst[name], deviation(lhs, rhs))
    return [
        IdentityReport(name, trials, worst[name], fd_tolerance if name == FD_IDENTITY else tolerance)
        for name in IDENTITIES
    ]
