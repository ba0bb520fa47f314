"""Invariant tensors on tube domains and numerical checks of their invariance.

Bounded realizations (Cartan / Harish-Chandra):

* I_{n,n}: n x n complex Z with I - Z^* Z > 0, acted on by SU(n, n)
* II_{2k}: skew-symmetric Z inside I_{2k,2k}, acted on by SO*(4k)
* III_n:  symmetric Z inside I_{n,n}, acted on by Sp(2n, R) (conjugated into SU(n, n))
* IV_d:   the Lie ball; checked on the tube side only

gamma = (A B; C D) acts by Z -> (AZ + B)(CZ + D)^-1.  Domain coordinates are
the same as the matching Jordan algebra's (herm:n, quat:k, sym:n), so the
Koecher norm polynomials evaluate directly on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .domains import DomainProduct, IrreducibleDomain, Kind, admissible
from .jordan import (
    JordanAlgebraSpec,
    JordanElement,
    inverse,
    inversion_jacobian,
    koecher_det,
    koecher_norm_polynomial,
    quadratic_rep,
    random_real_element,
    unit,
)
from .jordan.verify import trial_rng
from .polyalg import Polynomial

TAU_BOUNDARY = 1e-12
CONDITION_CAP = 1e6
FD_STEP = 1e-5


class BoundaryError(ArithmeticError):
    pass


def _spec(kind: IrreducibleDomain) -> JordanAlgebraSpec:
    return JordanAlgebraSpec.for_domain(kind)


def _matrix_kind(kind: IrreducibleDomain) -> None:
    if kind.kind not in (Kind.I, Kind.II, Kind.III):
        raise ValueError(f"{kind} has no matrix Mobius model here (types I, II, III only)")


def _size(kind: IrreducibleDomain) -> int:
    return kind.param


# -- membership ----------------------------------------------------------------


def _check_shape(kind: IrreducibleDomain, z: np.ndarray, tol: float = 1e-10) -> None:
    if kind.kind is Kind.IV:
        if z.shape != (kind.param,):
            raise ValueError(f"{kind} points are vectors of length {kind.param}")
        return
    if kind.kind is Kind.E:
        raise ValueError("no bounded realization implemented for E27")
    n = _size(kind)
    if z.shape != (n, n):
        raise ValueError(f"{kind} points are {n}x{n} matrices, got shape {z.shape}")
    if kind.kind is Kind.II and np.max(np.abs(z + z.T)) > tol:
        raise ValueError("type II points must be skew-symmetric")
    if kind.kind is Kind.III and np.max(np.abs(z - z.T)) > tol:
        raise ValueError("type III points must be symmetric")


def contains(kind: IrreducibleDomain, z, tolerance: float = 1e-12) -> bool:
    """Whether z lies in the bounded realization of ``kind`` (strictly, up to tolerance)."""
    z = np.asarray(z, dtype=complex)
    _check_shape(kind, z)
    if kind.kind is Kind.IV:
        zz = z @ z
        hz = np.vdot(z, z).real
        return bool(abs(zz) ** 2 + 1 - 2 * hz > tolerance and hz < 1 - tolerance)
    n = z.shape[0]
    gram = np.eye(n) - z.conj().T @ z
    return bool(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min() > tolerance)


def random_point(kind: IrreducibleDomain, rng: np.random.Generator, radius: float = 0.8) -> np.ndarray:
    """Random interior point with operator norm at most ``radius``."""
    if kind.kind is Kind.IV:
        v = rng.normal(size=kind.param) + 1j * rng.normal(size=kind.param)
        # the Lie ball contains the Euclidean ball of radius 1/sqrt(2)
        return v / np.linalg.norm(v) * radius / np.sqrt(2) * rng.uniform()
    _matrix_kind(kind)
    n = _size(kind)
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if kind.kind is Kind.II:
        z = z - z.T
    elif kind.kind is Kind.III:
        z = z + z.T
    return z / np.linalg.norm(z, 2) * radius * rng.uniform(0.2, 1.0)


# -- group elements and the Mobius action ---------------------------------------


@dataclass(frozen=True)
class GroupElement:
    kind: IrreducibleDomain
    matrix: np.ndarray

    @property
    def blocks(self):
        n = self.matrix.shape[0] // 2
        m = self.matrix
        return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]

    @classmethod
    def identity(cls, kind: IrreducibleDomain) -> "GroupElement":
        _matrix_kind(kind)
        return cls(kind, np.eye(2 * _size(kind), dtype=complex))

    def residual(self) -> float:
        """Deviation from the group's defining relations."""
        n = self.matrix.shape[0] // 2
        g = self.matrix
        j = np.diag([1.0] * n + [-1.0] * n)
        res = np.max(np.abs(g.conj().T @ j @ g - j))
        if self.kind.kind is Kind.I:
            res = max(res, abs(np.linalg.det(g) - 1))
        else:
            eps = 1.0 if self.kind.kind is Kind.II else -1.0
            omega = np.block([[np.zeros((n, n)), np.eye(n)], [eps * np.eye(n), np.zeros((n, n))]])
            res = max(res, np.max(np.abs(g.T @ omega @ g - omega)))
        return float(res)


def _lie_algebra_element(kind: IrreducibleDomain, rng: np.random.Generator) -> np.ndarray:
    n = _size(kind)
    gauss = lambda: rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = gauss()
    a = (a - a.conj().T) / 2
    b = gauss()
    if kind.kind is Kind.I:
        d = gauss()
        d = (d - d.conj().T) / 2
        x = np.block([[a, b], [b.conj().T, d]])
        return x - np.trace(x) / (2 * n) * np.eye(2 * n)
    if kind.kind is Kind.III:
        b = (b + b.T) / 2
    else:
        b = (b - b.T) / 2
    return np.block([[a, b], [b.conj().T, a.conj()]])


def random_group_element(kind: IrreducibleDomain, seed: int | np.random.Generator = 0, scale: float = 0.5) -> GroupElement:
    """exp of a random Lie algebra element with Frobenius norm ``scale``."""
    _matrix_kind(kind)
    if scale <= 0:
        raise ValueError("scale must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x = _lie_algebra_element(kind, rng)
    x = x / np.linalg.norm(x) * scale
    return GroupElement(kind, expm(x))


def mobius(gamma: GroupElement, z, tolerance: float = TAU_BOUNDARY) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    _check_shape(gamma.kind, z)
    a, b, c, d = gamma.blocks
    den = c @ z + d
    if abs(np.linalg.det(den)) < tolerance:
        raise BoundaryError("CZ + D is singular")
    out = (a @ z + b) @ np.linalg.inv(den)
    if gamma.kind.kind is Kind.II:
        out = (out - out.T) / 2
    elif gamma.kind.kind is Kind.III:
        out = (out + out.T) / 2
    return out


def mobius_raw(gamma: GroupElement, z) -> np.ndarray:
    """Mobius action without re-symmetrization (for residual checks)."""
    a, b, c, d = gamma.blocks
    return (a @ z + b) @ np.linalg.inv(c @ z + d)


# -- Cayley transform -----------------------------------------------------------


def cayley(z) -> np.ndarray:
    """Bounded model -> Siegel upper half space: W = i (I + Z)(I - Z)^-1."""
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValueError("Cayley transform needs a square matrix")
    eye = np.eye(z.shape[0])
    if abs(np.linalg.det(eye - z)) < TAU_BOUNDARY:
        raise BoundaryError("I - Z is singular")
    return 1j * (eye + z) @ np.linalg.inv(eye - z)


def inverse_cayley(w) -> np.ndarray:
    """Z = (W - iI)(W + iI)^-1."""
    w = np.asarray(w, dtype=complex)
    eye = np.eye(w.shape[0])
    if abs(np.linalg.det(w + 1j * eye)) < TAU_BOUNDARY:
        raise BoundaryError("W + iI is singular")
    return (w - 1j * eye) @ np.linalg.inv(w + 1j * eye)


def imaginary_part_positive(w, tolerance: float = 1e-12) -> bool:
    w = np.asarray(w, dtype=complex)
    im = (w - w.conj().T) / 2j
    return bool(np.linalg.eigvalsh(im).min() > tolerance)


# -- invariant tensors ----------------------------------------------------------


@lru_cache(maxsize=None)
def norm_polynomial(dom: IrreducibleDomain) -> Polynomial:
    return koecher_norm_polynomial(_spec(dom))


class NumericPolynomial:
    """Fast complex evaluation of an exact Polynomial."""

    def __init__(self, p: Polynomial):
        items = list(p.terms.items())
        self.exps = np.array([e for e, _ in items], dtype=int).reshape(len(items), p.nvars)
        self.coeffs = np.array([float(c) for _, c in items])

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        return complex(self.coeffs @ np.prod(z[None, :] ** self.exps, axis=1))


@dataclass(frozen=True)
class InvariantTensor:
    """psi = N^a * (dz^top)^(-m) on one irreducible factor."""

    kind: IrreducibleDomain
    norm: Polynomial
    exponent: int
    twist: int

    def __post_init__(self):
        if self.exponent * self.kind.rank != self.twist * self.kind.dim:
            raise ValueError(f"a*r = m*d fails: {self.exponent}*{self.kind.rank} != {self.twist}*{self.kind.dim}")
        if self.norm.nvars != self.kind.dim:
            raise ValueError("norm polynomial lives in the wrong number of variables")

    @classmethod
    def for_domain(cls, kind: IrreducibleDomain, m: int | None = None) -> "InvariantTensor":
        from .domains import minimal_m

        if m is None:
            m = minimal_m([(kind.rank, kind.dim)])[0]
        if (m * kind.dim) % kind.rank:
            raise ValueError(f"m={m} gives a non-integral exponent on {kind}")
        return cls(kind, norm_polynomial(kind), m * kind.dim // kind.rank, m)


def build_psi(product: DomainProduct, m: int) -> Polynomial:
    """prod_j N_j^(a_j) on consecutive disjoint variable blocks, a_j = m n_j / r_j."""
    if not admissible(product, m):
        raise ValueError(f"m={m} gives non-integral norm exponents for {product}")
    total = product.dim
    out = Polynomial.constant(total, 1)
    offset = 0
    for f in product.factors:
        n = norm_polynomial(f)
        a = m * f.dim // f.rank
        positions = list(range(offset + 1, offset + f.dim + 1))
        out = out * n.embed(total, positions) ** a
        offset += f.dim
    return out


# -- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    check: str
    kind: str
    trials: int
    step: float
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "kind": self.kind,
            "trials": self.trials,
            "step": self.step,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }


def rel(a: complex, b: complex) -> float:
    return float(abs(a - b) / abs(b))


def volume_exponent(kind: IrreducibleDomain) -> int:
    """e with Jacobian determinant of gamma = det(CZ + D)^(-e)."""
    if kind.kind is Kind.I:
        return 2 * kind.param
    if kind.kind is Kind.II:
        return kind.param - 1
    if kind.kind is Kind.III:
        return kind.param + 1
    raise ValueError(f"no matrix volume exponent for {kind}")


def mobius_jacobian(gamma: GroupElement, z: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Central-difference complex Jacobian of gamma in domain coordinates."""
    spec = _spec(gamma.kind)
    model = spec.model
    x = model.from_matrix(z)
    cols = []
    for i in range(len(x)):
        dx = np.zeros(len(x), dtype=complex)
        dx[i] = step
        plus = model.from_matrix(mobius_raw(gamma, model.to_matrix(x + dx)))
        minus = model.from_matrix(mobius_raw(gamma, model.to_matrix(x - dx)))
        cols.append((plus - minus) / (2 * step))
    return np.stack(cols, axis=1)


def _sample_pair(kind, rng, scale=0.5):
    for _ in range(1000):
        gamma = random_group_element(kind, rng, scale)
        z = random_point(kind, rng)
        a, b, c, d = gamma.blocks
        if np.linalg.cond(c @ z + d) < CONDITION_CAP:
            return gamma, z
    raise RuntimeError("could not draw a well-conditioned (gamma, Z) pair")


def _random_tangent(spec: JordanAlgebraSpec, rng) -> np.ndarray:
    return rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)


def verify_cocycle(
    kind: IrreducibleDomain,
    trials: int = 50,
    seed: int = 0,
    tolerance: float = 1e-5,
    step: float = FD_STEP,
    identity: bool = False,
) -> list[CheckReport]:
    """Jacobian determinant = det(CZ+D)^(-e) and det(dgamma W) = det(CZ+D)^(-2) det(W)."""
    _matrix_kind(kind)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    spec = _spec(kind)
    model = spec.model
    e = volume_exponent(kind)
    worst_jac = worst_norm = 0.0
    for t in range(trials):
        rng = trial_rng(seed, t)
        if identity:
            gamma, z = GroupElement.identity(kind), random_point(kind, rng)
        else:
            gamma, z = _sample_pair(kind, rng)
        a, b, c, d = gamma.blocks
        m = c @ z + d
        dm = np.linalg.det(m)
        jac = mobius_jacobian(gamma, z, step)
        worst_jac = max(worst_jac, rel(np.linalg.det(jac), dm ** (-e)))
        w = _random_tangent(spec, rng)
        lhs = np.linalg.det(model.to_matrix(jac @ w))
        rhs = dm ** (-2) * np.linalg.det(model.to_matrix(w))
        worst_norm = max(worst_norm, rel(lhs, rhs))
    name = str(kind)
    return [
        CheckReport("jacobian_determinant", name, trials, step, worst_jac, tolerance),
        CheckReport("norm_cocycle", name, trials, step, worst_norm, tolerance),
    ]


def verify_tensor_invariance(
    tensor: InvariantTensor,
    trials: int = 50,
    seed: int = 0,
    tolerance: float = 1e-5,
    step: float = FD_STEP,
    identity: bool = False,
) -> CheckReport:
    """gamma^* psi = psi as N(dgamma W)^a = JacDet^m * N(W)^a.

    Types IV and E27 are checked on the tube side against j(z) = -z^-1.
    """
    kind = tensor.kind
    spec = _spec(kind)
    norm = NumericPolynomial(tensor.norm)
    a, m = tensor.exponent, tensor.twist
    worst = 0.0
    if kind.kind in (Kind.IV, Kind.E):
        coord = _norm_coordinates(spec)
        for t in range(trials):
            rng = trial_rng(seed, t)
            z = unit(spec) * 1j if identity else tube_point(spec, rng)
            jac = inversion_jacobian(z, step)
            w = _random_tangent(spec, rng)
            lhs = norm(coord @ (jac @ w)) ** a
            rhs = np.linalg.det(jac) ** m * norm(coord @ w) ** a
            worst = max(worst, rel(lhs, rhs))
        return CheckReport("tube_inversion_invariance", str(kind), trials, step, worst, tolerance)
    for t in range(trials):
        rng = trial_rng(seed, t)
        if identity:
            gamma, z = GroupElement.identity(kind), random_point(kind, rng)
        else:
            gamma, z = _sample_pair(kind, rng)
        jac = mobius_jacobian(gamma, z, step)
        w = _random_tangent(spec, rng)
        lhs = norm(jac @ w) ** a
        rhs = np.linalg.det(jac) ** m * norm(w) ** a
        worst = max(worst, rel(lhs, rhs))
    return CheckReport("tensor_invariance", str(kind), trials, step, worst, tolerance)


def _norm_coordinates(spec: JordanAlgebraSpec) -> np.ndarray:
    """Linear map from model coordinates to the norm polynomial's coordinates."""
    from .jordan import spin_coordinate_change

    if spec.family.value == "spin":
        return spin_coordinate_change(spec.dim)
    return np.eye(spec.dim, dtype=complex)


def tube_point(spec: JordanAlgebraSpec, rng: np.random.Generator) -> JordanElement:
    """x + i c with x in V and c = P(g)e in the symmetric cone."""
    x = random_real_element(spec, rng)
    g = unit(spec) + random_real_element(spec, rng, scale=0.3)
    c = quadratic_rep(g)(unit(spec))
    return JordanElement(spec, x.coords + 1j * c.coords)


TUBE_LINKS = (
    "Dj(z) = P(z)^-1",
    "det(P(z)^-1 W) = det(z)^-2 det(W)",
    "Det P(z)^-1 = det(z)^(-2n/r)",
    "j^* psi = psi",
)


def verify_tube_inversion(
    spec: JordanAlgebraSpec,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-6,
    step: float = FD_STEP,
    fixed_point: bool = False,
) -> list[CheckReport]:
    """Each link of the chain showing j(z) = -z^-1 preserves det(dz)^(n/r) / K.

    The last link compares squares, det(Dj W)^(2n/r) / Det(Dj)^2 against
    det(W)^(2n/r), because n/r need not be an integer.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    power = 2 * spec.dim // spec.rank
    worst = dict.fromkeys(TUBE_LINKS, 0.0)
    for t in range(trials):
        rng = trial_rng(seed, t)
        z = unit(spec) * 1j if fixed_point else tube_point(spec, rng)
        pz_inv = np.linalg.inv(quadratic_rep(z).matrix)
        dz = koecher_det(z)
        jac = inversion_jacobian(z, step)
        w = JordanElement(spec, _random_tangent(spec, rng))
        dw = koecher_det(w)
        jw = JordanElement(spec, jac @ w.coords)
        worst[TUBE_LINKS[0]] = max(
            worst[TUBE_LINKS[0]], float(np.max(np.abs(jac - pz_inv)) / max(1.0, np.max(np.abs(pz_inv))))
        )
        worst[TUBE_LINKS[1]] = max(
            worst[TUBE_LINKS[1]], rel(koecher_det(JordanElement(spec, pz_inv @ w.coords)), dz**-2 * dw)
        )
        worst[TUBE_LINKS[2]] = max(worst[TUBE_LINKS[2]], rel(np.linalg.det(pz_inv), dz ** (-power)))
        worst[TUBE_LINKS[3]] = max(
            worst[TUBE_LINKS[3]], rel(koecher_det(jw) ** power / np.linalg.det(jac) ** 2, dw**power)
        )
    return [CheckReport(name, str(spec), trials, step, worst[name], tolerance) for name in TUBE_LINKS]
