"""The five simple Euclidean Jordan algebras, complexified.

Coordinates of an element of V_C in each family:

* ``sym:n``    complex symmetric n x n, entries z_ij for i <= j (row-major)
* ``herm:n``   all of M_n(C), entries row-major (complexified Hermitian matrices)
* ``quat:k``   skew-symmetric 2k x 2k, entries z_ij for i < j; the Jordan
               structure is transported from J-symmetric matrices A by X = A J
               with J = diag([[0, 1], [-1, 0]], ...), so the norm is Pf(X)
* ``spin:d``   (s, u_1, ..., u_{d-1}) with (s,u).(t,v) = (st + <u,v>, sv + tu)
* ``albert``   (a, b, c, x, y, z) for [[a, z, y*], [z*, b, x], [y, x*, c]],
               x, y, z octonions with 8 coordinates each

The norm is normalized so that det(e) = 1 in every family.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..domains import IrreducibleDomain, Kind
from ..polyalg import Polynomial
from . import octonion

TAU_INV = 1e-12


class Family(enum.Enum):
    SYM = "sym"
    HERM = "herm"
    QUAT = "quat"
    SPIN = "spin"
    ALBERT = "albert"


class SpecMismatchError(ValueError):
    pass


class SingularElementError(ArithmeticError):
    pass


@dataclass(frozen=True)
class JordanAlgebraSpec:
    family: Family
    param: int = 0

    def __post_init__(self):
        if self.family is Family.ALBERT:
            object.__setattr__(self, "param", 3)
        elif self.family is Family.SPIN and self.param < 3:
            raise ValueError("spin factors need d >= 3")
        elif self.param < 1:
            raise ValueError(f"{self.family.value} needs a positive parameter")

    @classmethod
    def parse(cls, text: str) -> "JordanAlgebraSpec":
        text = text.strip()
        if text == "albert":
            return cls(Family.ALBERT)
        try:
            fam, param = text.split(":")
            return cls(Family(fam), int(param))
        except ValueError as exc:
            raise ValueError(f"bad Jordan algebra spec {text!r}; expected e.g. sym:3, herm:2, quat:2, spin:4, albert") from exc

    def __str__(self) -> str:
        return "albert" if self.family is Family.ALBERT else f"{self.family.value}:{self.param}"

    @property
    def rank(self) -> int:
        return 2 if self.family is Family.SPIN else self.param

    @property
    def dim(self) -> int:
        """Complex dimension of V_C (= real dimension of V)."""
        n = self.param
        return {
            Family.SYM: n * (n + 1) // 2,
            Family.HERM: n * n,
            Family.QUAT: n * (2 * n - 1),
            Family.SPIN: n,
            Family.ALBERT: 27,
        }[self.family]

    @property
    def real_dim(self) -> int:
        return self.dim

    @property
    def domain(self) -> IrreducibleDomain:
        n = self.param
        return {
            Family.SYM: lambda: IrreducibleDomain(Kind.III, n),
            Family.HERM: lambda: IrreducibleDomain(Kind.I, n),
            Family.QUAT: lambda: IrreducibleDomain(Kind.II, 2 * n),
            Family.SPIN: lambda: IrreducibleDomain(Kind.IV, n),
            Family.ALBERT: lambda: IrreducibleDomain(Kind.E),
        }[self.family]()

    @classmethod
    def for_domain(cls, dom: IrreducibleDomain) -> "JordanAlgebraSpec":
        if dom.kind is Kind.I:
            return cls(Family.HERM, dom.param)
        if dom.kind is Kind.II:
            return cls(Family.QUAT, dom.param // 2)
        if dom.kind is Kind.III:
            return cls(Family.SYM, dom.param)
        if dom.kind is Kind.IV:
            return cls(Family.SPIN, dom.param)
        return cls(Family.ALBERT)

    @cached_property
    def model(self) -> "_Model":
        return _MODELS[self.family](self.param)


class JordanElement:
    """An element of V_C in the coordinates described in the module docstring."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec: JordanAlgebraSpec, coords):
        coords = np.asarray(coords, dtype=complex).reshape(-1)
        if coords.shape != (spec.dim,):
            raise ValueError(f"{spec} needs {spec.dim} coordinates, got {coords.shape[0]}")
        self.spec = spec
        self.coords = coords

    @classmethod
    def from_matrix(cls, spec: JordanAlgebraSpec, mat) -> "JordanElement":
        return cls(spec, spec.model.from_matrix(np.asarray(mat, dtype=complex)))

    def matrix(self) -> np.ndarray:
        return self.spec.model.to_matrix(self.coords)

    def _same(self, other: "JordanElement") -> None:
        if self.spec != other.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        self._same(other)
        return JordanElement(self.spec, self.coords + other.coords)

    def __sub__(self, other):
        self._same(other)
        return JordanElement(self.spec, self.coords - other.coords)

    def __mul__(self, c):
        return JordanElement(self.spec, self.coords * c)

    __rmul__ = __mul__

    def __neg__(self):
        return JordanElement(self.spec, -self.coords)

    def __repr__(self):
        return f"JordanElement({self.spec}, {np.array2string(self.coords, precision=4)})"


def unit(spec: JordanAlgebraSpec) -> JordanElement:
    return JordanElement(spec, spec.model.unit())


def jordan_product(x: JordanElement, y: JordanElement) -> JordanElement:
    x._same(y)
    return JordanElement(x.spec, x.spec.model.product(x.coords, y.coords))


def lmul_operator(x: JordanElement) -> np.ndarray:
    """Matrix of L(x): y -> x o y in the coordinate basis."""
    model = x.spec.model
    basis = np.eye(x.spec.dim, dtype=complex)
    return np.stack([model.product(x.coords, b) for b in basis], axis=1)


def koecher_det(x: JordanElement) -> complex:
    return complex(x.spec.model.det(x.coords))


def inverse(x: JordanElement, tol: float = TAU_INV) -> JordanElement:
    d = koecher_det(x)
    if abs(d) < tol:
        raise SingularElementError(f"|det| = {abs(d):.3g} below {tol:g}")
    return JordanElement(x.spec, x.spec.model.inverse(x.coords, d))


@dataclass(frozen=True)
class QuadraticRep:
    spec: JordanAlgebraSpec
    matrix: np.ndarray

    def __call__(self, y: JordanElement) -> JordanElement:
        if y.spec != self.spec:
            raise SpecMismatchError(f"{self.spec} vs {y.spec}")
        return JordanElement(self.spec, self.matrix @ y.coords)


def quadratic_rep(x: JordanElement) -> QuadraticRep:
    """P(x) = 2 L(x)^2 - L(x^2)."""
    lx = lmul_operator(x)
    lx2 = lmul_operator(jordan_product(x, x))
    return QuadraticRep(x.spec, 2 * lx @ lx - lx2)


def koecher_norm_polynomial(spec: JordanAlgebraSpec) -> Polynomial:
    """The norm as an exact polynomial in the spec's coordinates x1..x_dim.

    Spin factors use the diagonal convention x1 = s, x_{j+1} = -i u_j, under
    which s^2 - <u,u> becomes x1^2 + ... + x_d^2.
    """
    return spec.model.norm_polynomial()


def spin_coordinate_change(d: int) -> np.ndarray:
    """Matrix C with (diagonal coordinates) = C @ (s, u) for spin:d."""
    c = np.eye(d, dtype=complex)
    c[1:, 1:] *= -1j
    return c


def random_element(spec: JordanAlgebraSpec, rng: np.random.Generator, scale: float = 0.5) -> JordanElement:
    """e + scale * (complex Gaussian coordinates)."""
    z = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    return JordanElement(spec, spec.model.unit() + scale * z / np.sqrt(2))


def random_real_element(spec: JordanAlgebraSpec, rng: np.random.Generator, scale: float = 1.0) -> JordanElement:
    """Random element of the real form V (not of V_C)."""
    return JordanElement(spec, spec.model.real_sample(rng) * scale)


# -- models ----------------------------------------------------------------


def _poly_det(mat: list[list[Polynomial]]) -> Polynomial:
    n = len(mat)
    nv = mat[0][0].nvars
    total = Polynomial.zero(nv)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Polynomial.constant(nv, sign)
        for i in range(n):
            term = term * mat[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def poly_pfaffian(mat: list[list[Polynomial]]) -> Polynomial:
    """Pfaffian by expansion along the first row."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    nv = mat[0][0].nvars
    if n % 2:
        return Polynomial.zero(nv)
    if n == 2:
        return mat[0][1]
    total = Polynomial.zero(nv)
    for j in range(1, n):
        if mat[0][j].is_zero():
            continue
        keep = [k for k in range(1, n) if k != j]
        minor = [[mat[a][b] for b in keep] for a in keep]
        sign = 1 if j % 2 == 1 else -1
        total = total + mat[0][j] * poly_pfaffian(minor) * sign
    return total


def pfaffian(a: np.ndarray) -> complex:
    """Numeric Pfaffian by skew-symmetric Gaussian elimination with pivoting."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if n % 2:
        return 0j
    pf = 1 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(a[k + 1:, k]).argmax())
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0:
            return 0j
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            a[k + 2:, k + 2:] += np.outer(tau, a[k + 2:, k + 1])
            a[k + 2:, k + 2:] -= np.outer(a[k + 2:, k + 1], tau)
    return pf


class _Model:
    def __init__(self, param: int):
        self.param = param

    def unit(self) -> np.ndarray:
        return self.from_matrix(self.unit_matrix())

    def _vars(self) -> list[Polynomial]:
        n = self.dim
        return [Polynomial.var(n, i + 1) for i in range(n)]


class _MatrixModel(_Model):
    """Families realised inside M_n(C) with the symmetrized product."""

    def product(self, x, y):
        a, b = self.to_matrix(x), self.to_matrix(y)
        return self.from_matrix((a @ b + b @ a) / 2)

    def unit_matrix(self):
        return np.eye(self.size, dtype=complex)

    def det(self, x):
        return np.linalg.det(self.to_matrix(x))

    def inverse(self, x, d):
        return self.from_matrix(np.linalg.inv(self.to_matrix(x)))

    def norm_polynomial(self) -> Polynomial:
        v = self._vars()
        zero = Polynomial.zero(self.dim)
        mat = [[zero] * self.size for _ in range(self.size)]
        for idx, (i, j) in enumerate(self.positions):
            mat[i][j] = v[idx]
            mat[j][i] = v[idx]
        return _poly_det(mat)


class _Sym(_MatrixModel):
    def __init__(self, n):
        super().__init__(n)
        self.size = n
        self.positions = [(i, j) for i in range(n) for j in range(i, n)]
        self.dim = len(self.positions)

    def to_matrix(self, x):
        m = np.zeros((self.size, self.size), dtype=complex)
        iu = np.triu_indices(self.size)
        m[iu] = x
        return m + np.triu(m, 1).T

    def from_matrix(self, m):
        return m[np.triu_indices(self.size)].copy()

    def real_sample(self, rng):
        a = rng.normal(size=(self.size, self.size))
        return self.from_matrix((a + a.T).astype(complex) / 2)


class _Herm(_MatrixModel):
    def __init__(self, n):
        super().__init__(n)
        self.size = n
        self.dim = n * n

    def to_matrix(self, x):
        return np.asarray(x, dtype=complex).reshape(self.size, self.size).copy()

    def from_matrix(self, m):
        return m.reshape(-1).copy()

    def real_sample(self, rng):
        a = rng.normal(size=(self.size, self.size)) + 1j * rng.normal(size=(self.size, self.size))
        return self.from_matrix((a + a.conj().T) / 2)

    def norm_polynomial(self) -> Polynomial:
        v = self._vars()
        n = self.size
        return _poly_det([[v[i * n + j] for j in range(n)] for i in range(n)])


class _Quat(_Model):
    def __init__(self, k):
        super().__init__(k)
        self.size = 2 * k
        self.dim = k * (2 * k - 1)
        j = np.zeros((self.size, self.size))
        for b in range(k):
            j[2 * b, 2 * b + 1] = 1
            j[2 * b + 1, 2 * b] = -1
        self.J = j
        self.Jinv = j.T

    def to_matrix(self, x):
        m = np.zeros((self.size, self.size), dtype=complex)
        iu = np.triu_indices(self.size, 1)
        m[iu] = x
        return m - m.T

    def from_matrix(self, m):
        return m[np.triu_indices(self.size, 1)].copy()

    def unit_matrix(self):
        return self.J.astype(complex)

    def product(self, x, y):
        a, b = self.to_matrix(x), self.to_matrix(y)
        return self.from_matrix((a @ self.Jinv @ b + b @ self.Jinv @ a) / 2)

    def det(self, x):
        return pfaffian(self.to_matrix(x))

    def inverse(self, x, d):
        return self.from_matrix(self.J @ np.linalg.inv(self.to_matrix(x)) @ self.J)

    def real_sample(self, rng):
        n = self.size
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = (a + a.conj().T) / 2
        a = (a + self.J @ a.T @ self.Jinv) / 2
        return self.from_matrix(a @ self.J)

    def norm_polynomial(self) -> Polynomial:
        v = self._vars()
        zero = Polynomial.zero(self.dim)
        mat = [[zero] * self.size for _ in range(self.size)]
        for idx, (i, j) in enumerate(zip(*np.triu_indices(self.size, 1))):
            mat[i][j] = v[idx]
            mat[j][i] = -v[idx]
        return poly_pfaffian(mat)


class _Spin(_Model):
    def __init__(self, d):
        super().__init__(d)
        self.dim = d

    def to_matrix(self, x):
        return np.asarray(x, dtype=complex).copy()

    from_matrix = to_matrix

    def unit(self):
        e = np.zeros(self.dim, dtype=complex)
        e[0] = 1
        return e

    def product(self, x, y):
        s, u = x[0], x[1:]
        t, v = y[0], y[1:]
        return np.concatenate([[s * t + u @ v], s * v + t * u])

    def det(self, x):
        return x[0] ** 2 - x[1:] @ x[1:]

    def inverse(self, x, d):
        return np.concatenate([[x[0]], -x[1:]]) / d

    def real_sample(self, rng):
        return rng.normal(size=self.dim).astype(complex)

    def norm_polynomial(self) -> Polynomial:
        return sum((v * v for v in self._vars()), Polynomial.zero(self.dim))


class _Albert(_Model):
    dim = 27

    def __init__(self, param=3):
        super().__init__(3)

    @staticmethod
    def _split(x):
        return x[0], x[1], x[2], x[3:11], x[11:19], x[19:27]

    def _matrix(self, x):
        a, b, c, ox, oy, oz = self._split(np.asarray(x, dtype=complex))
        e0 = np.eye(8)[0]
        conj = octonion.conj
        return [
            [a * e0, oz, conj(oy)],
            [conj(oz), b * e0, ox],
            [oy, conj(ox), c * e0],
        ]

    def to_matrix(self, x):
        return np.array(self._matrix(x))

    def from_matrix(self, m):
        m = np.asarray(m, dtype=complex)
        return np.concatenate([[m[0, 0, 0], m[1, 1, 0], m[2, 2, 0]], m[1, 2], m[2, 0], m[0, 1]])

    def unit(self):
        e = np.zeros(27, dtype=complex)
        e[:3] = 1
        return e

    def product(self, x, y):
        mx, my = self._matrix(x), self._matrix(y)
        mult = octonion.mult
        s = [[sum(mult(mx[i][k], my[k][j]) + mult(my[i][k], mx[k][j]) for k in range(3)) / 2 for j in range(3)] for i in range(3)]
        return np.concatenate([[s[0][0][0], s[1][1][0], s[2][2][0]], s[1][2], s[2][0], s[0][1]])

    @staticmethod
    def _trace_form(x):
        a, b, c, ox, oy, oz = _Albert._split(x)
        n = octonion.norm
        return a + b + c, a * b + b * c + c * a - n(ox) - n(oy) - n(oz)

    def det(self, x):
        a, b, c, ox, oy, oz = self._split(np.asarray(x, dtype=complex))
        n = octonion.norm
        triple = octonion.mult(octonion.mult(ox, oy), oz)[0]
        return a * b * c - a * n(ox) - b * n(oy) - c * n(oz) + 2 * triple

    def inverse(self, x, d):
        tr, quad = self._trace_form(x)
        x2 = self.product(x, x)
        return (x2 - tr * x + quad * self.unit()) / d

    def real_sample(self, rng):
        return rng.normal(size=27).astype(complex)

    def norm_polynomial(self) -> Polynomial:
        v = self._vars()
        a, b, c = v[0], v[1], v[2]
        ox, oy, oz = v[3:11], v[11:19], v[19:27]
        n = lambda o: sum((t * t for t in o), Polynomial.zero(27))
        xy = octonion.mult_generic(ox, oy)
        triple = octonion.mult_generic(xy, oz)[0]
        return a * b * c - a * n(ox) - b * n(oy) - c * n(oz) + triple * 2


_MODELS = {
    Family.SYM: _Sym,
    Family.HERM: _Herm,
    Family.QUAT: _Quat,
    Family.SPIN: _Spin,
    Family.ALBERT: _Albert,
}
