"""Octonions by Cayley-Dickson doubling, over any commutative scalar ring.

Convention: (a, b)(c, d) = (ac - d* b, da + b c*).  Elements are length-8
sequences of scalars; ``conj``, ``norm`` and ``real`` are the bilinear
(complex-linear) extensions, as needed for the complexified Albert algebra.
"""

from __future__ import annotations

import numpy as np


def _cd_mult(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = len(x)
    if n == 1:
        return x * y
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    return np.concatenate([_cd_mult(a, c) - _cd_mult(_cd_conj(d), b), _cd_mult(d, a) + _cd_mult(b, _cd_conj(c))])


def _cd_conj(x: np.ndarray) -> np.ndarray:
    out = -x.copy()
    out[0] = x[0]
    return out


def _structure_constants() -> np.ndarray:
    table = np.zeros((8, 8, 8))
    eye = np.eye(8)
    for i in range(8):
        for j in range(8):
            table[i, j] = _cd_mult(eye[i], eye[j])
    return table


STRUCTURE = _structure_constants()
# e_i e_j = SIGN[i, j] * e_{INDEX[i, j]}
INDEX = np.argmax(np.abs(STRUCTURE), axis=2)
SIGN = np.take_along_axis(STRUCTURE, INDEX[..., None], axis=2)[..., 0].astype(int)


def mult(x, y):
    """Product of two octonions given as numpy arrays (complex allowed)."""
    return np.einsum("i,j,ijk->k", x, y, STRUCTURE)


def conj(x):
    x = np.asarray(x)
    out = -x
    out[0] = x[0]
    return out


def norm(x):
    return np.sum(np.asarray(x) * np.asarray(x))


def mult_generic(x, y):
    """Product for arbitrary ring elements (e.g. Polynomials) in plain lists."""
    out = [None] * 8
    for i in range(8):
        if _is_zero(x[i]):
            continue
        for j in range(8):
            if _is_zero(y[j]):
                continue
            k = INDEX[i, j]
            term = x[i] * y[j]
            term = term if SIGN[i, j] > 0 else -term
            out[k] = term if out[k] is None else out[k] + term
    zero = x[0] - x[0]
    return [zero if v is None else v for v in out]


def conj_generic(x):
    return [x[0]] + [-v for v in x[1:]]


def _is_zero(v) -> bool:
    try:
        return not v
    except ValueError:
        return False
