"""Pure numpy versions of the amplitude kernels.

Same in-place contract as the compiled module: ``amps`` is a contiguous
complex128 array and index bit ``q`` is qubit ``q``.
"""

import numpy as np

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _pairs(amps, q):
    # axis 1 of the view is the bit of qubit q
    return amps.reshape(-1, 2, 1 << q)


def apply_h(amps, q):
    v = _pairs(amps, q)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = (a + b) * _INV_SQRT2
    v[:, 1, :] = (a - b) * _INV_SQRT2


def apply_x(amps, q):
    v = _pairs(amps, q)
    v[:, [0, 1], :] = v[:, [1, 0], :]


def apply_z(amps, q):
    _pairs(amps, q)[:, 1, :] *= -1


def apply_cnot(amps, control, target):
    lo, hi = sorted((control, target))
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    if control == hi:
        sel = v[:, 1]
        sel[:, :, [0, 1], :] = sel[:, :, [1, 0], :]
    else:
        sel = v[:, :, :, 1, :]
        sel[:, [0, 1], :] = sel[:, [1, 0], :]


def prob_one(amps, q):
    half = _pairs(amps, q)[:, 1, :]
    return float(np.sum(half.real**2 + half.imag**2))


def collapse(amps, q, bit, scale):
    v = _pairs(amps, q)
    v[:, 1 - bit, :] = 0
    v[:, bit, :] *= scale
