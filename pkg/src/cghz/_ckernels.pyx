# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude kernels.

Every routine works in place on a C-contiguous complex128 array whose
index bit ``q`` holds qubit ``q``. Pairs are enumerated by inserting a
zero bit at position ``q`` into a counter over half the array.
"""

ctypedef double complex cplx

cdef double INV_SQRT2 = 0.70710678118654752440


cdef inline Py_ssize_t _insert_zero(Py_ssize_t g, int q) nogil:
    cdef Py_ssize_t low = g & ((<Py_ssize_t>1 << q) - 1)
    return ((g >> q) << (q + 1)) | low


def apply_h(cplx[::1] amps, int q):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = <Py_ssize_t>1 << q
    cdef Py_ssize_t g, i0, i1
    cdef cplx a, b
    with nogil:
        for g in range(half):
            i0 = _insert_zero(g, q)
            i1 = i0 | step
            a = amps[i0]
            b = amps[i1]
            amps[i0] = (a + b) * INV_SQRT2
            amps[i1] = (a - b) * INV_SQRT2


def apply_x(cplx[::1] amps, int q):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = <Py_ssize_t>1 << q
    cdef Py_ssize_t g, i0, i1
    cdef cplx a
    with nogil:
        for g in range(half):
            i0 = _insert_zero(g, q)
            i1 = i0 | step
            a = amps[i0]
            amps[i0] = amps[i1]
            amps[i1] = a


def apply_z(cplx[::1] amps, int q):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = <Py_ssize_t>1 << q
    cdef Py_ssize_t g, i1
    with nogil:
        for g in range(half):
            i1 = _insert_zero(g, q) | step
            amps[i1] = -amps[i1]


def apply_cnot(cplx[::1] amps, int control, int target):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef Py_ssize_t cbit = <Py_ssize_t>1 << control
    cdef Py_ssize_t tbit = <Py_ssize_t>1 << target
    cdef int lo = control if control < target else target
    cdef int hi = target if control < target else control
    cdef Py_ssize_t g, i0, i1
    cdef cplx a
    with nogil:
        for g in range(quarter):
            i0 = _insert_zero(_insert_zero(g, lo), hi) | cbit
            i1 = i0 | tbit
            a = amps[i0]
            amps[i0] = amps[i1]
            amps[i1] = a


def prob_one(const cplx[::1] amps, int q):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = <Py_ssize_t>1 << q
    cdef Py_ssize_t g, i1
    cdef double total = 0.0
    cdef cplx a
    with nogil:
        for g in range(half):
            i1 = _insert_zero(g, q) | step
            a = amps[i1]
            total += a.real * a.real + a.imag * a.imag
    return total


def collapse(cplx[::1] amps, int q, int bit, double scale):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = <Py_ssize_t>1 << q
    cdef Py_ssize_t g, i0, i1
    with nogil:
        for g in range(half):
            i0 = _insert_zero(g, q)
            i1 = i0 | step
            if bit:
                amps[i0] = 0
                amps[i1] = amps[i1] * scale
            else:
                amps[i0] = amps[i0] * scale
                amps[i1] = 0
