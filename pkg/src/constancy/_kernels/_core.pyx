# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: in-place Walsh-Hadamard butterflies and the Monte
Carlo verdict counters.

Every routine here has a numpy twin in ``fallback.py`` that consumes the
same uniform stream and performs the same IEEE-754 operations in the same
order, so the two backends produce bit-identical results.
"""

import numpy as np

# Correctly rounded 2**-0.5; must match fallback.INV_SQRT2 bit for bit.
cdef double INV_SQRT2 = float.fromhex("0x1.6a09e667f3bcdp-1")


def fwht_inplace(double[::1] a):
    """Orthonormal fast Walsh-Hadamard transform, in place.

    Length must be a power of two.  Each butterfly stage applies
    (x, y) -> ((x+y)/sqrt2, (x-y)/sqrt2), so the transform is its own
    inverse and preserves the 2-norm.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double x, y
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = (x + y) * INV_SQRT2
                a[j + h] = (x - y) * INV_SQRT2
        h <<= 1


def classical_verdicts(const unsigned char[::1] bits, Py_ssize_t k,
                       const double[:, ::1] u, long long[::1] idx):
    """Run one classical decision per row of ``u``; return constant-verdicts.

    ``bits`` is the full truth table (one byte per input), ``idx`` a scratch
    permutation array holding 0..len(bits)-1; it is restored before
    returning so it can be reused across chunks.  Trial t samples distinct
    inputs via a partial Fisher-Yates shuffle driven by u[t, j]:
    r = j + floor(u * (N - j)), stopping early at the first differing
    output.  Returns uint8 array: 1 where all observed bits were equal.
    """
    cdef Py_ssize_t trials = u.shape[0]
    cdef Py_ssize_t N = idx.shape[0]
    if u.shape[1] < k:
        raise ValueError("uniform block narrower than the query budget")
    out = np.empty(trials, dtype=np.uint8)
    undo_arr = np.empty(k, dtype=np.int64)
    cdef unsigned char[::1] ov = out
    cdef long long[::1] undo = undo_arr
    cdef Py_ssize_t t, j, r, used
    cdef long long v
    cdef unsigned char first = 0, b, verdict
    for t in range(trials):
        verdict = 1
        used = 0
        for j in range(k):
            r = j + <Py_ssize_t>(u[t, j] * (N - j))
            undo[j] = r
            v = idx[r]
            idx[r] = idx[j]
            idx[j] = v
            used += 1
            b = bits[v]
            if j == 0:
                first = b
            elif b != first:
                verdict = 0
                break
        for j in range(used - 1, -1, -1):
            r = undo[j]
            v = idx[r]
            idx[r] = idx[j]
            idx[j] = v
        ov[t] = verdict
    return out


def quantum_verdicts(double p_zero, Py_ssize_t k, const double[:, ::1] u):
    """One iterated-measurement decision per row of ``u``.

    Iteration j reads z = 0 iff u[t, j] < p_zero, stopping at the first
    z != 0.  Returns uint8 array: 1 where all k draws gave z = 0.
    """
    cdef Py_ssize_t trials = u.shape[0]
    if u.shape[1] < k:
        raise ValueError("uniform block narrower than the iteration budget")
    out = np.empty(trials, dtype=np.uint8)
    cdef unsigned char[::1] ov = out
    cdef Py_ssize_t t, j
    cdef unsigned char verdict
    for t in range(trials):
        verdict = 1
        for j in range(k):
            if u[t, j] >= p_zero:
                verdict = 0
                break
        ov[t] = verdict
    return out
