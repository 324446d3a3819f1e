# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: expression stack VM and red-black relaxation.

The numpy fallback in ``_fallback.py`` implements the same API; the
package selects whichever imports at runtime.
"""

import numpy as np

cimport numpy as cnp  # noqa

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double complex csin(double complex)
    double complex ccos(double complex)
    double complex csinh(double complex)
    double complex ccosh(double complex)
    double complex csqrt(double complex)

BACKEND = "compiled"

cdef enum:
    OP_CONST = 0
    OP_VAR = 1
    OP_ADD = 2
    OP_SUB = 3
    OP_MUL = 4
    OP_DIV = 5
    OP_NEG = 6
    OP_POW = 7
    OP_EXP = 8
    OP_LOG = 9
    OP_SIN = 10
    OP_COS = 11
    OP_SINH = 12
    OP_COSH = 13
    OP_SQRT = 14


cdef inline double complex ipow(double complex base, long k) nogil:
    cdef double complex acc = 1.0 + 0.0j
    cdef double complex b = base
    cdef long e = k
    if e < 0:
        b = 1.0 / b
        e = -e
    while e > 0:
        if e & 1:
            acc = acc * b
        b = b * b
        e >>= 1
    return acc


def eval_program(long[:, ::1] code, double complex[::1] consts, int depth,
                 double complex[::1] z):
    """Run a compiled expression stack program over a 1-d complex array."""
    cdef Py_ssize_t npts = z.shape[0]
    cdef Py_ssize_t nops = code.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] outv = out
    stack_arr = np.empty(depth if depth > 0 else 1, dtype=np.complex128)
    cdef double complex[::1] stack = stack_arr
    cdef Py_ssize_t p, k
    cdef int top
    cdef long op, arg
    cdef double complex b
    with nogil:
        for p in range(npts):
            top = -1
            for k in range(nops):
                op = code[k, 0]
                arg = code[k, 1]
                if op == OP_CONST:
                    top += 1
                    stack[top] = consts[arg]
                elif op == OP_VAR:
                    top += 1
                    stack[top] = z[p]
                elif op == OP_NEG:
                    stack[top] = -stack[top]
                elif op == OP_POW:
                    stack[top] = ipow(stack[top], arg)
                elif op == OP_EXP:
                    stack[top] = cexp(stack[top])
                elif op == OP_LOG:
                    stack[top] = clog(stack[top])
                elif op == OP_SIN:
                    stack[top] = csin(stack[top])
                elif op == OP_COS:
                    stack[top] = ccos(stack[top])
                elif op == OP_SINH:
                    stack[top] = csinh(stack[top])
                elif op == OP_COSH:
                    stack[top] = ccosh(stack[top])
                elif op == OP_SQRT:
                    stack[top] = csqrt(stack[top])
                else:
                    b = stack[top]
                    top -= 1
                    if op == OP_ADD:
                        stack[top] = stack[top] + b
                    elif op == OP_SUB:
                        stack[top] = stack[top] - b
                    elif op == OP_MUL:
                        stack[top] = stack[top] * b
                    else:
                        stack[top] = stack[top] / b
            outv[p] = stack[0]
    return out


def redblack_sweep(double[:, :, ::1] values, cnp.uint8_t[:, ::1] fixed,
                   double omega=1.0):
    """One red-black Gauss-Seidel sweep of the 5-point Laplace equation."""
    cdef Py_ssize_t m = values.shape[0]
    cdef Py_ssize_t n = values.shape[1]
    cdef Py_ssize_t nc = values.shape[2]
    cdef Py_ssize_t i, j, c
    cdef int parity
    cdef double avg
    with nogil:
        for parity in range(2):
            for i in range(1, m - 1):
                for j in range(1, n - 1):
                    if fixed[i, j] or ((i + j) & 1) != parity:
                        continue
                    for c in range(nc):
                        avg = 0.25 * (values[i - 1, j, c] + values[i + 1, j, c]
                                      + values[i, j - 1, c] + values[i, j + 1, c])
                        values[i, j, c] = (1.0 - omega) * values[i, j, c] + omega * avg
    return np.asarray(values)
