"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable; the API mirrors
``_core`` exactly.
"""

import numpy as np

BACKEND = "fallback"

# opcodes; keep in sync with expr.py and _core.pyx
_CONST, _VAR, _ADD, _SUB, _MUL, _DIV, _NEG, _POW = range(8)
_EXP, _LOG, _SIN, _COS, _SINH, _COSH, _SQRT = range(8, 15)

_UNARY = {
    _EXP: np.exp,
    _LOG: np.log,
    _SIN: np.sin,
    _COS: np.cos,
    _SINH: np.sinh,
    _COSH: np.cosh,
    _SQRT: np.sqrt,
}


def eval_program(code, consts, depth, z):
    """Run a compiled expression stack program over a 1-d complex array."""
    stack = [None] * depth
    top = -1
    for op, arg in code:
        if op == _CONST:
            top += 1
            stack[top] = np.full(z.shape, consts[arg])
        elif op == _VAR:
            top += 1
            stack[top] = z.copy()
        elif op == _NEG:
            np.negative(stack[top], out=stack[top])
        elif op == _POW:
            stack[top] = stack[top] ** int(arg)
        elif op >= _EXP:
            stack[top] = _UNARY[op](stack[top])
        else:
            b = stack[top]
            top -= 1
            a = stack[top]
            if op == _ADD:
                np.add(a, b, out=a)
            elif op == _SUB:
                np.subtract(a, b, out=a)
            elif op == _MUL:
                np.multiply(a, b, out=a)
            else:
                np.divide(a, b, out=a)
    return stack[0]


def redblack_sweep(values, fixed, omega=1.0):
    """One red-black Gauss-Seidel sweep of the 5-point Laplace equation.

    ``values`` has shape (M, N, n) and is updated in place at nodes where
    ``fixed`` (shape (M, N)) is False.
    """
    m, n = values.shape[:2]
    ii, jj = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    # callers may pass uint8 to match the compiled kernel's signature;
    # bitwise ~ on uint8 would silently build a garbage integer mask
    interior = ~np.asarray(fixed, dtype=bool)
    interior[0, :] = interior[-1, :] = interior[:, 0] = interior[:, -1] = False
    for parity in (0, 1):
        mask = interior & (((ii + jj) % 2) == parity)
        avg = 0.25 * (
            np.roll(values, 1, axis=0)
            + np.roll(values, -1, axis=0)
            + np.roll(values, 1, axis=1)
            + np.roll(values, -1, axis=1)
        )
        values[mask] = (1.0 - omega) * values[mask] + omega * avg[mask]
    return values
