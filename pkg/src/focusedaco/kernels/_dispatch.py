"""Backend selection for the numeric kernels.

Set ``FOCUSEDACO_BACKEND=numpy`` to force the pure-python/numpy fallback,
``FOCUSEDACO_BACKEND=numba`` to require numba, or leave unset to use numba
when it is importable. Both backends implement identical arithmetic
(IEEE-754 double precision, same operation order, shared splitmix64
streams), so a fixed seed produces bit-identical results on either path.
"""

import os

_requested = os.environ.get("FOCUSEDACO_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        import numba

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        USE_NUMBA = False
elif _requested == "numba":
    import numba

    USE_NUMBA = True
elif _requested in ("numpy", "python"):
    USE_NUMBA = False
else:
    raise ValueError(
        f"FOCUSEDACO_BACKEND={_requested!r}: expected 'auto', 'numba' or 'numpy'"
    )

BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    import numba

    def jit(fn):
        return numba.njit(cache=True, nogil=True)(fn)

    def pjit(fn):
        return numba.njit(cache=True, nogil=True, parallel=True)(fn)

    prange = numba.prange
else:

    def jit(fn):
        return fn

    def pjit(fn):
        return fn

    prange = range


# ---------------------------------------------------------------------------
# splitmix64 stream primitives.
#
# These are the only kernel functions written twice: numba wraps uint64
# arithmetic silently, while numpy 2.x emits overflow warnings on scalar
# uint64 ops, so the fallback uses masked python integers. The two versions
# are checked against each other (and against a vectorized form) in the
# test suite.
# ---------------------------------------------------------------------------

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 2.0**-53

if USE_NUMBA:
    import numpy as _np

    _U_GAMMA = _np.uint64(GAMMA)
    _U_MIX1 = _np.uint64(_MIX1)
    _U_MIX2 = _np.uint64(_MIX2)
    _S30 = _np.uint64(30)
    _S27 = _np.uint64(27)
    _S31 = _np.uint64(31)
    _S11 = _np.uint64(11)

    @jit
    def rng_u01(state):
        state[0] += _U_GAMMA
        z = state[0]
        z = (z ^ (z >> _S30)) * _U_MIX1
        z = (z ^ (z >> _S27)) * _U_MIX2
        z = z ^ (z >> _S31)
        return float(z >> _S11) * _INV53

else:

    def rng_u01(state):
        s = (int(state[0]) + GAMMA) & MASK64
        state[0] = s
        z = ((s ^ (s >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        z = z ^ (z >> 31)
        return (z >> 11) * _INV53
