"""Matrix-free nearest-neighbour spin-1/2 Hamiltonian kernels.

Basis states are integers; site ``j`` (0-based, left to right) lives in bit
``N - 1 - j`` so that the ordering matches ``kron(site_0, site_1, ...)``.

A bond ``(a, b)`` with weights ``(cx, cy, cz)`` acts as
``cx XX + cy YY + cz ZZ``.  On a basis state with ``zz = s_a s_b``::

    ZZ |s> = zz |s>,   (cx XX + cy YY) |s> = (cx - cy zz) |flip_ab s>

Because the flipped state has the same ``zz``, ``H v`` is a pure gather.
"""
import numpy as np

from ._accel import HAS_NUMBA, njit


@njit(cache=True)
def _apply_numba(v, out, bit_a, bit_b, cx, cy, cz):
    dim = v.shape[0]
    nb = bit_a.shape[0]
    for s in range(dim):
        vs = v[s]
        acc = vs * 0
        for b in range(nb):
            ia = bit_a[b]
            ib = bit_b[b]
            zz = 1.0 - 2.0 * (((s >> ia) ^ (s >> ib)) & 1)
            acc += cz[b] * zz * vs + (cx[b] - cy[b] * zz) * v[s ^ ((1 << ia) | (1 << ib))]
        out[s] = acc
    return out


def _apply_numpy(v, out, bit_a, bit_b, cx, cy, cz):
    idx = np.arange(v.shape[0], dtype=np.int64)
    out[:] = 0
    for ia, ib, x, y, z in zip(bit_a, bit_b, cx, cy, cz):
        zz = 1.0 - 2.0 * (((idx >> ia) ^ (idx >> ib)) & 1)
        out += z * zz * v
        out += (x - y * zz) * v[idx ^ ((1 << int(ia)) | (1 << int(ib)))]
    return out


def apply_bonds(v, bit_a, bit_b, cx, cy, cz, out=None, use_numba=None):
    """``out = sum_bonds (cx XX + cy YY + cz ZZ) v``.

    ``use_numba=None`` follows the package-wide backend choice.
    """
    dtype = np.result_type(v.dtype, cx.dtype, cy.dtype, cz.dtype)
    v = np.ascontiguousarray(v, dtype=dtype)
    if out is None:
        out = np.empty_like(v)
    cx, cy, cz = (np.asarray(c, dtype=dtype) for c in (cx, cy, cz))
    if use_numba is None:
        use_numba = HAS_NUMBA
    if use_numba and HAS_NUMBA:
        return _apply_numba(v, out, bit_a, bit_b, cx, cy, cz)
    return _apply_numpy(v, out, bit_a, bit_b, cx, cy, cz)
