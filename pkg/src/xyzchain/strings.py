"""String classification at the degenerate points ``2m/N``.

Everything here is exact: continued-fraction coefficients, convergents,
lengths, parities, charges and windings are integers or
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError, DomainError

__all__ = [
    "ContinuedFraction",
    "StringSpec",
    "scf_expand",
    "string_structure",
    "q_charges",
    "string_coordinates",
    "charge_for",
]


@dataclass(frozen=True)
class ContinuedFraction:
    """Simple continued fraction ``c2/c1 = [a_1, ..., a_l]`` with derived series.

    ``p0`` keeps the unreduced ``denominator/numerator`` (equal as a rational).
    Index conventions: ``y[0]`` is ``y_{-1}``, ``y[1]`` is ``y_0``, and so on;
    the same shift applies to ``yp``.  ``z[k]`` and ``p[k]`` are unshifted.
    """

    numerator: int
    denominator: int
    c2: int
    c1: int
    a: tuple
    z: tuple
    y: tuple
    yp: tuple
    p: tuple

    @property
    def length(self) -> int:
        return len(self.a)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.c2, self.c1)

    @property
    def p0(self) -> Fraction:
        return self.p[0]

    def y_at(self, k: int) -> int:
        """Convergent ``y_k`` for ``k >= -1``."""
        return self.y[k + 1]

    def yp_at(self, k: int) -> int:
        return self.yp[k + 1]

    def value(self) -> Fraction:
        """Fold the coefficients back into a fraction."""
        acc = Fraction(0)
        for ak in reversed(self.a):
            acc = 1 / (ak + acc)
        return acc


@dataclass(frozen=True)
class StringSpec:
    """One string type: length ``n``, parity ``v``, charge ``q``, winding ``w``."""

    j: int
    n: int
    v: int
    q: Fraction = field(default=Fraction(0))
    w: int = 0

    @property
    def sign_q(self) -> int:
        return (self.q > 0) - (self.q < 0)


def _euclid(num: int, den: int) -> list:
    coeffs = []
    while num:
        coeffs.append(den // num)
        num, den = den % num, num
    return coeffs


def scf_expand(numerator: int, denominator: int) -> ContinuedFraction:
    """Expand ``numerator/denominator`` in ``(0, 1/2]`` as a simple continued fraction.

    >>> scf_expand(10, 73).a
    (7, 3, 3)
    """
    numerator = int(numerator)
    denominator = int(denominator)
    if numerator <= 0 or denominator <= 0 or 2 * numerator > denominator:
        raise DomainError(
            f"{numerator}/{denominator} outside (0, 1/2]; a_1 >= 2 is required"
        )
    g = math.gcd(numerator, denominator)
    c2, c1 = numerator // g, denominator // g

    a = _euclid(c2, c1)
    if len(a) > 1 and a[-1] == 1:
        a[-2] += 1
        a.pop()

    l = len(a)
    z = [0]
    for ak in a:
        z.append(z[-1] + ak)
    y = [0, 1]
    yp = [1, 0]
    for ak in a:
        y.append(ak * y[-1] + y[-2])
        yp.append(yp[-2] + ak * yp[-1])

    p = [Fraction(denominator, numerator), Fraction(1)]
    for n in range(2, l + 2):
        a_prev = a[n - 2]
        if p[n - 1] != 0 and math.floor(p[n - 2] / p[n - 1]) != a_prev:
            raise ConsistencyError("p-series floor disagrees with SCF coefficient")
        p.append(p[n - 2] - p[n - 1] * a_prev)

    cf = ContinuedFraction(
        numerator=numerator,
        denominator=denominator,
        c2=c2,
        c1=c1,
        a=tuple(a),
        z=tuple(z),
        y=tuple(y),
        yp=tuple(yp),
        p=tuple(p),
    )
    if cf.value() != Fraction(c2, c1):
        raise ConsistencyError("continued fraction does not reproduce its input")
    if cf.y_at(l) != c1:
        raise ConsistencyError("y_l differs from the reduced denominator")
    if p[l + 1] != 0:
        raise ConsistencyError("p_{l+1} does not vanish")
    return cf


def _segment(cf: ContinuedFraction, j: int) -> int:
    """Index ``s`` with ``z_s <= j < z_{s+1}`` (``s = l`` for ``j = z_l``)."""
    for s in range(cf.length):
        if cf.z[s] <= j < cf.z[s + 1]:
            return s
    return cf.length


def _lengths(cf: ContinuedFraction) -> list:
    zl = cf.z[-1]
    n = []
    for j in range(1, zl + 1):
        s = _segment(cf, j)
        n.append(cf.y_at(s - 1) + (j - cf.z[s]) * cf.y_at(s))
    n.append(cf.y_at(cf.length))
    return n


def _parity(n: int, j: int, cf: ContinuedFraction) -> int:
    if j == cf.z[1]:
        return -1
    return -1 if math.floor((n - 1) * cf.ratio) % 2 else 1


def q_charges(cf: ContinuedFraction) -> list:
    """Charges ``q_j`` and windings ``omega_j`` for every string type.

    The p-series route and the closed winding form are evaluated
    independently; :class:`ConsistencyError` if they ever differ.
    """
    lengths = _lengths(cf)
    zl = cf.z[-1]
    l = cf.length
    p0 = cf.p0
    out = []
    for j, n in enumerate(lengths, start=1):
        if j <= zl:
            s = _segment(cf, j)
            q_series = (-1) ** s * (cf.p[s] - (j - cf.z[s]) * cf.p[s + 1])
            w_conv = cf.yp_at(s - 1) + (j - cf.z[s]) * cf.yp_at(s)
        else:
            q_series = (-1) ** (l + 1) * cf.p[l + 1]
            w_conv = cf.yp_at(l)
        w = 0 if j == cf.z[1] else math.floor((n - 1) * cf.ratio) + 1
        q_closed = w * p0 - n
        if q_series != q_closed or w_conv != w:
            raise ConsistencyError(
                f"charge mismatch at j={j}: series {q_series}, closed {q_closed}, "
                f"windings {w_conv} vs {w}"
            )
        out.append((q_closed, w))
    return out


def string_structure(m: int, N: int) -> list:
    """All ``z_l + 1`` string types for the degenerate point ``2m/N``."""
    cf = scf_expand(2 * m, N)
    lengths = _lengths(cf)
    charges = q_charges(cf)
    return [
        StringSpec(j=j, n=n, v=_parity(n, j, cf), q=q, w=w)
        for j, (n, (q, w)) in enumerate(zip(lengths, charges), start=1)
    ]


def charge_for(n: int, v: int, m: int, N: int) -> Fraction:
    """Charge of an auxiliary ``(n, v)`` combination entering scattering kernels.

    The winding is the usual floor value, lowered by one when its parity
    does not match ``v`` (the same rule that fixes ``omega_{z_1} = 0``).
    """
    ratio = Fraction(2 * m, N)
    w = math.floor((n - 1) * ratio) + 1
    if (1 if (w - 1) % 2 == 0 else -1) != v:
        w -= 1
    return w / ratio - n


def string_coordinates(center: float, spec: StringSpec, eta: complex) -> list:
    """Root positions of one string with the exponentially small correction dropped."""
    if spec.n < 1:
        raise DomainError("string length must be positive")
    eta = complex(eta)
    shift = (1 - spec.v) / 2 * 1j
    return [
        center + (spec.n + 1 - 2 * k) * eta * 1j + shift
        for k in range(1, spec.n + 1)
    ]
