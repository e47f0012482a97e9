"""Exact arithmetic in a quadratic order O = Z[f*w] inside D = Z[w].

The basis element w is sqrt(d) when d = 2, 3 (mod 4) and (1 + sqrt(d))/2 when
d = 1 (mod 4); in the latter case w**2 = w + (d - 1)/4, which is the relation
forced by the minimal polynomial x**2 - x + (1 - d)/4 of (1 + sqrt(d))/2.

All values are immutable and every operation is a pure function, so contexts
and elements can be shared freely between threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt

from .errors import IterationCapExceeded, NotPrime, NotSquareFree

__all__ = [
    "OmegaKind",
    "QuadInt",
    "OrderContext",
    "UnitKind",
    "UnitGroupData",
    "ZERO",
    "ONE",
    "OMEGA",
    "make_context",
    "unit_group",
    "is_prime",
    "is_square_free",
]


class OmegaKind(Enum):
    SQRT = "sqrt"
    HALF_ONE_PLUS_SQRT = "half_one_plus_sqrt"


@dataclass(frozen=True)
class QuadInt:
    """Element x + y*w of D with exact integer coordinates."""

    x: int
    y: int

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.x, -self.y)

    def __rmul__(self, n: int) -> "QuadInt":
        return QuadInt(n * self.x, n * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self) -> str:
        return f"{self.x}{self.y:+d}*w"


ZERO = QuadInt(0, 0)
ONE = QuadInt(1, 0)
OMEGA = QuadInt(0, 1)


def is_square_free(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


@dataclass(frozen=True)
class OrderContext:
    """The pair (d, f) together with derived basis data.

    d is the square-free field parameter, f the conductor generator, and
    O = Z[f*w] is the index-f suborder of D = Z[w].
    """

    d: int
    f: int
    omega_kind: OmegaKind
    disc_D: int
    disc_O: int
    f_is_prime: bool

    @property
    def omega_sq(self) -> tuple[int, int]:
        """(u, v) with w**2 = u + v*w."""
        if self.omega_kind is OmegaKind.SQRT:
            return self.d, 0
        return (self.d - 1) // 4, 1

    @property
    def omega(self) -> QuadInt:
        return OMEGA

    @property
    def one(self) -> QuadInt:
        return ONE

    def require_prime_conductor(self) -> None:
        if not self.f_is_prime:
            raise NotPrime(f"operation requires a prime conductor, got f={self.f}")

    def mul(self, a: QuadInt, b: QuadInt) -> QuadInt:
        u, v = self.omega_sq
        return QuadInt(
            a.x * b.x + u * a.y * b.y,
            a.x * b.y + a.y * b.x + v * a.y * b.y,
        )

    def power(self, z: QuadInt, n: int) -> QuadInt:
        if n < 0:
            raise ValueError("negative exponent")
        acc = ONE
        base = z
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def conjugate(self, z: QuadInt) -> QuadInt:
        if self.omega_kind is OmegaKind.SQRT:
            return QuadInt(z.x, -z.y)
        return QuadInt(z.x + z.y, -z.y)

    def norm(self, z: QuadInt) -> int:
        # z * conj(z); negative values are possible for d > 0
        u, v = self.omega_sq
        return z.x * z.x + v * z.x * z.y - u * z.y * z.y

    def trace(self, z: QuadInt) -> int:
        if self.omega_kind is OmegaKind.SQRT:
            return 2 * z.x
        return 2 * z.x + z.y

    def in_order(self, z: QuadInt) -> bool:
        """Whether z lies in O = Z + f*w*Z."""
        return z.y % self.f == 0

    def unit_inverse(self, u: QuadInt) -> QuadInt:
        """Inverse of a unit: conj(u) * norm(u), valid when |norm(u)| = 1."""
        n = self.norm(u)
        if n not in (1, -1):
            raise ValueError(f"{u} is not a unit")
        return n * self.conjugate(u)

    def real_sign(self, z: QuadInt) -> int:
        """Sign of z under the embedding sending sqrt(d) to the positive root.

        Exact integer comparison; only meaningful for d > 0.
        """
        if self.omega_kind is OmegaKind.SQRT:
            a, b = z.x, z.y
        else:
            a, b = 2 * z.x + z.y, z.y
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # a, b of opposite signs: compare a**2 with d * b**2 (never equal,
        # d square-free and not a square)
        if a > 0:
            return 1 if a * a > self.d * b * b else -1
        return 1 if self.d * b * b > a * a else -1


def make_context(d: int, f: int, *, allow_composite_conductor: bool = False) -> OrderContext:
    """Validate (d, f) and build the order context.

    Composite f is only admitted with allow_composite_conductor=True, which the
    composite-conductor factorization entry point uses; every other part of the
    library insists on a prime conductor.
    """
    if d in (0, 1) or not is_square_free(d):
        raise NotSquareFree(f"d must be square-free and not 0 or 1, got {d}")
    if f < 2:
        raise NotPrime(f"f must be an integer >= 2, got {f}")
    f_prime = is_prime(f)
    if not f_prime and not allow_composite_conductor:
        raise NotPrime(f"f must be prime, got composite {f}")
    kind = OmegaKind.HALF_ONE_PLUS_SQRT if d % 4 == 1 else OmegaKind.SQRT
    disc_d = d if d % 4 == 1 else 4 * d
    return OrderContext(
        d=d,
        f=f,
        omega_kind=kind,
        disc_D=disc_d,
        disc_O=f * f * disc_d,
        f_is_prime=f_prime,
    )


class UnitKind(Enum):
    IMAGINARY_TORSION = "imaginary_torsion"
    REAL_FUNDAMENTAL = "real_fundamental"


@dataclass(frozen=True)
class UnitGroupData:
    """Units of D and the index data of O* inside D*."""

    kind: UnitKind
    torsion: tuple[QuadInt, ...]
    fundamental: QuadInt | None
    tau: int
    coset_reps: tuple[QuadInt, ...]


def _canonical_key(z: QuadInt) -> tuple[int, int, bool, bool]:
    return (abs(z.y), abs(z.x), z.x < 0, z.y < 0)


def _floor_surd(p: int, q: int, d: int, sq: int) -> int:
    """Exact floor((p + sqrt(d)) / q) for irrational sqrt(d)."""
    if q > 0:
        return (p + sq) // q
    return -((p + sq) // (-q)) - 1


def _fundamental_unit(d: int, kind: OmegaKind) -> QuadInt:
    """Fundamental unit of D by the continued fraction expansion of w.

    The expansion of w is eventually periodic; the convergents over one
    primitive period of the purely periodic tail multiply the lattice
    Z + w*Z into itself, giving the fundamental automorphism, which is the
    fundamental unit of D.
    """
    sq = isqrt(d)
    if kind is OmegaKind.SQRT:
        p, q = 0, 1
    else:
        p, q = 1, 2
    seen: dict[tuple[int, int], int] = {}
    partials: list[int] = []
    k = 0
    while (p, q) not in seen:
        seen[(p, q)] = k
        a = _floor_surd(p, q, d, sq)
        partials.append(a)
        p = a * q - p
        q = (d - p * p) // q
        k += 1
    pj, qj = p, q
    block = partials[seen[(p, q)]:]
    # denominator convergents of the periodic block
    q_prev, q_cur = 1, 0  # q_{-2}, q_{-1}
    for a in block:
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    qn1, qn2 = q_cur, q_prev
    # eta = qn1 * alpha_j + qn2 with alpha_j = (pj + sqrt(d)) / qj
    big_a = qn1 * pj + qn2 * qj
    big_b = qn1
    if kind is OmegaKind.SQRT:
        if big_a % qj or big_b % qj:
            raise AssertionError("continued fraction unit is not integral")
        eta = QuadInt(big_a // qj, big_b // qj)
    else:
        # sqrt(d) = 2*w - 1
        if (big_a - big_b) % qj or (2 * big_b) % qj:
            raise AssertionError("continued fraction unit is not integral")
        eta = QuadInt((big_a - big_b) // qj, 2 * big_b // qj)
    return eta


@lru_cache(maxsize=None)
def unit_group(ctx: OrderContext) -> UnitGroupData:
    """Units of D, the index tau = |D*/O*|, and coset representatives.

    Imaginary case: the torsion group is listed explicitly and cosets are
    enumerated directly.  Real case: the fundamental unit eps comes from the
    continued fraction of w and tau is the least n >= 1 with eps**n in O.
    """
    if ctx.d < 0:
        if ctx.d == -1:
            torsion = (ONE, OMEGA, -ONE, -OMEGA)
        elif ctx.d == -3:
            # sixth roots of unity: +-1, +-w, +-(w - 1)
            torsion = (
                ONE,
                OMEGA,
                QuadInt(-1, 1),
                -ONE,
                -OMEGA,
                QuadInt(1, -1),
            )
        else:
            torsion = (ONE, -ONE)
        in_o = [u for u in torsion if ctx.in_order(u)]
        reps: list[QuadInt] = []
        assigned: set[QuadInt] = set()
        for u in sorted(torsion, key=_canonical_key):
            if u in assigned:
                continue
            coset = [
                v for v in torsion
                if ctx.in_order(ctx.mul(u, ctx.unit_inverse(v)))
            ]
            assigned.update(coset)
            reps.append(min(coset, key=_canonical_key))
        tau = len(torsion) // len(in_o)
        if tau != len(reps):
            raise AssertionError("coset enumeration is inconsistent")
        return UnitGroupData(
            kind=UnitKind.IMAGINARY_TORSION,
            torsion=torsion,
            fundamental=None,
            tau=tau,
            coset_reps=tuple(reps),
        )

    eps = _fundamental_unit(ctx.d, ctx.omega_kind)
    if ctx.norm(eps) not in (1, -1):
        raise AssertionError("fundamental unit does not have norm +-1")
    if ctx.real_sign(eps - ONE) <= 0:
        raise AssertionError("fundamental unit is not > 1")
    cap = ctx.f * ctx.f + 2
    power = eps
    tau = 1
    while not ctx.in_order(power):
        power = ctx.mul(power, eps)
        tau += 1
        if tau > cap:
            raise IterationCapExceeded(
                f"no power of the fundamental unit lies in O within {cap} steps"
            )
    reps = tuple(ctx.power(eps, j) for j in range(tau))
    return UnitGroupData(
        kind=UnitKind.REAL_FUNDAMENTAL,
        torsion=(ONE, -ONE),
        fundamental=eps,
        tau=tau,
        coset_reps=reps,
    )
