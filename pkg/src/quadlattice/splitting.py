"""Splitting behavior of the conductor prime f in D and the prime P above it.

Also hosts the one composite-conductor operation: factoring F = (f, f*w) into
its primary components when f is not prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .core import OMEGA, OmegaKind, OrderContext, QuadInt, is_prime, make_context, unit_group
from .errors import IterationCapExceeded
from .ideals import (
    IdealRep,
    Ring,
    conductor_ideal,
    contains,
    ideal_from_generators,
    ideal_norm,
    is_principal_D,
    power,
    product,
)

__all__ = [
    "SplittingType",
    "SplitData",
    "splitting_type",
    "prime_above",
    "class_order_and_generator",
    "split_data",
    "conductor",
    "conductor_factorization",
    "suborder_conductor",
]

DEFAULT_CLASS_CAP = 64


class SplittingType(Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitData:
    """Splitting type of f plus the case data the lattice construction needs.

    P is absent in the inert case (there f*D itself is prime).  m and beta are
    the class order of P and a fixed generator of P**m in the split case; in
    the ramified case beta is a generator of P when P is principal.  The sign
    of norm(beta) is recorded because real fields may only admit generators of
    negative norm; all primary-ideal predicates use absolute norms.
    """

    stype: SplittingType
    P: IdealRep | None
    m: int | None
    beta: QuadInt | None
    beta_norm_sign: int | None
    tau: int


def splitting_type(ctx: OrderContext) -> SplittingType:
    """Decided by divisibility of the field discriminant and by an exhaustive
    root search of the minimal polynomial of w modulo f."""
    ctx.require_prime_conductor()
    f = ctx.f
    if ctx.disc_D % f == 0:
        return SplittingType.RAMIFIED
    # minimal polynomial of w: x**2 - d, or x**2 - x + (1 - d)/4
    if ctx.omega_kind is OmegaKind.SQRT:
        has_root = any((x * x - ctx.d) % f == 0 for x in range(f))
    else:
        c = (1 - ctx.d) // 4
        has_root = any((x * x - x + c) % f == 0 for x in range(f))
    return SplittingType.SPLIT if has_root else SplittingType.INERT


def prime_above(ctx: OrderContext) -> IdealRep:
    """The prime P of D above f; f*D itself in the inert case.

    Split case: P = (f, r + w) with r the smallest residue making the norm of
    r + w divisible by f.  Ramified case: P = (f, sqrt(d)), except that
    P = (2, 1 + sqrt(d)) when f = 2 and d = 3 (mod 4).
    """
    stype = splitting_type(ctx)
    f = ctx.f
    if stype is SplittingType.INERT:
        return IdealRep(Ring.D, f, 0, f)
    if stype is SplittingType.SPLIT:
        root = next(
            r for r in range(f) if ctx.norm(QuadInt(r, 1)) % f == 0
        )
        return ideal_from_generators(ctx, Ring.D, [QuadInt(f, 0), QuadInt(root, 1)])
    if f == 2 and ctx.d % 4 == 3:
        gen = QuadInt(1, 1)  # 1 + sqrt(d)
    elif ctx.omega_kind is OmegaKind.SQRT:
        gen = OMEGA  # sqrt(d)
    else:
        gen = QuadInt(-1, 2)  # sqrt(d) = 2w - 1
    return ideal_from_generators(ctx, Ring.D, [QuadInt(f, 0), gen])


def class_order_and_generator(
    ctx: OrderContext, p: IdealRep, cap: int = DEFAULT_CLASS_CAP
) -> tuple[int, QuadInt]:
    """Least m with P**m principal, plus a canonical generator of P**m."""
    for m in range(1, cap + 1):
        gen = is_principal_D(ctx, power(ctx, p, m))
        if gen is not None:
            return m, gen
    raise IterationCapExceeded(f"no principal power of P within cap {cap}")


def split_data(ctx: OrderContext, cap: int = DEFAULT_CLASS_CAP) -> SplitData:
    stype = splitting_type(ctx)
    tau = unit_group(ctx).tau
    if stype is SplittingType.INERT:
        return SplitData(stype, None, None, None, None, tau)
    p = prime_above(ctx)
    if stype is SplittingType.RAMIFIED:
        beta = is_principal_D(ctx, p)
        sign = None if beta is None else (1 if ctx.norm(beta) > 0 else -1)
        return SplitData(stype, p, None, beta, sign, tau)
    m, beta = class_order_and_generator(ctx, p, cap)
    sign = 1 if ctx.norm(beta) > 0 else -1
    return SplitData(stype, p, m, beta, sign, tau)


def conductor(ctx: OrderContext) -> IdealRep:
    """F = f*D = f*Z + f*w*Z as an ideal of O."""
    return conductor_ideal(ctx)


def suborder_conductor(ctx: OrderContext, g: int) -> IdealRep:
    """The colon lattice {x : x * Z[g*w] inside Z[f*w]}, expressed in O.

    Solving the two membership congruences gives (f / gcd(f, g)) Z + f*w*Z;
    for g = f / f_i this is f_i Z + f*w*Z.
    """
    if g < 1 or ctx.f % g:
        raise ValueError("g must divide f")
    a = ctx.f // gcd(ctx.f, g)
    return IdealRep(Ring.O, a, 0, 1)


def conductor_factorization(d: int, f: int) -> list[tuple[IdealRep, IdealRep]]:
    """Primary components of the conductor for composite f.

    Returns pairs (G_i, F_i) with G_i = (f_i**s_i, f*w) and radical
    F_i = (f_i, f*w), where f = prod f_i**s_i.  The components multiply back
    to F, each radical is a prime of norm f_i, and each F_i agrees with the
    conductor of the suborder chain computed independently as a colon lattice
    and as the scaled lattice f_i * Z[(f/f_i) w].
    """
    ctx = make_context(d, f, allow_composite_conductor=True)
    factors: list[tuple[int, int]] = []
    rest = f
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))

    f_omega = QuadInt(0, f)
    out: list[tuple[IdealRep, IdealRep]] = []
    for fi, si in factors:
        gi = ideal_from_generators(ctx, Ring.O, [QuadInt(fi ** si, 0), f_omega])
        radical = ideal_from_generators(ctx, Ring.O, [QuadInt(fi, 0), f_omega])
        if not is_prime(ideal_norm(radical)):
            raise AssertionError("radical component is not prime")
        if not contains(ctx, radical, gi):
            raise AssertionError("component not contained in its radical")
        k, cap = 1, 2 * si + 2
        while not contains(ctx, gi, power(ctx, radical, k)):
            k += 1
            if k > cap:
                raise AssertionError("radical power never entered the component")
        colon = suborder_conductor(ctx, f // fi)
        if radical != colon:
            raise AssertionError("radical disagrees with the colon lattice")
        scaled = ideal_from_generators(
            ctx, Ring.O, [QuadInt(fi, 0), QuadInt(0, fi * (f // fi))]
        )
        if radical != scaled:
            raise AssertionError("radical disagrees with the scaled suborder")
        out.append((gi, radical))

    prod = out[0][0]
    for gi, _ in out[1:]:
        prod = product(ctx, prod, gi)
    if prod != conductor_ideal(ctx):
        raise AssertionError("components do not multiply back to the conductor")
    return out
