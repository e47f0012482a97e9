"""Ideals of O and D as rank-2 integer lattices in Hermite normal form.

An ideal is stored as the triple (q, r, s) denoting q*Z + (r + s*t)*Z where
t = w for ideals of D and t = f*w for ideals of O, normalized so that
0 <= r < q, s | q and s | r.  Two ideals are equal exactly when their ring
tags and triples agree, which makes every equality test trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt

from .core import ONE, OMEGA, OmegaKind, OrderContext, QuadInt, unit_group
from .errors import (
    IsFO,
    NotPrimary,
    RingMismatch,
    ZeroIdeal,
)

__all__ = [
    "Ring",
    "IdealRep",
    "ideal_from_generators",
    "unit_ideal",
    "conductor_ideal",
    "conductor_power",
    "generators",
    "contains",
    "contains_element",
    "equals",
    "product",
    "power",
    "scale",
    "divide_exact",
    "ideal_norm",
    "norm_exponent",
    "extend_to_D",
    "index_in_extension",
    "conjugate_ideal",
    "as_o_ideal",
    "is_invertible",
    "is_D_module",
    "is_F_primary",
    "is_basic",
    "is_primitive",
    "basic_component",
    "primitive_form",
    "min_power_contained",
    "is_principal_D",
    "is_principal_O",
    "f_exponent",
]


class Ring(Enum):
    D = "D"
    O = "O"


@dataclass(frozen=True)
class IdealRep:
    """Canonical HNF triple q*Z + (r + s*t)*Z, tagged by its ring."""

    ring: Ring
    q: int
    r: int
    s: int

    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.q * self.s, self.q, self.r, self.s)

    def __str__(self) -> str:
        t = "w" if self.ring is Ring.D else "fw"
        return f"({self.q}, {self.r}+{self.s}*{t})"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, u, v with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_u, u = u, old_u - qt * u
        old_v, v = v, old_v - qt * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def f_exponent(n: int, f: int) -> int | None:
    """e with n = f**e, or None when n is not a pure power of f."""
    if n < 1:
        return None
    e = 0
    while n % f == 0:
        n //= f
        e += 1
    return e if n == 1 else None


def _theta_uv(ctx: OrderContext, ring: Ring) -> tuple[int, int]:
    """(u, v) with t**2 = u + v*t for the ring's module generator t."""
    u0, v0 = ctx.omega_sq
    if ring is Ring.D:
        return u0, v0
    return u0 * ctx.f * ctx.f, v0 * ctx.f


def _to_theta(ctx: OrderContext, ring: Ring, z: QuadInt) -> tuple[int, int] | None:
    if ring is Ring.D:
        return z.x, z.y
    if z.y % ctx.f:
        return None
    return z.x, z.y // ctx.f


def _from_theta(ctx: OrderContext, ring: Ring, a: int, b: int) -> QuadInt:
    if ring is Ring.D:
        return QuadInt(a, b)
    return QuadInt(a, b * ctx.f)


def _hnf_triple(vectors: list[tuple[int, int]]) -> tuple[int, int, int]:
    vs = [(a, b) for a, b in vectors if a or b]
    if not vs:
        raise ZeroIdeal("all generators are zero")
    r0, s = 0, 0
    for a, b in vs:
        if b == 0:
            continue
        if s == 0:
            r0, s = a, b
        else:
            g, u, v = _xgcd(s, b)
            r0, s = u * r0 + v * a, g
    if s < 0:
        r0, s = -r0, -s
    if s == 0:
        raise ZeroIdeal("generators span a rank-1 module, not an ideal")
    q = 0
    for a, b in vs:
        q = gcd(q, a - (b // s) * r0)
    if q == 0:
        raise ZeroIdeal("generators span a rank-1 module, not an ideal")
    return q, r0 % q, s


def _closed_under_theta(ctx: OrderContext, ring: Ring, q: int, r: int, s: int) -> bool:
    if q % s or r % s:
        return False
    u, v = _theta_uv(ctx, ring)
    return (s * u - (r // s) * r - v * r) % q == 0


def ideal_from_generators(ctx: OrderContext, ring: Ring, gens: list[QuadInt]) -> IdealRep:
    """HNF of the O-module (or D-module) generated by gens.

    The module spanned by the generators is closed under multiplication by
    the ring generator t by augmenting each g with t*g before row reduction;
    one pass suffices because t**2 is a Z-combination of 1 and t.
    """
    u, v = _theta_uv(ctx, ring)
    vectors: list[tuple[int, int]] = []
    for g in gens:
        coords = _to_theta(ctx, ring, g)
        if coords is None:
            raise ValueError(f"generator {g} does not lie in the order")
        a, b = coords
        vectors.append((a, b))
        vectors.append((b * u, a + b * v))
    q, r, s = _hnf_triple(vectors)
    if not _closed_under_theta(ctx, ring, q, r, s):
        raise AssertionError("module closure failed")
    return IdealRep(ring, q, r, s)


def unit_ideal(ring: Ring) -> IdealRep:
    return IdealRep(ring, 1, 0, 1)


def conductor_ideal(ctx: OrderContext) -> IdealRep:
    """F = f*D viewed as an ideal of O: f*Z + f*w*Z."""
    return IdealRep(Ring.O, ctx.f, 0, 1)


def conductor_power(ctx: OrderContext, n: int) -> IdealRep:
    """F**n = f**(n-1) * F."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return IdealRep(Ring.O, ctx.f ** n, 0, ctx.f ** (n - 1))


def generators(ctx: OrderContext, ideal: IdealRep) -> tuple[QuadInt, QuadInt]:
    return (
        _from_theta(ctx, ideal.ring, ideal.q, 0),
        _from_theta(ctx, ideal.ring, ideal.r, ideal.s),
    )


def contains_element(ctx: OrderContext, ideal: IdealRep, z: QuadInt) -> bool:
    coords = _to_theta(ctx, ideal.ring, z)
    if coords is None:
        return False
    a, b = coords
    if b % ideal.s:
        return False
    return (a - (b // ideal.s) * ideal.r) % ideal.q == 0


def _require_same_ring(i: IdealRep, j: IdealRep) -> None:
    if i.ring is not j.ring:
        raise RingMismatch(f"{i.ring.value} vs {j.ring.value}")


def contains(ctx: OrderContext, outer: IdealRep, inner: IdealRep) -> bool:
    """Whether inner is a subset of outer."""
    _require_same_ring(outer, inner)
    g1, g2 = generators(ctx, inner)
    return contains_element(ctx, outer, g1) and contains_element(ctx, outer, g2)


def equals(i: IdealRep, j: IdealRep) -> bool:
    _require_same_ring(i, j)
    return i == j


def product(ctx: OrderContext, i: IdealRep, j: IdealRep) -> IdealRep:
    _require_same_ring(i, j)
    gi = generators(ctx, i)
    gj = generators(ctx, j)
    prods = [ctx.mul(a, b) for a in gi for b in gj]
    return ideal_from_generators(ctx, i.ring, prods)


def power(ctx: OrderContext, ideal: IdealRep, n: int) -> IdealRep:
    if n < 0:
        raise ValueError("negative ideal power")
    acc = unit_ideal(ideal.ring)
    for _ in range(n):
        acc = product(ctx, acc, ideal)
    return acc


def scale(ideal: IdealRep, n: int) -> IdealRep:
    """The ideal n * I for a positive integer n."""
    if n < 1:
        raise ValueError("scale factor must be >= 1")
    return IdealRep(ideal.ring, n * ideal.q, n * ideal.r, n * ideal.s)


def divide_exact(ideal: IdealRep, n: int) -> IdealRep:
    if n < 1 or ideal.q % n or ideal.r % n or ideal.s % n:
        raise ValueError(f"{ideal} is not divisible by {n}")
    return IdealRep(ideal.ring, ideal.q // n, ideal.r // n, ideal.s // n)


def ideal_norm(ideal: IdealRep) -> int:
    """Index of the ideal in its ring, always positive."""
    return ideal.q * ideal.s


def norm_exponent(ctx: OrderContext, ideal: IdealRep) -> int:
    e = f_exponent(ideal_norm(ideal), ctx.f)
    if e is None:
        raise NotPrimary(f"norm of {ideal} is not a power of f")
    return e


def extend_to_D(ctx: OrderContext, ideal: IdealRep) -> IdealRep:
    if ideal.ring is not Ring.O:
        return ideal
    return ideal_from_generators(ctx, Ring.D, list(generators(ctx, ideal)))


def index_in_extension(ctx: OrderContext, ideal: IdealRep) -> int:
    """[ID : I], which is 1 exactly when I is a D-module, and f otherwise."""
    if ideal.ring is Ring.D:
        return 1
    ext = extend_to_D(ctx, ideal)
    return ctx.f * ideal_norm(ideal) // ideal_norm(ext)


def conjugate_ideal(ctx: OrderContext, ideal: IdealRep) -> IdealRep:
    g1, g2 = generators(ctx, ideal)
    return ideal_from_generators(
        ctx, ideal.ring, [ctx.conjugate(g1), ctx.conjugate(g2)]
    )


def as_o_ideal(ctx: OrderContext, ideal_d: IdealRep) -> IdealRep:
    """Re-express an ideal of D contained in O as an ideal of O."""
    if ideal_d.ring is not Ring.D:
        return ideal_d
    g1, g2 = generators(ctx, ideal_d)
    if not (ctx.in_order(g1) and ctx.in_order(g2)):
        raise ValueError(f"{ideal_d} is not contained in the order")
    return ideal_from_generators(ctx, Ring.O, [g1, g2])


def is_invertible(ctx: OrderContext, ideal: IdealRep) -> bool:
    """Q is O-invertible exactly when Q * conj(Q) = N(Q) * O."""
    if ideal.ring is not Ring.O:
        raise RingMismatch("invertibility test is for ideals of O")
    qq = product(ctx, ideal, conjugate_ideal(ctx, ideal))
    return qq == scale(unit_ideal(Ring.O), ideal_norm(ideal))


def is_D_module(ctx: OrderContext, ideal: IdealRep) -> bool:
    """Whether w * I lies in I, i.e. I is an ideal of D."""
    if ideal.ring is Ring.D:
        return True
    g1, g2 = generators(ctx, ideal)
    return contains_element(ctx, ideal, ctx.mul(OMEGA, g1)) and contains_element(
        ctx, ideal, ctx.mul(OMEGA, g2)
    )


def is_F_primary(ctx: OrderContext, ideal: IdealRep) -> bool:
    """Norm is a positive power of f and the ideal lies inside the conductor."""
    if ideal.ring is not Ring.O:
        raise RingMismatch("primary test is for ideals of O")
    e = f_exponent(ideal_norm(ideal), ctx.f)
    if e is None or e < 1:
        return False
    return contains(ctx, conductor_ideal(ctx), ideal)


def is_basic(ctx: OrderContext, ideal: IdealRep) -> bool:
    """Primary for the conductor and not contained in F**2."""
    if not is_F_primary(ctx, ideal):
        return False
    return not contains(ctx, conductor_power(ctx, 2), ideal)


def is_primitive(ideal: IdealRep) -> bool:
    """No integer n >= 2 divides the whole ideal (content 1)."""
    return gcd(gcd(ideal.q, ideal.r), ideal.s) == 1


def basic_component(ctx: OrderContext, ideal: IdealRep) -> tuple[int, IdealRep]:
    """(k, Q') with k maximal such that F**k contains Q, and Q = f**(k-1) Q'."""
    if not is_F_primary(ctx, ideal):
        raise NotPrimary(f"{ideal} is not primary for the conductor")
    e = norm_exponent(ctx, ideal)
    k = 1
    while k + 1 <= e + 1 and contains(ctx, conductor_power(ctx, k + 1), ideal):
        k += 1
    basic = divide_exact(ideal, ctx.f ** (k - 1))
    if not is_basic(ctx, basic):
        raise AssertionError("basic component is not basic")
    return k, basic


def _f_o(ctx: OrderContext) -> IdealRep:
    return IdealRep(Ring.O, ctx.f, 0, ctx.f)


def primitive_form(ctx: OrderContext, ideal: IdealRep) -> tuple[int, QuadInt]:
    """(k, alpha) with Q = f**k Z + f*alpha*Z, alpha in D but not in O.

    Defined for basic primary ideals other than f*O.  alpha is read off the
    second HNF generator, which pins a canonical representative because
    0 <= r < q already.
    """
    if ideal == _f_o(ctx):
        raise IsFO("f*O has no primitive form")
    if not is_basic(ctx, ideal):
        raise NotPrimary(f"{ideal} is not a basic primary ideal")
    if ideal.s != 1:
        raise AssertionError("basic primary ideal other than f*O must have s = 1")
    k = norm_exponent(ctx, ideal)
    if ideal.r % ctx.f:
        raise AssertionError("second generator of a primary ideal must be in F")
    alpha = QuadInt(ideal.r // ctx.f, 1)
    rebuilt = ideal_from_generators(
        ctx, Ring.O, [QuadInt(ctx.f ** k, 0), ctx.f * alpha]
    )
    if rebuilt != ideal:
        raise AssertionError("primitive form does not reconstruct the ideal")
    return k, alpha


def min_power_contained(ctx: OrderContext, ideal: IdealRep) -> int:
    """Least k with F**k inside Q; agrees with the primitive-form exponent."""
    if ideal == _f_o(ctx):
        raise IsFO("f*O contains no power of F")
    if not is_basic(ctx, ideal):
        raise NotPrimary(f"{ideal} is not a basic primary ideal")
    e = norm_exponent(ctx, ideal)
    for k in range(1, e + 2):
        if contains(ctx, ideal, conductor_power(ctx, k)):
            return k
    raise AssertionError("no conductor power contained within expected range")


# ---------------------------------------------------------------------------
# principality searches
# ---------------------------------------------------------------------------


def _imaginary_norm_solutions(ctx: OrderContext, n: int) -> list[QuadInt]:
    """All z with norm(z) = n > 0, for d < 0.  Exact and exhaustive."""
    d = ctx.d
    out: set[QuadInt] = set()
    if ctx.omega_kind is OmegaKind.SQRT:
        ymax = isqrt(n // -d)
        for y in range(ymax + 1):
            rem = n + d * y * y
            if rem < 0:
                break
            x = isqrt(rem)
            if x * x != rem:
                continue
            for xx in {x, -x}:
                for yy in {y, -y}:
                    out.add(QuadInt(xx, yy))
    else:
        ymax = isqrt(4 * n // -d)
        for y in range(ymax + 1):
            rem = 4 * n + d * y * y
            if rem < 0:
                break
            t = isqrt(rem)
            if t * t != rem:
                continue
            for tt in {t, -t}:
                for yy in {y, -y}:
                    if (tt - yy) % 2 == 0:
                        out.add(QuadInt((tt - yy) // 2, yy))
    return sorted(out, key=lambda z: (abs(z.y), abs(z.x), z.x < 0, z.y < 0))


def _real_window_solutions(ctx: OrderContext, n: int, window_unit: QuadInt) -> list[QuadInt]:
    """All z with |norm(z)| = n, positive embedding in [sqrt(n), emb(u)*sqrt(n)).

    Each association class modulo {+-1} x <u> has exactly one member here,
    which keeps the search finite; comparisons against the window bounds are
    exact integer sign tests on squares.
    """
    d = ctx.d
    sq = isqrt(d)
    ce = abs(window_unit.x) + abs(window_unit.y) * (sq + 2)
    ymax = ((ce + 2) * (isqrt(n) + 1)) // max(sq, 1) + 2
    u_sq = ctx.mul(window_unit, window_unit)
    upper = n * u_sq
    lower = QuadInt(n, 0)
    out: list[QuadInt] = []
    seen: set[QuadInt] = set()

    def consider(x: int, y: int) -> None:
        z = QuadInt(x, y)
        if z in seen or z.is_zero():
            return
        seen.add(z)
        if ctx.real_sign(z) <= 0:
            return
        z2 = ctx.mul(z, z)
        if ctx.real_sign(z2 - lower) < 0:
            return
        if ctx.real_sign(upper - z2) <= 0:
            return
        out.append(z)

    for y in range(ymax + 1):
        for target in (n, -n):
            if ctx.omega_kind is OmegaKind.SQRT:
                rem = target + d * y * y
                if rem < 0:
                    continue
                x = isqrt(rem)
                if x * x != rem:
                    continue
                for xx in {x, -x}:
                    for yy in {y, -y}:
                        consider(xx, yy)
            else:
                rem = 4 * target + d * y * y
                if rem < 0:
                    continue
                t = isqrt(rem)
                if t * t != rem:
                    continue
                for tt in {t, -t}:
                    for yy in {y, -y}:
                        if (tt - yy) % 2 == 0:
                            consider((tt - yy) // 2, yy)
    out.sort(key=lambda z: (abs(z.y), abs(z.x), z.x < 0, z.y < 0))
    return out


def _canonical_imaginary(ctx: OrderContext, z: QuadInt, in_o: bool) -> QuadInt:
    # associates of an O-generator may only be taken over units of O
    torsion = unit_group(ctx).torsion
    units = [u for u in torsion if not in_o or ctx.in_order(u)]
    return min(
        (ctx.mul(z, u) for u in units),
        key=lambda w: (abs(w.y), abs(w.x), w.x < 0, w.y < 0),
    )


def _canonical_real(ctx: OrderContext, z: QuadInt, window_unit: QuadInt) -> QuadInt:
    n = abs(ctx.norm(z))
    if ctx.real_sign(z) < 0:
        z = -z
    u_inv = ctx.unit_inverse(window_unit)
    u_sq = ctx.mul(window_unit, window_unit)
    lower = QuadInt(n, 0)
    while ctx.real_sign(ctx.mul(z, z) - lower) < 0:
        z = ctx.mul(z, window_unit)
    while ctx.real_sign(n * u_sq - ctx.mul(z, z)) <= 0:
        z = ctx.mul(z, u_inv)
    return z


def _canonical(ctx: OrderContext, z: QuadInt, in_o: bool) -> QuadInt:
    if ctx.d < 0:
        return _canonical_imaginary(ctx, z, in_o)
    ug = unit_group(ctx)
    assert ug.fundamental is not None
    window_unit = ctx.power(ug.fundamental, ug.tau) if in_o else ug.fundamental
    return _canonical_real(ctx, z, window_unit)


def _principal_generator_d(ctx: OrderContext, ideal: IdealRep) -> QuadInt | None:
    n = ideal_norm(ideal)
    if n == 1:
        return ONE
    if ctx.d < 0:
        candidates = _imaginary_norm_solutions(ctx, n)
    else:
        candidates = _real_window_solutions(
            ctx, n, unit_group(ctx).fundamental
        )
    for z in candidates:
        if contains_element(ctx, ideal, z):
            return _canonical(ctx, z, in_o=False)
    return None


def _principal_generator(ctx: OrderContext, ideal: IdealRep, in_o: bool) -> QuadInt | None:
    if not in_o:
        return _principal_generator_d(ctx, ideal)
    n = ideal_norm(ideal)
    if n == 1:
        return ONE
    # t*O = Q forces t*D = QD with the same index, so search D first and then
    # walk the finitely many unit classes of D*/O*; this keeps the search
    # window at the fundamental unit of D even when tau is large
    ext = extend_to_D(ctx, ideal)
    if ideal_norm(ext) != n:
        return None
    gamma = _principal_generator_d(ctx, ext)
    if gamma is None:
        return None
    for u in unit_group(ctx).coset_reps:
        t = ctx.mul(gamma, u)
        if not ctx.in_order(t):
            continue
        if ideal_from_generators(ctx, Ring.O, [t]) == ideal:
            return _canonical(ctx, t, in_o=True)
    return None


def is_principal_D(ctx: OrderContext, ideal: IdealRep) -> QuadInt | None:
    """A canonical generator of the D-ideal, or None.

    An element z of I with |norm(z)| = N(I) generates I, since z*D sits
    inside I with the same index.
    """
    if ideal.ring is not Ring.D:
        raise RingMismatch("expected an ideal of D")
    gen = _principal_generator(ctx, ideal, in_o=False)
    if gen is not None:
        rebuilt = ideal_from_generators(ctx, Ring.D, [gen])
        if rebuilt != ideal:
            raise AssertionError("principal generator does not regenerate the ideal")
    return gen


def is_principal_O(ctx: OrderContext, ideal: IdealRep) -> QuadInt | None:
    """A canonical generator t in O with t*O = Q, or None."""
    if ideal.ring is not Ring.O:
        raise RingMismatch("expected an ideal of O")
    gen = _principal_generator(ctx, ideal, in_o=True)
    if gen is not None:
        rebuilt = ideal_from_generators(ctx, Ring.O, [gen])
        if rebuilt != ideal:
            raise AssertionError("principal generator does not regenerate the ideal")
    return gen
