"""Construction of the layered lattice of conductor-primary ideals.

The first layer (basic ideals) is built from closed forms per splitting case;
deeper layers are exact copies scaled by powers of f.  Distinct lattices can
be built concurrently; within one build, the dedup-and-edge step owns all
shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import OrderContext, QuadInt, unit_group
from .errors import NotBasicElement
from .ideals import (
    IdealRep,
    Ring,
    as_o_ideal,
    conductor_ideal,
    conductor_power,
    conjugate_ideal,
    contains,
    f_exponent,
    ideal_from_generators,
    ideal_norm,
    is_basic,
    is_D_module,
    is_invertible,
    is_principal_O,
    norm_exponent,
    power,
    primitive_form,
    product,
    scale,
    unit_ideal,
)
from .splitting import SplitData, SplittingType

__all__ = [
    "LatticeNode",
    "LatticeGraph",
    "intermediates",
    "basic_layer",
    "layer_n",
    "hasse",
    "principal_basic_ideals",
    "principal_chain",
]


@dataclass
class LatticeNode:
    ideal: IdealRep
    norm_exp: int
    layer: int
    is_D_module: bool
    is_invertible: bool
    is_power_of_F: bool
    principal_generator: QuadInt | None
    principal_known: bool
    labels: tuple[str, ...] = ()

    def primary_label(self) -> str:
        return min(self.labels, key=_label_rank) if self.labels else str(self.ideal)


@dataclass
class LatticeGraph:
    nodes: list[LatticeNode]
    edges: list[tuple[int, int]]  # (i, j): node i covers node j


def _label_rank(label: str) -> tuple[int, str]:
    base = label
    if "*" in base:  # strip a scaling prefix like "f*" or "f^2*"
        base = base.split("*", 1)[1]
    if base == "O":
        r = 0
    elif base.startswith("F"):
        r = 1
    elif base == "fO" or (base.startswith("f^") and base.endswith("O")):
        r = 2
    elif base.startswith("P^"):
        r = 3
    elif base.startswith("Qbar"):
        r = 5
    elif base.startswith("Q"):
        r = 4
    elif base.startswith("H"):
        r = 6
    elif base.startswith("J"):
        r = 7
    else:
        r = 8
    return (r, label)


def intermediates(ctx: OrderContext, q_ideal: IdealRep) -> list[IdealRep]:
    """The ideals lying strictly between f*Q and Q for a basic Q != f*O.

    When Q is a D-module there are exactly f + 1 of them: position 0 holds
    J = (f**k, f**2 * alpha) and positions 1..f hold J_a for a = 0..f-1.
    Otherwise the list holds the single ideal f*Q*D.
    """
    k, alpha = primitive_form(ctx, q_ideal)  # raises IsFO for f*O
    f = ctx.f
    fk = f ** k
    out: list[IdealRep] = []
    j0 = ideal_from_generators(ctx, Ring.O, [QuadInt(fk, 0), f * f * alpha])
    out.append(j0)
    if is_D_module(ctx, q_ideal):
        for a in range(f):
            ja = ideal_from_generators(
                ctx,
                Ring.O,
                [QuadInt(fk * f, 0), QuadInt(a * fk, 0) + f * alpha],
            )
            out.append(ja)
        if len(set(out)) != f + 1:
            raise AssertionError("intermediate ideals are not pairwise distinct")
    fq = scale(q_ideal, f)
    for j in out:
        ok = (
            contains(ctx, q_ideal, j)
            and j != q_ideal
            and contains(ctx, j, fq)
            and j != fq
        )
        if not ok:
            raise AssertionError(f"{j} is not strictly between f*Q and Q")
    return out


def _make_node(
    ctx: OrderContext,
    ideal: IdealRep,
    layer: int,
    labels: tuple[str, ...],
    with_principal: bool,
) -> LatticeNode:
    f_pow = conductor_power(ctx, layer)
    gen = is_principal_O(ctx, ideal) if with_principal else None
    return LatticeNode(
        ideal=ideal,
        norm_exp=norm_exponent(ctx, ideal),
        layer=layer,
        is_D_module=is_D_module(ctx, ideal),
        is_invertible=is_invertible(ctx, ideal),
        is_power_of_F=ideal == f_pow,
        principal_generator=gen,
        principal_known=with_principal,
        labels=labels,
    )


def basic_layer(
    ctx: OrderContext,
    sd: SplitData,
    depth: int,
    with_principals: bool = True,
) -> list[LatticeNode]:
    """All basic primary ideals, labelled, as layer-1 nodes.

    Inert and ramified lattices are finite and ignore depth.  In the split
    case the layer is infinite and gets truncated: every basic ideal of norm
    up to f**depth appears (the construction actually reaches f**(depth+1)).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    f = ctx.f
    cond = conductor_ideal(ctx)
    acc: dict[IdealRep, set[str]] = {}

    def add(ideal: IdealRep, label: str) -> None:
        if is_basic(ctx, ideal):
            acc.setdefault(ideal, set()).add(label)

    add(cond, "F")
    inter_f = intermediates(ctx, cond)
    add(inter_f[0], "fO")  # J of F is always f*O
    for a, ja in enumerate(inter_f[1:]):
        add(ja, f"J_{a}")

    if sd.stype is SplittingType.SPLIT:
        assert sd.beta is not None
        for k in range(2, depth + 1):
            t_k = f * ctx.power(sd.beta, k)
            qk = ideal_from_generators(ctx, Ring.O, [QuadInt(f ** k, 0), t_k])
            # cross-check the element construction against the D-side product
            pk_pbar = product(
                ctx, power(ctx, sd.P, k), conjugate_ideal(ctx, sd.P)
            )
            if as_o_ideal(ctx, pk_pbar) != qk:
                raise AssertionError("Q_k disagrees with the P**k * conj(P) contraction")
            qkc = conjugate_ideal(ctx, qk)
            add(qk, f"Q_{k}")
            add(qkc, f"Qbar_{k}")
            inter = intermediates(ctx, qk)
            for a, ja in enumerate(inter[1:]):
                add(ja, f"J_{a}(Q_{k})")
            interc = intermediates(ctx, qkc)
            for a, ja in enumerate(interc[1:]):
                add(ja, f"J_{a}(Qbar_{k})")
    elif sd.stype is SplittingType.RAMIFIED:
        assert sd.P is not None
        p3 = as_o_ideal(ctx, power(ctx, sd.P, 3))
        if p3 not in acc:
            raise AssertionError("P**3 is not among the intermediates of F")
        acc[p3].add("P^3")
        for a, ha in enumerate(intermediates(ctx, p3)[1:]):
            add(ha, f"H_{a}")

    nodes = [
        _make_node(ctx, ideal, 1, tuple(sorted(labels)), with_principals)
        for ideal, labels in acc.items()
    ]
    nodes.sort(key=lambda n: (n.norm_exp,) + n.ideal.sort_key())
    return nodes


def _scaled_label(label: str, n: int) -> str:
    if n == 1:
        return label
    if label == "F":
        return f"F^{n}"
    if label == "fO":
        return f"f^{n}O"
    prefix = "f*" if n == 2 else f"f^{n - 1}*"
    return prefix + label


def layer_n(ctx: OrderContext, basic: list[LatticeNode], n: int) -> list[LatticeNode]:
    """Layer n: every basic ideal scaled by f**(n-1)."""
    if n < 1:
        raise ValueError("layer index must be >= 1")
    factor = ctx.f ** (n - 1)
    out = []
    for node in basic:
        ideal = scale(node.ideal, factor)
        gen = (
            factor * node.principal_generator
            if node.principal_generator is not None
            else None
        )
        out.append(
            LatticeNode(
                ideal=ideal,
                norm_exp=node.norm_exp + 2 * (n - 1),
                layer=n,
                is_D_module=node.is_D_module,
                is_invertible=node.is_invertible,
                is_power_of_F=node.is_power_of_F,
                principal_generator=gen,
                principal_known=node.principal_known,
                labels=tuple(_scaled_label(lbl, n) for lbl in node.labels),
            )
        )
    return out


def hasse(
    ctx: OrderContext, nodes: list[LatticeNode], include_top: bool = False
) -> LatticeGraph:
    """Covering relation of containment restricted to the node set."""
    all_nodes = list(nodes)
    if include_top:
        top = LatticeNode(
            ideal=unit_ideal(Ring.O),
            norm_exp=0,
            layer=0,
            is_D_module=False,
            is_invertible=True,
            is_power_of_F=False,
            principal_generator=QuadInt(1, 0),
            principal_known=True,
            labels=("O",),
        )
        all_nodes.append(top)
    all_nodes.sort(key=lambda n: (n.layer, n.norm_exp) + n.ideal.sort_key())
    m = len(all_nodes)
    above = [
        [
            i != j
            and contains(ctx, all_nodes[i].ideal, all_nodes[j].ideal)
            and all_nodes[i].ideal != all_nodes[j].ideal
            for j in range(m)
        ]
        for i in range(m)
    ]
    edges = [
        (i, j)
        for i in range(m)
        for j in range(m)
        if above[i][j] and not any(above[i][k] and above[k][j] for k in range(m))
    ]
    return LatticeGraph(nodes=all_nodes, edges=sorted(edges))


def principal_basic_ideals(
    ctx: OrderContext, sd: SplitData, depth: int
) -> list[tuple[QuadInt, IdealRep]]:
    """Generators and ideals of all principal basic ideals up to the depth cut.

    Layer 1 always carries the tau ideals f*u*O for unit class representatives
    u.  Split case: additionally t_n * u * O and the conjugates, for n with
    norm exponent m*n + 2 <= depth + 2.  Ramified case: f*beta*u*O whenever P
    is principal with generator beta.
    """
    ug = unit_group(ctx)
    found: dict[IdealRep, QuadInt] = {}

    def add(gen: QuadInt) -> None:
        ideal = ideal_from_generators(ctx, Ring.O, [gen])
        if not is_basic(ctx, ideal):
            raise AssertionError(f"{gen} does not generate a basic ideal")
        found.setdefault(ideal, gen)

    for u in ug.coset_reps:
        add(ctx.f * u)
    if sd.stype is SplittingType.SPLIT:
        assert sd.m is not None and sd.beta is not None
        n = 1
        while sd.m * n + 2 <= depth + 2:
            t_n = ctx.f * ctx.power(sd.beta, n)
            for u in ug.coset_reps:
                add(ctx.mul(t_n, u))
                add(ctx.mul(ctx.conjugate(t_n), u))
            n += 1
    elif sd.stype is SplittingType.RAMIFIED and sd.beta is not None:
        for u in ug.coset_reps:
            add(ctx.mul(ctx.f * sd.beta, u))
    return sorted(
        ((gen, ideal) for ideal, gen in found.items()),
        key=lambda pair: pair[1].sort_key(),
    )


def principal_chain(ctx: OrderContext, t: QuadInt) -> list[IdealRep]:
    """The chain (f**i, t), i = 1..e, of all ideals containing t*O.

    t must be a basic element: t = f*(x + w*y) with x, y coprime and |norm(t)|
    a power of f.  The quotient O/tO is a chained ring, so the ideals are
    linearly ordered with norms f**i.
    """
    f = ctx.f
    if t.is_zero() or t.x % f or t.y % f:
        raise NotBasicElement(f"{t} does not lie in the conductor")
    x, y = t.x // f, t.y // f
    if gcd(x, y) != 1:
        raise NotBasicElement(f"{t} = f*(x + w*y) with gcd(x, y) != 1")
    e = f_exponent(abs(ctx.norm(t)), f)
    if e is None or e < 2:
        raise NotBasicElement(f"norm of {t} is not a power of f")
    if y % f == 0:
        # |N(x + w*y)| = 1 here, so t is an associate of f and t*O = f*O;
        # the pairs (f**i, t) would all collapse to f*O
        chain = [
            conductor_ideal(ctx),
            ideal_from_generators(ctx, Ring.O, [t]),
        ]
    else:
        chain = [
            ideal_from_generators(ctx, Ring.O, [QuadInt(f ** i, 0), t])
            for i in range(1, e + 1)
        ]
    for i, ideal in enumerate(chain, start=1):
        if ideal_norm(ideal) != f ** i:
            raise AssertionError("chain ideal has unexpected norm")
    for upper, lower in zip(chain, chain[1:]):
        if not contains(ctx, upper, lower):
            raise AssertionError("chain is not totally ordered")
    return chain
