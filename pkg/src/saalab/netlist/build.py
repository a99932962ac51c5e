"""Netlist generators for the accurate adder and every approximate adder.

The exact part is a chain of carry-lookahead groups: 4-bit groups from the
LSB up, plus one narrower group at the MSB end when the width is not a
multiple of four.  Groups are linked by ripple carry.
"""

from __future__ import annotations

from ..adders import NO_CARRY_KINDS, AdderConfig, AdderKind
from .core import ClaGroup, GateKind, Netlist

G = GateKind
GROUP = 4
PRECISE = "precise"
IMPRECISE = "imprecise"


def group_widths(width: int) -> list[int]:
    """LSB-first group sizes; e.g. ``22 -> [4, 4, 4, 4, 4, 2]``."""
    full, rest = divmod(width, GROUP)
    return [GROUP] * full + ([rest] if rest else [])


def _tree(nl: Netlist, kind: GateKind, nets: list, region: str) -> int:
    """Balanced tree of 2-input ``kind`` gates over ``nets``."""
    while len(nets) > 1:
        nxt = [nl.add(kind, nets[i], nets[i + 1], region=region) for i in range(0, len(nets) - 1, 2)]
        if len(nets) % 2:
            nxt.append(nets[-1])
        nets = nxt
    return nets[0]


def _cla_group(nl: Netlist, xs, ys, cin: int, region: str):
    """One lookahead group; returns ``(sum_nets, carry_out)``."""
    w = len(xs)
    g = [nl.add(G.AND2, xs[i], ys[i], region=region) for i in range(w)]
    p = [nl.add(G.XOR2, xs[i], ys[i], region=region) for i in range(w)]
    prods: dict = {}

    def prod(hi: int, lo: int) -> int:
        # p[hi] & p[hi-1] & ... & p[lo]
        key = (hi, lo)
        if key not in prods:
            prods[key] = _tree(nl, G.AND2, p[lo:hi + 1][::-1], region)
        return prods[key]

    carries = [cin]
    for i in range(w):
        terms = [g[i]]
        for j in range(i - 1, -1, -1):
            terms.append(nl.add(G.AND2, prod(i, j + 1), g[j], region=region))
        terms.append(nl.add(G.AND2, prod(i, 0), cin, region=region))
        carries.append(_tree(nl, G.OR2, terms, region))
    sums = [nl.add(G.XOR2, p[i], carries[i], region=region) for i in range(w)]
    return sums, carries[w]


def _cla_into(nl: Netlist, xs, ys, cin: int, lsb: int = 0, region: str = PRECISE):
    sums = []
    carry = cin
    offset = 0
    for w in group_widths(len(xs)):
        s, cout = _cla_group(nl, xs[offset:offset + w], ys[offset:offset + w], carry, region)
        nl.groups.append(ClaGroup(lsb + offset, w, carry, cout))
        sums += s
        carry = cout
        offset += w
    return sums, carry


def build_precise_cla(width: int, has_carry_in: bool = False) -> Netlist:
    """Standalone exact adder: ports ``X, Y`` (+ ``CIN``) and ``SUM[width:0]``."""
    if width < 1:
        raise ValueError("width must be >= 1")
    nl = Netlist(f"cla_w{width}" + ("_cin" if has_carry_in else ""))
    xs = nl.add_input("X", width)
    ys = nl.add_input("Y", width)
    cin = nl.add_input("CIN", 1)[0] if has_carry_in else nl.add(G.TIEL, region=PRECISE)
    nl.precise_carry_in = cin
    sums, cout = _cla_into(nl, xs, ys, cin)
    nl.outputs["SUM"] = sums + [cout]
    return nl


def _imprecise_into(nl: Netlist, cfg: AdderConfig, xs, ys):
    """Low ``p`` sum nets and the internal carry net (None if there is none)."""
    kind, p = cfg.kind, cfg.p
    R = IMPRECISE

    def add(k, *a):
        return nl.add(k, *a, region=R)

    top = p - 1
    if kind is AdderKind.ACCURATE:
        sums, cout = _cla_into(nl, xs, ys, add(G.TIEL), region=R)
        return sums, cout
    if kind in (AdderKind.LOA, AdderKind.LOAWA):
        sums = [add(G.OR2, xs[i], ys[i]) for i in range(p)]
        return sums, (add(G.AND2, xs[top], ys[top]) if kind is AdderKind.LOA else None)
    if kind is AdderKind.APPROX5:
        return [add(G.BUF, ys[i]) for i in range(p)], xs[top]
    if kind is AdderKind.LZTA:
        return [add(G.TIEL) for _ in range(p)], add(G.OR2, xs[top], ys[top])
    if kind is AdderKind.LDCA:
        sums = [add(G.TIEH) for _ in range(cfg.l)] + [add(G.BUF, ys[i]) for i in range(cfg.l, p)]
        return sums, xs[top]
    if kind is AdderKind.HEAA:
        sums = [add(G.OR2, xs[i], ys[i]) for i in range(p - 1)]
        c = add(G.AND2, xs[top], ys[top])
        o = add(G.OR2, xs[top], ys[top])
        sums.append(add(G.MUX21, o, add(G.TIEL), c))
        return sums, c

    sec = p - 2
    if kind is AdderKind.SETA:
        a = add(G.AND2, xs[sec], ys[sec])
        sums = [add(G.OR2, add(G.OR2, xs[i], ys[i]), a) for i in range(sec)]
        sums += [add(G.OR2, xs[sec], ys[sec]), add(G.OR2, xs[top], ys[top])]
        return sums, None
    if kind is AdderKind.OLOCA:
        sums = [add(G.TIEH) for _ in range(sec)]
        sums += [add(G.OR2, xs[sec], ys[sec]), add(G.OR2, xs[top], ys[top])]
        return sums, add(G.AND2, xs[top], ys[top])
    if kind in (AdderKind.M_HEAA, AdderKind.HOERAA, AdderKind.HOANED):
        sums = [add(G.TIEH) for _ in range(sec)]
        sums.append(add(G.OR2, xs[sec], ys[sec]))
        c = add(G.AND2, xs[top], ys[top])
        o = add(G.OR2, xs[top], ys[top])
        if kind is AdderKind.M_HEAA:
            sums.append(add(G.MUX21, o, add(G.TIEL), c))
        else:
            a = add(G.AND2, xs[sec], ys[sec])
            d0 = o if kind is AdderKind.HOERAA else add(G.OR2, o, a)
            sums.append(add(G.MUX21, d0, a, c))
        return sums, c

    # HERLOA / M-HERLOA
    xo = add(G.XOR2, xs[top], ys[top])
    a = add(G.AND2, xs[sec], ys[sec])
    s_top = add(G.OR2, xo, a)
    nand = add(G.NAND2, add(G.INV, xo), a)
    s_sec = add(G.AND2, nand, add(G.OR2, xs[sec], ys[sec]))
    t = add(G.AND2, xo, a)
    ones = cfg.k if kind is AdderKind.M_HERLOA else 0
    sums = [add(G.TIEH) for _ in range(ones)]
    sums += [add(G.OR2, add(G.OR2, xs[i], ys[i]), t) for i in range(ones, sec)]
    sums += [s_sec, s_top]
    return sums, add(G.AND2, xs[top], ys[top])


def build_imprecise(cfg: AdderConfig) -> Netlist:
    """The imprecise part alone: ports ``X, Y`` of ``p`` bits, ``SUM[p-1:0]``, ``CARRY``."""
    if cfg.p < 1:
        raise ValueError("imprecise part needs p >= 1")
    nl = Netlist(f"{cfg.name}_imprecise")
    xs = nl.add_input("X", cfg.p)
    ys = nl.add_input("Y", cfg.p)
    sums, carry = _imprecise_into(nl, cfg, xs, ys)
    if carry is None:
        carry = nl.add(G.TIEL, region=IMPRECISE)
    nl.outputs["SUM"] = sums
    nl.outputs["CARRY"] = [carry]
    return nl


def build_adder_netlist(cfg: AdderConfig) -> Netlist:
    """Complete ``n``-bit adder with ``SUM[n:0]``."""
    nl = Netlist(cfg.name)
    xs = nl.add_input("X", cfg.n)
    ys = nl.add_input("Y", cfg.n)
    if cfg.kind is AdderKind.ACCURATE or cfg.p == 0:
        cin = nl.add(G.TIEL, region=PRECISE)
        nl.precise_carry_in = cin
        sums, cout = _cla_into(nl, xs, ys, cin)
        nl.outputs["SUM"] = sums + [cout]
        return nl

    p = cfg.p
    low, carry = _imprecise_into(nl, cfg, xs[:p], ys[:p])
    if carry is None:
        assert cfg.kind in NO_CARRY_KINDS
        carry = nl.add(G.TIEL, region=PRECISE)
    nl.precise_carry_in = carry
    high, cout = _cla_into(nl, xs[p:], ys[p:], carry, lsb=p)
    nl.outputs["SUM"] = low + high + [cout]
    return nl
