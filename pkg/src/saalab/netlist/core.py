"""Gate-level netlists: a small DAG of single-output gates over named ports.

Nets are integers.  Port bits are nets too; every other net is the output
of exactly one gate.  Evaluation is bit-sliced: each net carries a
``uint64`` array whose bit ``j`` of word ``w`` is sample ``64*w + j``.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

_ONES = np.uint64(0xFFFF_FFFF_FFFF_FFFF)


class GateKind(enum.Enum):
    AND2 = "and2"
    OR2 = "or2"
    NAND2 = "nand2"
    NOR2 = "nor2"
    XOR2 = "xor2"
    XNOR2 = "xnor2"
    INV = "inv"
    BUF = "buf"
    MUX21 = "mux21"  # inputs (d0, d1, sel)
    TIEH = "tieh"
    TIEL = "tiel"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def is_tie(self) -> bool:
        return self in (GateKind.TIEH, GateKind.TIEL)


_ARITY = {k: 2 for k in GateKind}
_ARITY.update({GateKind.INV: 1, GateKind.BUF: 1, GateKind.MUX21: 3,
               GateKind.TIEH: 0, GateKind.TIEL: 0})

TWO_INPUT = frozenset(k for k in GateKind if k.arity == 2)


class NetlistError(ValueError):
    """Structural problem: cycle, undriven net, multiple drivers, bad arity."""


@dataclass(frozen=True)
class Gate:
    id: int
    kind: GateKind
    inputs: tuple
    output: int
    region: str = ""


@dataclass(frozen=True)
class ClaGroup:
    lsb: int
    width: int
    carry_in: int
    carry_out: int


@dataclass
class Netlist:
    """A combinational netlist with ordered input and output ports.

    ``inputs`` and ``outputs`` map port names to LSB-first lists of nets.
    """

    name: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    gates: list = field(default_factory=list)
    groups: list = field(default_factory=list)
    precise_carry_in: Optional[int] = None
    _next_net: int = 0

    def new_net(self) -> int:
        net = self._next_net
        self._next_net += 1
        return net

    def add_input(self, name: str, width: int) -> list[int]:
        nets = [self.new_net() for _ in range(width)]
        self.inputs[name] = nets
        return nets

    def add(self, kind: GateKind, *inputs: int, region: str = "") -> int:
        if len(inputs) != kind.arity:
            raise NetlistError(f"{kind.name} takes {kind.arity} inputs, got {len(inputs)}")
        out = self.new_net()
        self.gates.append(Gate(len(self.gates), kind, tuple(inputs), out, region))
        return out

    def tie(self, value: int, region: str = "") -> int:
        return self.add(GateKind.TIEH if value else GateKind.TIEL, region=region)

    @property
    def input_nets(self) -> set:
        return {n for nets in self.inputs.values() for n in nets}

    def driver(self) -> dict:
        """Map from net to the gate driving it."""
        out = {}
        for g in self.gates:
            if g.output in out:
                raise NetlistError(f"net {g.output} has more than one driver")
            out[g.output] = g
        return out

    def count(self, kind: GateKind, region: Optional[str] = None) -> int:
        return sum(1 for g in self.gates if g.kind is kind and (region is None or g.region == region))

    def topological_order(self) -> list[Gate]:
        """Gates sorted so inputs come first; ties broken by gate id.

        Raises on cycles, undriven nets, doubly driven nets, undriven outputs.
        """
        drivers = self.driver()
        primary = self.input_nets
        for net in drivers:
            if net in primary:
                raise NetlistError(f"input net {net} is also driven by a gate")
        for g in self.gates:
            if len(g.inputs) != g.kind.arity:
                raise NetlistError(f"gate {g.id} has wrong arity for {g.kind.name}")
            for net in g.inputs:
                if net not in primary and net not in drivers:
                    raise NetlistError(f"gate {g.id} reads floating net {net}")
        for port, nets in self.outputs.items():
            for i, net in enumerate(nets):
                if net not in primary and net not in drivers:
                    raise NetlistError(f"output {port}[{i}] is not driven")

        pending = {g.id: sum(1 for n in g.inputs if n in drivers) for g in self.gates}
        readers: dict = {}
        for g in self.gates:
            for n in g.inputs:
                if n in drivers:
                    readers.setdefault(n, []).append(g.id)
        ready = [gid for gid, c in pending.items() if c == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            gid = heapq.heappop(ready)
            g = self.gates[gid]
            order.append(g)
            for r in readers.get(g.output, ()):
                pending[r] -= 1
                if pending[r] == 0:
                    heapq.heappush(ready, r)
        if len(order) != len(self.gates):
            raise NetlistError("netlist contains a combinational cycle")
        return order

    def check(self) -> None:
        self.topological_order()

    def replace_gate(self, gate_id: int, kind: GateKind) -> "Netlist":
        """Copy with one gate's function swapped (same arity); for fault injection."""
        old = self.gates[gate_id]
        if kind.arity != old.kind.arity:
            raise NetlistError("replacement gate must have the same arity")
        gates = list(self.gates)
        gates[gate_id] = Gate(old.id, kind, old.inputs, old.output, old.region)
        return Netlist(self.name, dict(self.inputs), dict(self.outputs), gates,
                       list(self.groups), self.precise_carry_in, self._next_net)


def _pack(values, width: int, nwords: int) -> list[np.ndarray]:
    """Bit-slice ``values`` (uint64 array) into ``width`` lane arrays."""
    out = []
    for i in range(width):
        bits = ((values >> np.uint64(i)) & np.uint64(1)).astype(np.uint8)
        packed = np.packbits(bits, bitorder="little")
        buf = np.zeros(nwords * 8, dtype=np.uint8)
        buf[: packed.size] = packed
        out.append(buf.view(np.uint64))
    return out


def _unpack(lanes: Iterable[np.ndarray], count: int) -> np.ndarray:
    total = np.zeros(count, dtype=np.uint64)
    for i, lane in enumerate(lanes):
        bits = np.unpackbits(lane.view(np.uint8), bitorder="little")[:count]
        total |= bits.astype(np.uint64) << np.uint64(i)
    return total


def _apply(kind: GateKind, a: list) -> np.ndarray:
    if kind is GateKind.AND2:
        return a[0] & a[1]
    if kind is GateKind.OR2:
        return a[0] | a[1]
    if kind is GateKind.NAND2:
        return ~(a[0] & a[1])
    if kind is GateKind.NOR2:
        return ~(a[0] | a[1])
    if kind is GateKind.XOR2:
        return a[0] ^ a[1]
    if kind is GateKind.XNOR2:
        return ~(a[0] ^ a[1])
    if kind is GateKind.INV:
        return ~a[0]
    if kind is GateKind.BUF:
        return a[0]
    if kind is GateKind.MUX21:
        return (a[2] & a[1]) | (~a[2] & a[0])
    raise AssertionError(kind)


def evaluate_ports(netlist: Netlist, values: dict) -> dict:
    """Evaluate on a batch; ``values`` maps every input port to ints/arrays.

    Returns a dict of output port name to ``uint64`` arrays (or ints when
    all inputs were scalars).
    """
    order = netlist.topological_order()
    scalar = all(np.ndim(v) == 0 for v in values.values())
    arrays = {k: np.atleast_1d(np.asarray(v, dtype=np.uint64)) for k, v in values.items()}
    missing = set(netlist.inputs) - set(arrays)
    if missing:
        raise NetlistError(f"no values for input ports {sorted(missing)}")
    count = max(a.size for a in arrays.values())
    arrays = {k: np.broadcast_to(a, (count,)) for k, a in arrays.items()}
    nwords = (count + 63) // 64

    lanes: dict = {}
    for port, nets in netlist.inputs.items():
        for net, lane in zip(nets, _pack(arrays[port], len(nets), nwords)):
            lanes[net] = lane
    zeros = np.zeros(nwords, dtype=np.uint64)
    ones = np.full(nwords, _ONES)
    for g in order:
        if g.kind is GateKind.TIEH:
            lanes[g.output] = ones
        elif g.kind is GateKind.TIEL:
            lanes[g.output] = zeros
        else:
            lanes[g.output] = _apply(g.kind, [lanes[n] for n in g.inputs])

    result = {}
    for port, nets in netlist.outputs.items():
        v = _unpack((lanes[n] for n in nets), count)
        result[port] = int(v[0]) if scalar else v
    return result


def evaluate(netlist: Netlist, x, y, chunk: int = 1 << 18):
    """``SUM`` for operands ``x, y`` (ints or equal-length arrays)."""
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return evaluate_ports(netlist, {"X": int(x), "Y": int(y)})["SUM"]
    x = np.asarray(x, dtype=np.uint64)
    y = np.asarray(y, dtype=np.uint64)
    x, y = np.broadcast_arrays(x, y)
    out = np.empty(x.size, dtype=np.uint64)
    xf, yf = x.ravel(), y.ravel()
    for lo in range(0, x.size, chunk):
        hi = min(lo + chunk, x.size)
        out[lo:hi] = evaluate_ports(netlist, {"X": xf[lo:hi], "Y": yf[lo:hi]})["SUM"]
    return out.reshape(x.shape)
