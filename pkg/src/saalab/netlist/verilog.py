"""Structural Verilog-2001 emission, and a reader for exactly that subset."""

from __future__ import annotations

import re

from .core import Gate, GateKind, Netlist, NetlistError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_$]*\Z")
_KEYWORDS = frozenset(
    "always and assign begin buf case default else end endcase endmodule function if "
    "initial inout input integer module nand nor not or output parameter reg supply0 "
    "supply1 wire xnor xor".split()
)

_EXPR = {
    GateKind.AND2: "{0} & {1}",
    GateKind.OR2: "{0} | {1}",
    GateKind.NAND2: "~({0} & {1})",
    GateKind.NOR2: "~({0} | {1})",
    GateKind.XOR2: "{0} ^ {1}",
    GateKind.XNOR2: "~({0} ^ {1})",
    GateKind.INV: "~{0}",
    GateKind.BUF: "{0}",
    GateKind.MUX21: "{2} ? {1} : {0}",
    GateKind.TIEH: "1'b1",
    GateKind.TIEL: "1'b0",
}


def valid_identifier(name: str) -> bool:
    return bool(_IDENT.match(name)) and name not in _KEYWORDS


def _decl(width: int) -> str:
    return f"[{width - 1}:0] " if width > 1 else ""


def emit_verilog(netlist: Netlist, module_name: str | None = None) -> str:
    """Render one self-contained module; output is a pure function of the netlist."""
    name = netlist.name if module_name is None else module_name
    if not valid_identifier(name):
        raise ValueError(f"invalid Verilog module name {name!r}")
    order = netlist.topological_order()

    names: dict = {}
    for port, nets in netlist.inputs.items():
        for i, net in enumerate(nets):
            names[net] = f"{port}[{i}]" if len(nets) > 1 else port
    for g in order:
        names[g.output] = f"w{g.id}"
    drivers = netlist.driver()

    ports = list(netlist.inputs) + list(netlist.outputs)
    lines = [f"module {name} ({', '.join(ports)});"]
    # group equal-width inputs the way "input [n-1:0] X, Y;" is usually written
    by_width: dict = {}
    for port, nets in netlist.inputs.items():
        by_width.setdefault(len(nets), []).append(port)
    for width, group in by_width.items():
        lines.append(f"  input {_decl(width)}{', '.join(group)};")
    for port, nets in netlist.outputs.items():
        lines.append(f"  output {_decl(len(nets))}{port};")
    for g in order:
        lines.append(f"  wire w{g.id};")
    for g in order:
        expr = _EXPR[g.kind].format(*(names[n] for n in g.inputs))
        lines.append(f"  assign w{g.id} = {expr};")
    for port, nets in netlist.outputs.items():
        for i, net in enumerate(nets):
            lhs = f"{port}[{i}]" if len(nets) > 1 else port
            g = drivers.get(net)
            rhs = _EXPR[g.kind] if g is not None and g.kind.is_tie else names[net]
            lines.append(f"  assign {lhs} = {rhs};")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


_MODULE = re.compile(r"module\s+(\w+)\s*\(([^)]*)\)\s*;")
_PORT = re.compile(r"(input|output)\s+(?:\[(\d+):0\]\s+)?([\w\s,]+);")
_ASSIGN = re.compile(r"assign\s+([\w\[\]]+)\s*=\s*(.+?)\s*;")
_REF = r"(\w+(?:\[\d+\])?|1'b[01])"
_FORMS = [
    (re.compile(rf"~\(\s*{_REF}\s*&\s*{_REF}\s*\)\Z"), GateKind.NAND2),
    (re.compile(rf"~\(\s*{_REF}\s*\|\s*{_REF}\s*\)\Z"), GateKind.NOR2),
    (re.compile(rf"~\(\s*{_REF}\s*\^\s*{_REF}\s*\)\Z"), GateKind.XNOR2),
    (re.compile(rf"{_REF}\s*\?\s*{_REF}\s*:\s*{_REF}\Z"), GateKind.MUX21),
    (re.compile(rf"{_REF}\s*&\s*{_REF}\Z"), GateKind.AND2),
    (re.compile(rf"{_REF}\s*\|\s*{_REF}\Z"), GateKind.OR2),
    (re.compile(rf"{_REF}\s*\^\s*{_REF}\Z"), GateKind.XOR2),
    (re.compile(rf"~\s*{_REF}\Z"), GateKind.INV),
    (re.compile(rf"{_REF}\Z"), GateKind.BUF),
]


def _parse_expr(expr: str):
    for pattern, kind in _FORMS:
        m = pattern.match(expr)
        if m:
            refs = list(m.groups())
            if kind is GateKind.MUX21:
                sel, d1, d0 = refs
                refs = [d0, d1, sel]
            if kind is GateKind.BUF and refs[0] in ("1'b1", "1'b0"):
                return (GateKind.TIEH if refs[0] == "1'b1" else GateKind.TIEL), []
            return kind, refs
    raise NetlistError(f"unsupported expression {expr!r}")


def read_verilog(text: str) -> Netlist:
    """Parse text produced by :func:`emit_verilog` back into a netlist.

    Only the emitted subset is understood: scalar/vector ports, ``wire``
    declarations and one ``assign`` per net.
    """
    body = re.sub(r"//[^\n]*", "", text)
    m = _MODULE.search(body)
    if not m:
        raise NetlistError("no module header found")
    nl = Netlist(m.group(1))
    widths: dict = {}
    kinds: dict = {}
    for pm in _PORT.finditer(body):
        direction, msb, names = pm.groups()
        width = int(msb) + 1 if msb is not None else 1
        for port in (s.strip() for s in names.split(",")):
            widths[port] = width
            kinds[port] = direction
    for port, width in widths.items():
        if kinds[port] == "input":
            nl.add_input(port, width)

    assigns = [(a.group(1), a.group(2)) for a in _ASSIGN.finditer(body)]
    wire_net: dict = {}
    for lhs, _ in assigns:
        if lhs.startswith("w") and lhs[1:].isdigit():
            wire_net[lhs] = nl.new_net()

    def resolve(ref: str):
        if ref in wire_net:
            return wire_net[ref]
        pm = re.match(r"(\w+)(?:\[(\d+)\])?\Z", ref)
        if pm and pm.group(1) in nl.inputs:
            return nl.inputs[pm.group(1)][int(pm.group(2) or 0)]
        raise NetlistError(f"unknown signal {ref!r}")

    out_bits: dict = {}
    for lhs, expr in assigns:
        kind, refs = _parse_expr(expr)
        if lhs in wire_net:
            nl.gates.append(Gate(len(nl.gates), kind, tuple(resolve(r) for r in refs), wire_net[lhs]))
            continue
        pm = re.match(r"(\w+)(?:\[(\d+)\])?\Z", lhs)
        if not pm or kinds.get(pm.group(1)) != "output":
            raise NetlistError(f"assignment to unknown target {lhs!r}")
        if kind.is_tie:
            net = nl.add(kind)
        elif kind is GateKind.BUF:
            net = resolve(refs[0])
        else:
            net = nl.add(kind, *(resolve(r) for r in refs))
        out_bits[(pm.group(1), int(pm.group(2) or 0))] = net

    for port, width in widths.items():
        if kinds[port] == "output":
            try:
                nl.outputs[port] = [out_bits[(port, i)] for i in range(width)]
            except KeyError as exc:
                raise NetlistError(f"output bit {port}[{exc.args[0][1]}] never assigned") from None
    nl.check()
    return nl
