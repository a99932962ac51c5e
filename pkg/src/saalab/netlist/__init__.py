from .build import build_adder_netlist, build_imprecise, build_precise_cla, group_widths
from .core import ClaGroup, Gate, GateKind, Netlist, NetlistError, evaluate, evaluate_ports
from .equivalence import EquivalenceReport, check_equivalence
from .verilog import emit_verilog, read_verilog

__all__ = [
    "ClaGroup",
    "EquivalenceReport",
    "Gate",
    "GateKind",
    "Netlist",
    "NetlistError",
    "build_adder_netlist",
    "build_imprecise",
    "build_precise_cla",
    "check_equivalence",
    "emit_verilog",
    "evaluate",
    "evaluate_ports",
    "group_widths",
    "read_verilog",
]
