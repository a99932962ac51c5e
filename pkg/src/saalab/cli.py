"""Command-line front end: ``saa sum|stats|hist|image|emit|verify``.

Exit codes: 0 success, 1 domain/config error, 2 usage error, 3 verification
mismatch.  File outputs are byte-deterministic; each one gets a sidecar
``<file>.manifest.json`` recording how it was produced.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .adders import ALL_KINDS, AdderKind, ConfigError, accurate_sum, approx_sum, validate_config
from .error_analysis import BoundExceededError, MODES, compare_table, histogram_percentages
from .fixed_fft import OverflowGuardError
from .image_bench import DEFAULT_FORMAT, benchmark, dump_json, fmt_real, report_csv, report_json
from .netlist import build_adder_netlist, check_equivalence, emit_verilog
from .netlist.core import GateKind
from .pgm import PGMError, read_pgm, write_pgm
from .rng import ALGORITHM, RngSpec

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class DomainError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    configs: list
    mode: str | None = None
    samples: int | None = None
    seed: int | None = None
    rng: str | None = None
    extra: dict = field(default_factory=dict)
    tool: str = "saalab"
    version: str = __version__
    started: str = ""
    finished: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer literal: {text!r}") from None


def _configs(args, allow_all: bool = True):
    names = ALL_KINDS if (allow_all and args.adder == "all") else [AdderKind.parse(args.adder)]
    out = []
    for kind in names:
        l = args.l if kind is AdderKind.LDCA else None
        k = args.k if kind is AdderKind.M_HERLOA else None
        out.append(validate_config(kind, args.n, args.p, l, k))
    return out


def _write(path: str, text: str, manifest: RunManifest) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")
    manifest.finished = _now()
    Path(path + ".manifest.json").write_text(manifest.to_json(), encoding="utf-8", newline="\n")


def cmd_sum(args) -> int:
    cfg = _configs(args, allow_all=False)[0]
    try:
        a = approx_sum(cfg, args.x, args.y).value
        e = accurate_sum(cfg, args.x, args.y).value
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    print(f"approx={a} accurate={e} error={a - e}")
    return EXIT_OK


def _manifest(args, configs, **kw) -> RunManifest:
    return RunManifest(command=args.command, configs=[c.as_dict() for c in configs],
                       started=_now(), **kw)


def _stats_rows(args, configs):
    rng = RngSpec(args.seed)
    return compare_table(configs, args.mode, args.samples, rng)


def cmd_stats(args) -> int:
    configs = _configs(args)
    rows = _stats_rows(args, configs)
    cols = ["total", "mae", "rmse", "mean_signed", "max_abs", "error_rate"]
    if args.out.endswith(".json"):
        doc = [dict(c.config.as_dict(), **{k: (v if isinstance(v, int) else float(fmt_real(v)))
                                           for k, v in c.stats.summary().items()}) for c in rows]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["adder", "n", "p"] + cols)
        for r in rows:
            s = r.stats.summary()
            w.writerow([r.kind.value, r.config.n, r.config.p]
                       + [s[c] if isinstance(s[c], int) else fmt_real(s[c]) for c in cols])
        text = buf.getvalue()
    _write(args.out, text, _manifest(args, configs, mode=args.mode, **_mc(args)))
    return EXIT_OK


def _mc(args) -> dict:
    if args.mode != "monte-carlo":
        return {}
    return {"samples": args.samples, "seed": args.seed, "rng": ALGORITHM}


def cmd_hist(args) -> int:
    configs = _configs(args, allow_all=False)
    stats = _stats_rows(args, configs)[0].stats
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["error", "count", "percent"])
    for e, pct in histogram_percentages(stats):
        w.writerow([e, stats.histogram[e], fmt_real(pct)])
    _write(args.out, buf.getvalue(), _manifest(args, configs, mode=args.mode, **_mc(args)))
    return EXIT_OK


def cmd_image(args) -> int:
    configs = _configs(args)
    corpus = []
    for path in args.input:
        try:
            corpus.append((Path(path).stem, read_pgm(path)))
        except (OSError, PGMError) as exc:
            raise DomainError(f"{path}: {exc}") from None
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    def keep(name, adder, img):
        write_pgm(outdir / f"{name}_{adder.kind.value}.pgm", img)

    try:
        report = benchmark(corpus, configs, DEFAULT_FORMAT, keep)
    except (OverflowGuardError, ValueError) as exc:
        raise DomainError(str(exc)) from None
    fmt = {"frac_bits": DEFAULT_FORMAT.frac_bits, "twiddle_bits": DEFAULT_FORMAT.twiddle_bits}
    manifest = _manifest(args, configs, extra={"format": fmt, "inputs": list(args.input)})
    _write(args.report, dump_json(report_json(report)), manifest)
    if args.csv:
        _write(args.csv, report_csv(report), manifest)
    return EXIT_OK


def cmd_emit(args) -> int:
    configs = _configs(args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    targets = [(cfg, outdir / f"{cfg.name}.v") for cfg in configs]
    if not args.force:
        existing = [str(p) for _, p in targets if p.exists()]
        if existing:
            raise DomainError(f"refusing to overwrite {', '.join(existing)} (use --force)")
    for cfg, path in targets:
        text = emit_verilog(build_adder_netlist(cfg), cfg.name)
        path.write_text(text, encoding="utf-8", newline="\n")
        print(path)
    return EXIT_OK


def _inject_fault(nl):
    """Swap the OR2 driving the carry-out for an AND2."""
    gate = nl.driver()[nl.outputs["SUM"][-1]]
    return nl.replace_gate(gate.id, GateKind.AND2)


def cmd_verify(args) -> int:
    configs = _configs(args)
    failed = False
    for cfg in configs:
        nl = build_adder_netlist(cfg)
        if args.inject_fault:
            nl = _inject_fault(nl)
        try:
            rep = check_equivalence(cfg, args.mode, args.samples, RngSpec(args.seed), netlist=nl)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        line = f"{cfg.name} pairs_checked={rep.pairs_checked} mismatches={rep.mismatches}"
        if rep.first_mismatch:
            x, y, want, got = rep.first_mismatch
            line += f" first=(x={x}, y={y}, behavioral={want}, netlist={got})"
        print(line)
        failed |= not rep.passed
    return EXIT_MISMATCH if failed else EXIT_OK


def _adder_args(p: argparse.ArgumentParser, allow_all: bool = True) -> None:
    p.add_argument("--adder", required=True,
                   help="adder kind" + (" or 'all'" if allow_all else ""))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, default=None, help="LDCA constant-one section size")
    p.add_argument("--k", type=int, default=None, help="M-HERLOA constant-one bit count")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="saa", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"saalab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="one approximate and accurate sum")
    _adder_args(p, allow_all=False)
    p.add_argument("--x", type=_int, required=True)
    p.add_argument("--y", type=_int, required=True)
    p.set_defaults(func=cmd_sum)

    for name, func, allow in (("stats", cmd_stats, True), ("hist", cmd_hist, False)):
        p = sub.add_parser(name, help="error statistics" if name == "stats" else "error histogram")
        _adder_args(p, allow_all=allow)
        p.add_argument("--mode", choices=MODES, default="exhaustive-low")
        p.add_argument("--samples", type=int, default=1_000_000)
        p.add_argument("--seed", type=_int, default=0)
        p.add_argument("--out", default="-", help="CSV (or .json for stats) path, '-' for stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("image", help="FFT/IFFT reconstruction benchmark")
    _adder_args(p)
    p.add_argument("--input", nargs="+", required=True, help="PGM files")
    p.add_argument("--outdir", required=True)
    p.add_argument("--report", required=True, help="JSON report path")
    p.add_argument("--csv", default=None, help="optional CSV report path")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("emit", help="write structural Verilog")
    _adder_args(p)
    p.add_argument("--outdir", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("verify", help="netlist vs behavioral equivalence")
    _adder_args(p)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=_int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, BoundExceededError, DomainError) as exc:
        print(f"saa: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # unknown adder names and similar bad values
        print(f"saa: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
