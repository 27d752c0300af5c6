"""Command-line entry point ``paraprod``."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .calderon import ScaleGrid, make_bump_pair
from .field import GridSpec
from .experiments import EXPERIMENTS, ExperimentConfig, run_inequality, run_oracle_suite
from .io import norm_row, read_config, read_field, write_norm_rows
from .norms import (NormConfig, bmo_local_norm, bmo_seminorm, bmo_sigma_norm, carleson_norm,
                    h1_norm, hardy_maximal_norm, weighted_average_sup, xw_norm)
from .symbol import SigmaSymbol
from .weights import BUILTINS, builtin_weight, default_s_samples, validate_admissible

log = logging.getLogger("paraprod")

NORMS = ("sup", "l1", "bmo", "bmo_local", "xw", "bmo_sigma", "h1", "hardy_maximal",
         "weighted_average_sup", "carleson")

# option name -> (type, ExperimentConfig field)
_VERIFY_KEYS = {
    "inequality": (str, "experiment"),
    "dim": (int, "dim"),
    "n": (int, "n"),
    "period": (float, "period"),
    "weight": (str, "weight"),
    "alpha": (float, "weight_alpha"),
    "bump_alpha": (float, "bump_alpha"),
    "bump_beta": (float, "bump_beta"),
    "profile": (str, "profile"),
    "nodes_per_octave": (int, "nodes_per_octave"),
    "corpus_size": (int, "corpus_size"),
    "trials": (int, "trials"),
    "dilations": (None, "dilations"),
    "seed": (int, "seed"),
    "out": (str, "out"),
    "s": (float, "s"),
    "band": (str, "band"),
    "symbol": (str, "symbol"),
}


def parse_dilations(text: str) -> tuple[int, ...]:
    """``"-3..3"`` or a comma-separated list such as ``"-1,0,1"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = (int(p) for p in text.split(".."))
        if hi < lo:
            raise ValueError(f"empty dilation range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(p) for p in text.split(","))


def _join_negative(argv):
    # "--dilations -3..3" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for a in it:
        if a == "--dilations":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--dilations={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paraprod",
                                description="Paraproduct and weighted BMO numerics on periodic grids.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("validate-weights", help="sampled check of the weight axioms")
    w.add_argument("--weight", choices=BUILTINS, default="log")
    w.add_argument("--alpha", type=float, default=1.0, help="exponent for log_power")
    w.add_argument("--out", help="write the JSON report here")

    o = sub.add_parser("oracle", help="compare fast paths with brute-force oracles")
    o.add_argument("--n", type=int, default=64)
    o.add_argument("--seed", type=int, default=42)
    o.add_argument("--out", help="CSV report path")

    v = sub.add_parser("verify", help="run a boundedness-ratio experiment")
    v.add_argument("--config", help="INI file; keys mirror the flags ([verify] section)")
    v.add_argument("--inequality", choices=EXPERIMENTS)
    v.add_argument("--dim", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--period", type=float)
    v.add_argument("--weight", choices=BUILTINS)
    v.add_argument("--alpha", type=float)
    v.add_argument("--bump-alpha", type=float)
    v.add_argument("--bump-beta", type=float)
    v.add_argument("--profile", choices=("bump", "quintic"))
    v.add_argument("--nodes-per-octave", type=int)
    v.add_argument("--corpus-size", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--dilations", help="range such as -3..3 or a list -1,0,1")
    v.add_argument("--seed", type=int)
    v.add_argument("--s", type=float, help="smoothness for kato-ponce")
    v.add_argument("--band", choices=("fixed", "covariant"))
    v.add_argument("--symbol", help="cm symbol: cm_one, kato_ponce_1/2/3 or a .csv table")
    v.add_argument("--out", help="CSV table; the JSON summary goes next to it")
    v.add_argument("--plot-data", action="store_true", help="also write (x, y) columns")

    nm = sub.add_parser("norms", help="evaluate norms of a stored field")
    nm.add_argument("--input", required=True, help=".bin or .csv field file")
    nm.add_argument("--all", action="store_true")
    nm.add_argument("--norm", action="append", choices=NORMS, default=[])
    nm.add_argument("--weight", choices=BUILTINS, default="log")
    nm.add_argument("--alpha", type=float, default=1.0)
    nm.add_argument("--out", help="JSON output path")

    sg = sub.add_parser("sigma", help="export the radial symbol sigma_w as CSV")
    sg.add_argument("--weight", choices=BUILTINS, default="log")
    sg.add_argument("--alpha", type=float, default=1.0)
    sg.add_argument("--n", type=int, default=1024)
    sg.add_argument("--period", type=float, default=2 * math.pi)
    sg.add_argument("--out", required=True)
    return p


def verify_config(args) -> ExperimentConfig:
    """Merge defaults, the config file and explicit flags (flags win)."""
    values: dict = {}
    if args.config:
        for key, raw in read_config(args.config, "verify").items():
            if key not in _VERIFY_KEYS and key != "plot_data":
                raise ValueError(f"unknown config key {key!r}")
            if key != "plot_data":
                values[key] = raw
            else:
                args.plot_data = args.plot_data or raw.strip().lower() in ("1", "true", "yes")
    for key in _VERIFY_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    kwargs = {}
    for key, raw in values.items():
        typ, name = _VERIFY_KEYS[key]
        if key == "dilations":
            kwargs[name] = parse_dilations(str(raw))
        else:
            kwargs[name] = typ(raw)
    return ExperimentConfig(**kwargs)


def _write_table(table, out, plot):
    if out is None:
        sys.stdout.write(table.to_csv())
        print(table.to_json())
        return
    path = Path(out)
    path.write_text(table.to_csv())
    path.with_suffix(".json").write_text(table.to_json() + "\n")
    if plot:
        path.with_suffix(".plot.csv").write_text(table.plot_data())


def cmd_validate(args) -> int:
    w = builtin_weight(args.weight, args.alpha)
    rep = validate_admissible(w, default_s_samples())
    text = json.dumps(rep.as_dict(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    for ax, ok in sorted(rep.passed.items()):
        print(f"{ax}: {'pass' if ok else 'FAIL'}")
    print(f"{w.label}: {'admissible' if rep.admissible else 'NOT admissible'} on "
          f"t in [{rep.t_range[0]:.3g}, {rep.t_range[1]:.3g}]")
    return 0 if rep.admissible else 1


def cmd_oracle(args) -> int:
    table = run_oracle_suite(ExperimentConfig(experiment="oracle", oracle_n=args.n,
                                              seed=args.seed))
    if args.out:
        Path(args.out).write_text(table.to_csv())
    for r in table.rows:
        print(f"{r['operation']:<45} {r['max_rel_error']:.3e}  "
              f"{'pass' if r['passed'] else 'FAIL'} (tol {r['tolerance']:g})")
    return 0 if table.summary["passed"] else 1


def cmd_verify(args) -> int:
    cfg = verify_config(args)
    table = run_inequality(cfg)
    _write_table(table, cfg.out, args.plot_data)
    s = table.summary
    log.info("max ratio %.6g, p95 %.6g, dilation slope %.4f", s["max_ratio"], s["p95_ratio"],
             s["dilation_slope"])
    return 0


def cmd_norms(args) -> int:
    f = read_field(args.input)
    names = list(NORMS) if args.all else args.norm
    if not names:
        raise SystemExit("choose --all or at least one --norm")
    pair = make_bump_pair()
    grid = f.grid
    cfg = NormConfig.for_grid(grid, pair)
    w = builtin_weight(args.weight, args.alpha)
    params = {"weight": w.label, "alpha": pair.alpha, "beta": pair.beta}
    sym = None
    rows = []
    for name in names:
        if name == "sup":
            val = f.sup()
        elif name == "l1":
            val = f.l1()
        elif name == "bmo":
            val = bmo_seminorm(f, cfg)
        elif name == "bmo_local":
            val = bmo_local_norm(f, cfg)
        elif name == "xw":
            val = xw_norm(f, w, pair, cfg)
        elif name == "bmo_sigma":
            sym = sym or SigmaSymbol(w, pair, cfg.scales, grid)
            val = bmo_sigma_norm(f, sym, cfg)
        elif name == "h1":
            val = h1_norm(f, cfg)
        elif name == "hardy_maximal":
            val = hardy_maximal_norm(f, cfg)
        elif name == "weighted_average_sup":
            val = weighted_average_sup(f, w, cfg)
        else:
            val = carleson_norm(f, pair, cfg)
        rows.append(norm_row(Path(args.input).name, name, val, grid, params))
    text = write_norm_rows(rows, args.out)
    if not args.out:
        print(text)
    return 0


def cmd_sigma(args) -> int:
    grid = GridSpec(1, args.n, args.period)
    pair = make_bump_pair()
    sym = SigmaSymbol(builtin_weight(args.weight, args.alpha), pair,
                      ScaleGrid.covering(grid, pair), grid)
    sym.to_csv(args.out)
    return 0


_COMMANDS = {"validate-weights": cmd_validate, "oracle": cmd_oracle, "verify": cmd_verify,
             "norms": cmd_norms, "sigma": cmd_sigma}


def main(argv=None) -> int:
    argv = _join_negative(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
