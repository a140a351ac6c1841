"""Command-line front end.

Subcommands: ``analytic`` (closed-form values, exact rationals or floats),
``simulate`` (one decision run of either procedure), ``figures``
(regenerate the sweep CSVs), ``reconcile`` (Monte Carlo vs. analytic
z-score report).  Every subcommand is deterministic given its full flag
set; a single --seed drives all randomness through documented
(seed, label, index) sub-streams.

Exit codes: 0 success, 1 reconciliation discrepancy, 2 usage/range error,
3 I/O error.
"""

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import classical, formulas, quantum, rngstreams, sweeps, tables

CSV_HEADER = "n,k,m,p_exact,q_exact,delta,mode"

_BOUNDS_NOTE = (
    f"bounds: N_MAX={tables.N_MAX} (materialized truth tables), "
    f"N_EXACT={formulas.N_EXACT} (exact averaged quantities), "
    f"N_MAX_Q={quantum.N_MAX_Q} (statevector simulation)"
)

_ANALYTIC_QUANTITIES = (
    "p1", "q1", "delta1", "pm", "qm", "delta_m", "pbar", "qbar", "delta_bar", "kstar",
)


@dataclass(frozen=True)
class RunConfig:
    """Resolved flags of one CLI invocation."""

    subcommand: str
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    quantity: Optional[str] = None
    procedure: Optional[str] = None
    fm: Optional[str] = None
    function_file: Optional[str] = None
    trials: int = 100_000
    seed: int = 0
    mode: str = "auto"
    fmt: str = "plain"
    out: Optional[str] = None
    which: str = "all"


def _fmt_float(x):
    return f"{x:.17g}"


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)


def _require(config, **named):
    for name, value in named.items():
        if value is None:
            raise ValueError(f"--{name} is required for '{config.quantity or config.subcommand}'")


def _analytic_values(config):
    """Return (value_exact_or_None, value_float)."""
    q = config.quantity
    n, k, m = config.n, config.k, config.m
    _require(config, n=n, k=k)
    if q in ("pm", "qm", "delta_m"):
        _require(config, m=m)
    table = {
        "p1": lambda: formulas.p1(k, n),
        "q1": lambda: formulas.q1(k, n),
        "delta1": lambda: formulas.delta1(k, n),
        "pm": lambda: formulas.pm(k, n, m),
        "qm": lambda: formulas.qm(k, n, m),
        "delta_m": lambda: formulas.delta_m(k, n, m),
        "pbar": lambda: formulas.pbar(k, n),
        "qbar": lambda: formulas.qbar(k, n),
        "delta_bar": lambda: formulas.delta_bar(k, n),
    }
    averaged = q in ("pbar", "qbar", "delta_bar")
    mode = config.mode
    if mode == "auto":
        mode = "exact" if (not averaged or n <= formulas.N_EXACT) else "float"
    if mode == "float" and averaged:
        value = {
            "pbar": formulas.pbar_float,
            "qbar": formulas.qbar_float,
            "delta_bar": formulas.delta_bar_float,
        }[q](k, n)
        return None, value
    exact = table[q]()  # raises past N_EXACT for averaged quantities
    if mode == "float":
        return None, exact.as_float
    return exact, exact.as_float


def _cmd_analytic_kstar(config):
    _require(config, n=config.n)
    kst = formulas.kstar_exact(config.n)
    closed = formulas.kstar_closed_form(config.n)
    if config.fmt == "json":
        payload = {
            "quantity": "kstar",
            "n": config.n,
            "mode": "exact",
            "kstar_exact": kst,
            "kstar_closed_form": closed,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", config.out)
    elif config.fmt == "csv":
        d = formulas.delta1(kst, config.n)
        row = (
            f"{config.n},{kst},,"
            f"{_fmt_float(formulas.p1(kst, config.n).as_float)},"
            f"{_fmt_float(formulas.q1(kst, config.n).as_float)},"
            f"{_fmt_float(d.as_float)},exact"
        )
        _emit(CSV_HEADER + "\n" + row + "\n", config.out)
    else:
        _emit(f"{kst} (exact) closed_form={_fmt_float(closed)}\n", config.out)
    return 0


def cmd_analytic(config):
    if config.quantity == "kstar":
        return _cmd_analytic_kstar(config)
    exact, value = _analytic_values(config)
    mode = "exact" if exact is not None else "float"
    if config.fmt == "json":
        payload = {
            "quantity": config.quantity,
            "n": config.n,
            "k": config.k,
            "m": config.m,
            "mode": mode,
            "value_float": value,
        }
        if exact is not None:
            payload["value_rational"] = str(exact)
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", config.out)
    elif config.fmt == "csv":
        p_col = q_col = d_col = ""
        if config.quantity in ("p1", "pm", "pbar"):
            p_col = _fmt_float(value)
        elif config.quantity in ("q1", "qm", "qbar"):
            q_col = _fmt_float(value)
        else:
            d_col = _fmt_float(value)
        m_col = "" if config.m is None else config.m
        row = f"{config.n},{config.k},{m_col},{p_col},{q_col},{d_col},{mode}"
        _emit(CSV_HEADER + "\n" + row + "\n", config.out)
    else:
        if exact is not None:
            _emit(f"{exact} (exact) = {_fmt_float(value)}\n", config.out)
        else:
            _emit(f"{_fmt_float(value)} (float)\n", config.out)
    return 0


def _load_table(config):
    if (config.fm is None) == (config.function_file is None):
        raise ValueError("give exactly one of --fm N,M or --function-file PATH")
    if config.function_file is not None:
        return tables.TruthTable.from_text(Path(config.function_file).read_text())
    try:
        n_text, m_text = config.fm.split(",")
        n, m = int(n_text), int(m_text)
    except ValueError:
        raise ValueError(f"--fm expects 'N,M' (got {config.fm!r})") from None
    return tables.make_fm(n, m, rng=rngstreams.substream(config.seed, "fm-placement"))


def cmd_simulate(config):
    tt = _load_table(config)
    _require(config, k=config.k)
    rng = rngstreams.substream(config.seed, f"simulate/{config.procedure}")
    if config.procedure == "classical":
        outcome = classical.classical_decide(tt, config.k, rng)
    else:
        outcome = quantum.quantum_decide(tt, config.k, rng)
    if config.fmt == "json":
        payload = {
            "procedure": config.procedure,
            "n": tt.n,
            "k": config.k,
            "seed": config.seed,
            "verdict": outcome.verdict.value,
            "queries_used": outcome.queries_used,
            "transcript": [list(pair) for pair in outcome.transcript],
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", config.out)
    elif config.fmt == "csv":
        _emit(
            "procedure,n,k,seed,verdict,queries_used\n"
            f"{config.procedure},{tt.n},{config.k},{config.seed},"
            f"{outcome.verdict.value},{outcome.queries_used}\n",
            config.out,
        )
    else:
        _emit(
            f"verdict={outcome.verdict.value} queries_used={outcome.queries_used}\n",
            config.out,
        )
    return 0


def _records_csv(records):
    lines = [CSV_HEADER]
    for r in records:
        m_col = "" if r.m is None else r.m
        lines.append(
            f"{r.n},{r.k},{m_col},{_fmt_float(r.p_analytic)},"
            f"{_fmt_float(r.q_analytic)},{_fmt_float(r.delta_analytic)},{r.mode}"
        )
    return "\n".join(lines) + "\n"


FIG2_M_VALUES = (3, 10, 20, 30, 40, 60)


def figure_records(which):
    if which == "1":
        return sweeps.sweep_delta1(range(5, 13))
    if which == "2":
        return sweeps.sweep_delta_m(7, FIG2_M_VALUES, range(1, 1 << 7))
    return sweeps.sweep_delta_bar([3, 6, 7])


def cmd_figures(config):
    out_dir = Path(config.out) if config.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    chosen = ("1", "2", "3") if config.which == "all" else (config.which,)
    for which in chosen:
        path = out_dir / f"fig{which}.csv"
        path.write_text(_records_csv(figure_records(which)))
        print(path)
    return 0


def _report_json(report):
    payload = {
        "ok": report.ok,
        "z_flag_threshold": sweeps.Z_FLAG,
        "rows": [dataclasses.asdict(r) for r in report.rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_reconcile(config):
    if config.trials < 1:
        raise ValueError("--trials must be >= 1")
    report = sweeps.reconcile_grid(trials=config.trials, seed=config.seed)
    _emit(_report_json(report), config.out)
    if config.out is not None:
        flagged = sum(r.flagged for r in report.rows)
        print(f"{len(report.rows)} rows, {flagged} flagged -> {config.out}")
    return 0 if report.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="constancy",
        description="Classical vs. quantum constancy testing of Boolean functions.",
        epilog=_BOUNDS_NOTE,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_analytic = sub.add_parser(
        "analytic", help="evaluate a closed-form error probability or efficiency",
        epilog=_BOUNDS_NOTE,
    )
    p_analytic.add_argument("quantity", choices=_ANALYTIC_QUANTITIES)
    p_analytic.add_argument("--n", type=int, required=True, help="bit-width")
    p_analytic.add_argument("--k", type=int, help="query/iteration budget")
    p_analytic.add_argument("--m", type=int, help="minority-output count")
    p_analytic.add_argument("--mode", choices=("exact", "float", "auto"), default="auto")
    _common_output_flags(p_analytic)

    p_sim = sub.add_parser(
        "simulate", help="run one decision procedure on a concrete function",
        epilog=_BOUNDS_NOTE,
    )
    p_sim.add_argument("--procedure", choices=("classical", "quantum"), required=True)
    p_sim.add_argument("--fm", help="construct an m-minority table: N,M")
    p_sim.add_argument("--function-file", help="load a table from the 2-line text format")
    p_sim.add_argument("--k", type=int, required=True, help="query/iteration budget")
    p_sim.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    _common_output_flags(p_sim)

    p_fig = sub.add_parser(
        "figures", help="write the sweep CSVs (fig1.csv, fig2.csv, fig3.csv)",
        epilog=_BOUNDS_NOTE,
    )
    p_fig.add_argument("--which", choices=("1", "2", "3", "all"), default="all")
    p_fig.add_argument("--out", help="output directory (default .)")

    p_rec = sub.add_parser(
        "reconcile", help="Monte Carlo vs. analytic z-score report over the default grid",
        epilog=_BOUNDS_NOTE,
    )
    p_rec.add_argument("--trials", type=int, default=100_000)
    p_rec.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    p_rec.add_argument("--out", help="write the JSON report here instead of stdout")

    return parser


def _common_output_flags(sub_parser):
    sub_parser.add_argument("--format", dest="fmt", choices=("plain", "csv", "json"),
                            default="plain")
    sub_parser.add_argument("--out", help="write output to this path instead of stdout")


def _config_from_args(args):
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in fields and v is not None})


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    handlers = {
        "analytic": cmd_analytic,
        "simulate": cmd_simulate,
        "figures": cmd_figures,
        "reconcile": cmd_reconcile,
    }
    try:
        code = handlers[config.subcommand](config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        code = 3
    sys.exit(code)


if __name__ == "__main__":
    main()
