"""Command-line front end: ad-hoc metric queries, phase-space grids,
parameter sweeps, and bundled reproduction recipes, with CSV/JSON
output and an optional brute-force audit mode.

Exit codes: 0 success, 1 oracle-audit deviation, 2 invalid input,
3 numerical non-convergence.  CATLAB_THREADS caps internal parallelism.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fock_oracle, metrics, sweep, wigner
from .catalysis import CatalysisParams, default_n_max, normalization, output_amplitudes
from .fockvec import TruncationError
from .polynomials import OrderCapError
from .wigner import ConvergenceError, GridSpec, ThermalChannel

ORACLE_TOL = 1e-6

_ANGLE_TOKENS = {
    "pi": math.pi,
    "pi/2": math.pi / 2,
    "pi/3": math.pi / 3,
    "pi/4": math.pi / 4,
    "pi/5": math.pi / 5,
    "pi/6": math.pi / 6,
}


def parse_theta(text: str) -> float:
    """Angle in radians, or one of the exact tokens pi, pi/2..pi/6."""
    token = text.strip().replace(" ", "")
    if token in _ANGLE_TOKENS:
        return _ANGLE_TOKENS[token]
    try:
        return float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"theta {text!r} is neither a number nor one of {sorted(_ANGLE_TOKENS)}"
        ) from None


def parse_z(text: str) -> complex:
    """Complex amplitude as 're' or 're,im'."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"z {text!r} is not 're' or 're,im'")


def parse_grid(text: str) -> GridSpec:
    """Grid spec 'LO:HI:N' (both axes) or 'QLO:QHI:NQ,PLO:PHI:NP'."""
    def axis(part):
        lo, hi, n = part.split(":")
        return float(lo), float(hi), int(n)

    try:
        parts = text.split(",")
        if len(parts) == 1:
            q = p = axis(parts[0])
        elif len(parts) == 2:
            q, p = axis(parts[0]), axis(parts[1])
        else:
            raise ValueError
        return GridSpec(q_min=q[0], q_max=q[1], p_min=p[0], p_max=p[1],
                        n_q=q[2], n_p=p[2])
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(
            f"grid {text!r} is not 'LO:HI:N' or 'QLO:QHI:NQ,PLO:PHI:NP'"
        ) from None


def fmt(value) -> str:
    """Full-precision decimal serialization."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


@dataclass
class RunConfig:
    """Echo of the parsed command parameters, embedded in every output
    file so results are self-describing and re-runnable."""

    command: str
    fields: dict

    def echo(self):
        def scalar(value):
            if isinstance(value, complex):
                if value.imag == 0.0:
                    return fmt(value.real)
                return fmt(value.real) + "," + fmt(value.imag)
            if isinstance(value, (float, int, np.floating, np.integer)):
                return fmt(value)
            return str(value)

        out = {"command": self.command}
        for key, value in self.fields.items():
            if value is None:
                continue
            if isinstance(value, (list, tuple)):
                out[key] = ";".join(scalar(v) for v in value)
            else:
                out[key] = scalar(value)
        return out


def write_table(config: RunConfig, columns, rows, out=None, fmt_name="csv",
                extra=None):
    """Serialize rows to CSV (with '#' config header) or a JSON mirror
    carrying the same field names."""
    extra = extra or {}
    if fmt_name == "json":
        payload = {
            "config": config.echo(),
            "columns": list(columns),
            "rows": [[float(v) for v in row] for row in rows],
        }
        payload.update({key: float(value) for key, value in extra.items()})
        text = json.dumps(payload, indent=1) + "\n"
    else:
        lines = [f"# {key} = {value}" for key, value in config.echo().items()]
        lines += [f"# {key} = {fmt(value)}" for key, value in extra.items()]
        lines.append("# columns: " + ",".join(columns))
        lines += [",".join(fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def read_table(path):
    """Re-parse a file produced by write_table.

    Returns (config: dict[str, str], columns: list[str], rows: list of
    float lists, extra: dict[str, float]).
    """
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        extra = {
            k: v
            for k, v in payload.items()
            if k not in ("config", "columns", "rows")
        }
        return payload["config"], payload["columns"], payload["rows"], extra
    config, columns, rows, extra = {}, [], [], {}
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("columns:"):
                columns = body.split(":", 1)[1].strip().split(",")
            elif "=" in body:
                key, value = (part.strip() for part in body.split("=", 1))
                config[key] = value
        else:
            rows.append([float(v) for v in line.split(",")])
    for key in list(config):
        try:
            extra[key] = float(config[key])
        except ValueError:
            pass
    return config, columns, rows, extra


def success_probability(params: CatalysisParams) -> float:
    """Herald success probability: squared norm of the unnormalized
    conditioned output, cos(theta)^(2m) exp(-|z|^2 sin^2 theta) / Nbar^2."""
    attenuation = params.t ** (2 * params.m) * math.exp(
        -abs(params.z) ** 2 * params.r**2
    )
    return attenuation * normalization(params).nbar_inv_sq


def _metric_row(params):
    v = metrics.quadrature_variances(params)
    return [
        params.z.real, params.z.imag, params.theta, params.m,
        metrics.mandel_q(params), metrics.g2(params),
        v.var_q, v.var_p, v.db_q, v.db_p,
        metrics.s_opt(params), success_probability(params),
    ]


_METRIC_COLUMNS = [
    "z_re", "z_im", "theta", "m",
    "Q", "g2", "var_q", "var_p", "db_q", "db_p", "s_opt", "p_succ",
]


def _oracle_metric_row(params, n_trunc=None):
    """The same row recomputed from the truncated-Fock simulation."""
    state, p_succ = fock_oracle.catalyze(params.z, params.theta, params.m, n_trunc)
    mom = lambda q, p: fock_oracle.oracle_moment(state, q, p)
    m11 = mom(1, 1).real
    m22 = mom(2, 2).real
    nbar = m11 - 1.0
    n2ord = m22 - 4.0 * m11 + 2.0
    b, bdag = mom(1, 0), mom(0, 1)
    b2, bdag2 = mom(2, 0), mom(0, 2)
    symmetric = 2.0 * m11 - 2.0 * (b * bdag).real
    skew = (b2 - b**2 + bdag2 - bdag**2).real
    var_q = 0.5 * (symmetric + skew - 1.0)
    var_p = 0.5 * (symmetric - skew - 1.0)
    s_val = -2.0 * abs(bdag2 - bdag**2) + 2.0 * m11 - 2.0 * abs(bdag) ** 2 - 2.0
    return [
        params.z.real, params.z.imag, params.theta, params.m,
        n2ord / nbar - nbar, n2ord / nbar**2,
        var_q, var_p,
        10.0 * math.log10(var_q / 0.5), 10.0 * math.log10(var_p / 0.5),
        s_val, p_succ,
    ]


def cmd_metrics(args):
    rows, oracle_rows = [], []
    lattice = [
        CatalysisParams(z=z, theta=theta, m=m)
        for z in args.z
        for theta in args.theta
        for m in args.m
    ]
    for params in lattice:
        rows.append(_metric_row(params))
        if args.oracle:
            oracle_rows.append(_oracle_metric_row(params, args.n_trunc))
    extra = {}
    deviation = 0.0
    if args.oracle:
        deviation = max(
            abs(a - b)
            for row, orow in zip(rows, oracle_rows)
            for a, b in zip(row[4:], orow[4:])
        )
        extra["oracle_max_deviation"] = deviation
    config = RunConfig("metrics", {
        "z": args.z if len(args.z) > 1 else args.z[0],
        "theta": args.theta, "m": args.m, "format": args.format,
        "oracle": args.oracle,
    })
    write_table(config, _METRIC_COLUMNS, rows, args.out, args.format, extra)
    if args.oracle and deviation > ORACLE_TOL:
        print(f"oracle deviation {fmt(deviation)} exceeds {ORACLE_TOL}",
              file=sys.stderr)
        return 1
    return 0


def cmd_pnd(args):
    params = CatalysisParams(z=args.z[0], theta=args.theta[0], m=args.m[0])
    n_max = args.n_max if args.n_max is not None else default_n_max(params)
    rows = [[n, metrics.pnd(params, n)] for n in range(n_max + 1)]
    extra = {"sum_p": sum(r[1] for r in rows)}
    deviation = 0.0
    if args.oracle:
        state, _ = fock_oracle.catalyze(params.z, params.theta, params.m, args.n_trunc)
        probs = state.probabilities
        deviation = max(
            abs(rows[n][1] - (probs[n] if n < probs.size else 0.0))
            for n in range(n_max + 1)
        )
        extra["oracle_max_deviation"] = deviation
    config = RunConfig("pnd", {
        "z": params.z, "theta": params.theta, "m": params.m,
        "n_max": n_max, "format": args.format, "oracle": args.oracle,
    })
    write_table(config, ["n", "p_n"], rows, args.out, args.format, extra)
    if args.oracle and deviation > ORACLE_TOL:
        print(f"oracle deviation {fmt(deviation)} exceeds {ORACLE_TOL}",
              file=sys.stderr)
        return 1
    return 0


def _write_grid(config, grid, out, fmt_name, extra=None):
    rows = [
        [q, p, grid.values[i, j]]
        for i, q in enumerate(grid.qs)
        for j, p in enumerate(grid.ps)
    ]
    write_table(config, ["q", "p", "W"], rows, out, fmt_name, extra)


def cmd_wigner(args):
    params = CatalysisParams(z=args.z[0], theta=args.theta[0], m=args.m[0])
    channel = None
    if args.kt or args.nbar:
        channel = ThermalChannel(kt=args.kt[0] if args.kt else 0.0, nbar=args.nbar)
    grid = wigner.wigner_grid(params, args.grid, channel)
    delta = wigner.negative_volume(params, channel)
    min_value, location = wigner.min_wigner(params, channel)
    config = RunConfig("wigner", {
        "z": params.z, "theta": params.theta, "m": params.m,
        "kt": channel.kt if channel else 0.0,
        "nbar": channel.nbar if channel else 0.0,
        "format": args.format,
    })
    extra = {"norm_defect": grid.norm_defect, "delta": delta,
             "min_W": min_value,
             "min_q": math.sqrt(2.0) * location.real,
             "min_p": math.sqrt(2.0) * location.imag}
    _write_grid(config, grid, args.out, args.format, extra)
    print(f"delta = {fmt(delta)}")
    print(f"min_W = {fmt(min_value)} at q={fmt(math.sqrt(2) * location.real)}, "
          f"p={fmt(math.sqrt(2) * location.imag)}")
    if args.oracle:
        state, _ = fock_oracle.catalyze(params.z, params.theta, params.m, args.n_trunc)
        if channel is not None and channel.kt > 0.0:
            print("oracle audit covers only the kt=0 grid", file=sys.stderr)
            return 0
        qs = np.linspace(grid.spec.q_min, grid.spec.q_max, 5)
        ps = np.linspace(grid.spec.p_min, grid.spec.p_max, 5)
        deviation = max(
            abs(wigner.wigner_value(params, (q + 1j * p) / math.sqrt(2))
                - fock_oracle.oracle_wigner(state, (q + 1j * p) / math.sqrt(2)))
            for q in qs for p in ps
        )
        print(f"oracle max deviation (5x5 probe) = {fmt(deviation)}")
        if deviation > ORACLE_TOL:
            return 1
    return 0


TABLE_CELLS = [
    (m, z, name)
    for m in (1, 2, 3)
    for z in (1.0, 2.0)
    for name in ("pi/5", "pi/4", "pi/3")
]


def cmd_table1(args):
    rows = []
    for m, z, name in TABLE_CELLS:
        params = CatalysisParams(z=z, theta=_ANGLE_TOKENS[name], m=m)
        rows.append([m, z, _ANGLE_TOKENS[name], wigner.negative_volume(params)])
    config = RunConfig("table1", {"format": args.format})
    write_table(config, ["m", "z", "theta", "delta"], rows, args.out, args.format)
    return 0


def cmd_decohere(args):
    params = CatalysisParams(z=args.z[0], theta=args.theta[0], m=args.m[0])
    kts = args.kt if args.kt else [0.0, 0.05, 0.1, 0.2, 0.3, 0.4]
    rows = []
    for kt in kts:
        channel = ThermalChannel(kt=kt, nbar=args.nbar)
        min_value, _ = wigner.min_wigner(params, channel)
        delta = wigner.negative_volume(params, channel)
        rows.append([kt, min_value, delta])
    kt_c = wigner.characteristic_time(params, nbar=args.nbar)
    config = RunConfig("decohere", {
        "z": params.z, "theta": params.theta, "m": params.m,
        "nbar": args.nbar, "format": args.format,
    })
    write_table(config, ["kt", "min_W", "delta"], rows, args.out, args.format,
                extra={"kt_c": kt_c})
    print(f"kt_c = {fmt(kt_c)}")
    return 0


def cmd_squeeze_opt(args):
    rows = []
    for z in args.z:
        for m in args.m:
            opt = metrics.optimal_squeezing(z, m)
            rows.append([z.real, z.imag, m, opt.db_best, opt.theta_star,
                         opt.var_at_star])
    config = RunConfig("squeeze-opt", {"z": args.z, "m": args.m,
                                       "format": args.format})
    write_table(config, ["z_re", "z_im", "m", "db_best", "theta_star",
                         "var_at_star"], rows, args.out, args.format)
    return 0


_SCAN_METRICS = {
    "mandel-q": lambda p, ch: metrics.mandel_q(p),
    "g2": lambda p, ch: metrics.g2(p),
    "s-opt": lambda p, ch: metrics.s_opt(p),
    "db-q": lambda p, ch: metrics.quadrature_variances(p).db_q,
    "p1": lambda p, ch: metrics.pnd(p, 1),
    "min-wigner": lambda p, ch: wigner.min_wigner(p, ch)[0],
}


def cmd_scan(args):
    z, theta, m = args.z[0], args.theta[0], args.m[0]
    nbar = args.nbar
    kt = args.kt[0] if args.kt else 0.0
    metric = _SCAN_METRICS[args.metric]

    def at(x):
        if args.variable == "theta":
            params = CatalysisParams(z=z, theta=x, m=m)
            channel = ThermalChannel(kt=kt, nbar=nbar) if kt or nbar else None
        elif args.variable == "z_real":
            params = CatalysisParams(z=complex(x, z.imag), theta=theta, m=m)
            channel = ThermalChannel(kt=kt, nbar=nbar) if kt or nbar else None
        else:  # kt
            params = CatalysisParams(z=z, theta=theta, m=m)
            channel = ThermalChannel(kt=x, nbar=nbar)
        return metric(params, channel)

    spec = sweep.ScanSpec(variable=args.variable, lo=args.lo, hi=args.hi,
                          n_points=args.n_points, refine=not args.no_refine)
    result = sweep.scan(at, spec, skip_exceptions=(metrics.DegenerateStateError,))
    rows = list(zip(result.abscissas, result.values))
    extra = {"skipped": result.skipped}
    for i, ext in enumerate(result.extrema):
        extra[f"extremum_{i}_{ext.kind}_x"] = ext.location
        extra[f"extremum_{i}_{ext.kind}_value"] = ext.value
    for i, x in enumerate(result.zero_crossings):
        extra[f"zero_crossing_{i}"] = x
    config = RunConfig("scan", {
        "metric": args.metric, "variable": args.variable,
        "lo": args.lo, "hi": args.hi, "n_points": args.n_points,
        "z": z, "theta": theta, "m": m, "kt": kt, "nbar": nbar,
        "format": args.format,
    })
    write_table(config, [args.variable, args.metric], rows, args.out,
                args.format, extra)
    return 0


def _recipe_sweep_family(path, fmt_name, metric_name, zs, ms, lo, hi, n_points,
                         command):
    """One file per z: columns theta then one metric column per m."""
    for z in zs:
        columns = ["theta"] + [f"m{m}" for m in ms]
        xs = np.linspace(lo, hi, n_points)
        rows = []
        for x in xs:
            row = [x]
            for m in ms:
                params = CatalysisParams(z=z, theta=x, m=m)
                row.append(_SCAN_METRICS[metric_name](params, None))
            rows.append(row)
        config = RunConfig(command, {"metric": metric_name, "z": z, "m": ms,
                                     "format": fmt_name})
        tag = fmt(abs(z)).replace(".", "p")
        write_table(config, columns, rows,
                    str(path / f"{command}_z{tag}.{fmt_name}"), fmt_name)


RECIPES = {}


def recipe(name):
    def register(fn):
        RECIPES[name] = fn
        return fn
    return register


@recipe("mandel-sweep")
def _recipe_mandel(path, fmt_name):
    """Mandel Q versus theta for m = 1..4 at z = 1 and z = 2."""
    _recipe_sweep_family(path, fmt_name, "mandel-q", [1.0, 2.0], [1, 2, 3, 4],
                         1e-3, math.pi / 2 - 1e-3, 400, "mandel-sweep")


@recipe("g2-sweep")
def _recipe_g2(path, fmt_name):
    """g2 versus theta for m = 1..4 at |z|^2 = 1 and |z|^2 = 2."""
    _recipe_sweep_family(path, fmt_name, "g2", [1.0, math.sqrt(2.0)],
                         [1, 2, 3, 4], 1e-3, math.pi / 2 - 1e-3, 400, "g2-sweep")


@recipe("pnd-panels")
def _recipe_pnd(path, fmt_name):
    """Photon-number distributions for the four standard panels."""
    panels = [("pi/6", 1.0), ("pi/4", 1.0), ("pi/3", 1.0), ("pi/3", 0.5)]
    for name, z in panels:
        columns = ["n"] + [f"m{m}" for m in range(4)]
        rows = []
        for n in range(11):
            row = [n] + [
                metrics.pnd(CatalysisParams(z=z, theta=_ANGLE_TOKENS[name], m=m), n)
                for m in range(4)
            ]
            rows.append(row)
        config = RunConfig("pnd-panels", {
            "z": z, "theta": _ANGLE_TOKENS[name], "format": fmt_name,
        })
        tag = name.replace("/", "") + "_z" + fmt(z).replace(".", "p")
        write_table(config, columns, rows,
                    str(path / f"pnd_{tag}.{fmt_name}"), fmt_name)


@recipe("squeeze-opt-vs-z")
def _recipe_squeeze(path, fmt_name):
    """Optimal squeezing (dB) and its theta versus input amplitude."""
    zs = np.linspace(0.2, 3.0, 29)
    ms = [1, 2, 3, 4]
    columns = ["z"] + [f"db_m{m}" for m in ms] + [f"theta_m{m}" for m in ms]
    rows = []
    for z in zs:
        opts = [metrics.optimal_squeezing(complex(z), m) for m in ms]
        rows.append([z] + [o.db_best for o in opts] + [o.theta_star for o in opts])
    config = RunConfig("squeeze-opt-vs-z", {"m": ms, "format": fmt_name})
    write_table(config, columns, rows,
                str(path / f"squeeze_opt_vs_z.{fmt_name}"), fmt_name)


@recipe("sopt-sweep")
def _recipe_sopt(path, fmt_name):
    """Phase-optimized squeezing depth versus theta for m, z combinations."""
    combos = [(m, z) for m in (1, 2, 3) for z in (1.0, 2.0)]
    columns = ["theta"] + [f"m{m}_z{int(z)}" for m, z in combos]
    xs = np.linspace(1e-3, math.pi / 2 - 1e-3, 400)
    rows = []
    for x in xs:
        rows.append([x] + [
            metrics.s_opt(CatalysisParams(z=z, theta=x, m=m)) for m, z in combos
        ])
    config = RunConfig("sopt-sweep", {"format": fmt_name})
    write_table(config, columns, rows, str(path / f"sopt_sweep.{fmt_name}"),
                fmt_name)


@recipe("wigner-gallery")
def _recipe_wigner(path, fmt_name):
    """Wigner grids for m = 1, 2 at theta = pi/5, pi/4, pi/3 (z = 1)."""
    for m in (1, 2):
        for name in ("pi/5", "pi/4", "pi/3"):
            params = CatalysisParams(z=1.0, theta=_ANGLE_TOKENS[name], m=m)
            grid = wigner.wigner_grid(params)
            config = RunConfig("wigner-gallery", {
                "z": 1.0, "theta": _ANGLE_TOKENS[name], "m": m,
                "format": fmt_name,
            })
            tag = f"m{m}_{name.replace('/', '')}"
            _write_grid(config, grid, str(path / f"wigner_{tag}.{fmt_name}"),
                        fmt_name, extra={"norm_defect": grid.norm_defect})


@recipe("delta-table")
def _recipe_delta(path, fmt_name):
    """The full negativity-volume table."""
    class Args:
        format = fmt_name
        out = str(path / f"delta_table.{fmt_name}")
    cmd_table1(Args)


@recipe("decohere-gallery")
def _recipe_decohere(path, fmt_name):
    """Decohered Wigner grids at kt = 0, 0.05, 0.1, 0.2 (m=1, z=1,
    theta=pi/3, nbar=0)."""
    params = CatalysisParams(z=1.0, theta=_ANGLE_TOKENS["pi/3"], m=1)
    for kt in (0.0, 0.05, 0.1, 0.2):
        channel = ThermalChannel(kt=kt, nbar=0.0)
        grid = wigner.wigner_grid(params, None, channel)
        config = RunConfig("decohere-gallery", {
            "z": 1.0, "theta": _ANGLE_TOKENS["pi/3"], "m": 1, "kt": kt,
            "nbar": 0.0, "format": fmt_name,
        })
        tag = fmt(kt).replace(".", "p")
        _write_grid(config, grid, str(path / f"decohere_kt{tag}.{fmt_name}"),
                    fmt_name, extra={"norm_defect": grid.norm_defect})


@recipe("min-wigner-vs-kt")
def _recipe_min_wigner(path, fmt_name):
    """Minimum Wigner value versus decay time for m = 1, 2 and
    theta = pi/5, pi/4, pi/3 (z=1, nbar=0)."""
    combos = [(m, name) for m in (1, 2) for name in ("pi/5", "pi/4", "pi/3")]
    columns = ["kt"] + [f"m{m}_{name.replace('/', '')}" for m, name in combos]
    rows = []
    for kt in np.linspace(0.0, 0.4, 17):
        row = [kt]
        for m, name in combos:
            params = CatalysisParams(z=1.0, theta=_ANGLE_TOKENS[name], m=m)
            row.append(wigner.min_wigner(params, ThermalChannel(kt=kt))[0])
        rows.append(row)
    config = RunConfig("min-wigner-vs-kt", {"z": 1.0, "nbar": 0.0,
                                            "format": fmt_name})
    write_table(config, columns, rows,
                str(path / f"min_wigner_vs_kt.{fmt_name}"), fmt_name)


def cmd_repro(args):
    if args.list or args.name is None:
        for name, fn in sorted(RECIPES.items()):
            print(f"{name}: {' '.join((fn.__doc__ or '').split())}")
        return 0
    if args.name not in RECIPES:
        print(f"unknown recipe {args.name!r}; use --list", file=sys.stderr)
        return 2
    path = Path(args.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    RECIPES[args.name](path, args.format)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="catlab",
        description="Nonclassicality diagnostics for multiphoton-catalyzed "
                    "coherent states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi_ok=True):
        p.add_argument("--z", type=parse_z, action="append", required=True,
                       help="input amplitude 're' or 're,im'" +
                            (" (repeatable)" if multi_ok else ""))
        p.add_argument("--theta", type=parse_theta, action="append",
                       required=True,
                       help="beam-splitter angle in radians or pi/N token")
        p.add_argument("--m", type=int, action="append", required=True,
                       help="catalysis photon number")

    def output(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def oracle(p):
        p.add_argument("--oracle", action="store_true",
                       help="audit analytic results against the Fock oracle")
        p.add_argument("--n-trunc", type=int, default=None,
                       help="photon-number truncation for the oracle")

    p = sub.add_parser("metrics", help="scalar diagnostics per lattice point")
    common(p); output(p); oracle(p)
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("pnd", help="photon-number distribution")
    common(p, multi_ok=False); output(p); oracle(p)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(fn=cmd_pnd)

    p = sub.add_parser("wigner", help="phase-space grid, delta, minimum")
    common(p, multi_ok=False); output(p); oracle(p)
    p.add_argument("--kt", type=float, action="append")
    p.add_argument("--nbar", type=float, default=0.0)
    p.add_argument("--grid", type=parse_grid, default=None,
                   help="'LO:HI:N' or 'QLO:QHI:NQ,PLO:PHI:NP'")
    p.set_defaults(fn=cmd_wigner)

    p = sub.add_parser("table1", help="negativity volumes over the standard "
                                      "m, z, theta table")
    output(p)
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("decohere", help="minimum Wigner value and delta "
                                        "versus decay time")
    common(p, multi_ok=False); output(p)
    p.add_argument("--kt", type=float, action="append",
                   help="decay times (repeatable)")
    p.add_argument("--nbar", type=float, default=0.0)
    p.set_defaults(fn=cmd_decohere)

    p = sub.add_parser("squeeze-opt", help="optimal squeezing over theta")
    p.add_argument("--z", type=parse_z, action="append", required=True)
    p.add_argument("--m", type=int, action="append", required=True)
    output(p)
    p.set_defaults(fn=cmd_squeeze_opt)

    p = sub.add_parser("scan", help="1-D sweep of a named metric")
    common(p, multi_ok=False); output(p)
    p.add_argument("--metric", choices=sorted(_SCAN_METRICS), required=True)
    p.add_argument("--variable", choices=sweep.VARIABLES, default="theta")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--n-points", type=int, default=500)
    p.add_argument("--no-refine", action="store_true")
    p.add_argument("--kt", type=float, action="append")
    p.add_argument("--nbar", type=float, default=0.0)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("repro", help="bundled reproduction recipes")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--list", action="store_true")
    p.add_argument("--out-dir", default="repro-out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_repro)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TruncationError, ConvergenceError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OrderCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
