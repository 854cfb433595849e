"""Test catalog, run and convergence drivers, and the ``slimex`` command line."""
from __future__ import annotations

import csv
import dataclasses
import io
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import click
import numpy as np

from . import advdiff
from . import oracles as orc
from .errors import ConfigError, NumericalError, SlimexError
from .gridfields import Grid1D
from .relax import RelaxOptions, ap_advance, equilibrium_defect
from .swe import SWEOptions, SWEState, advance
from .tableaux import SCHEME_IDS, make_tableau, validate_tableau

log = logging.getLogger(__name__)

OUTPUT_ENV = "SLIMEX_OUTPUT_ROOT"
SCALAR_SCHEMES = ("alg0", "alg1", "alg2")
SWE_SCHEMES = ("slimexh", "slimex")
AP_SCHEMES = ("slimexh_ap", "slimex_ap")
SCHEMES = SCALAR_SCHEMES + SWE_SCHEMES + AP_SCHEMES
PRESSURE_CHOICES = ("auto", "midpoint", "kepler", "off")


# --- catalog --------------------------------------------------------------------
@dataclass(frozen=True)
class TestCase:
    name: str
    family: str  # "scalar", "swe" or "relax"
    summary: str
    domain: tuple
    t_final: float
    boundary: str
    schemes: tuple
    scheme: str
    tableau: str
    n_cells: int
    n_steps: Optional[int] = None
    cfl: Optional[float] = None
    epsilon: Optional[float] = None
    viscosity: bool = False
    steady_source: bool = False
    froude: bool = False
    # smooth tests use one uniform step sized from the initial wave speed;
    # shock tests resize every step
    uniform_steps: bool = True
    error_variable: str = "h"
    error_norm: str = "Linf"
    params: dict = field(default_factory=dict)


def _riemann_case(ic: orc.RiemannIC, family, schemes, summary, **kw):
    return TestCase(ic.name, family, summary, ic.domain, ic.t_final, "extrapolate", schemes,
                    schemes[0], "ssp3433", 400, cfl=ic.cfl, viscosity=True, uniform_steps=False,
                    error_norm="L1",
                    params=dict(h_left=ic.h_left, u_left=ic.u_left, h_right=ic.h_right,
                                u_right=ic.u_right, x_d=ic.x_d), **kw)


def _catalog():
    t1, t2, t3 = orc.TEST1, orc.TEST2, orc.TEST3
    st, ap, lf = orc.STEADY, orc.AP_SMOOTH, orc.LOW_FROUDE
    cases = [
        TestCase("test1", "scalar", "smoothed step, constant velocity, diffusion",
                 t1["domain"], t1["t_final"], "extrapolate", SCALAR_SCHEMES, "alg2", "sassp332",
                 1000, n_steps=16, error_variable="q", error_norm="L2",
                 params=dict(u=t1["u"], alpha=t1["alpha"], x0=t1["x0"], t0=t1["t0"])),
        TestCase("test2", "scalar", "Gaussian in a linear compressive velocity, no diffusion",
                 t2["domain"], t2["t_final"], "extrapolate", SCALAR_SCHEMES, "alg2", "sassp332",
                 1000, n_steps=16, error_variable="q", error_norm="L2",
                 params=dict(k0=t2["k0"], alpha=t2["alpha"])),
        TestCase("test3", "scalar", "linear expanding velocity with diffusion",
                 t3["domain"], t3["t_final"], "linear", SCALAR_SCHEMES, "alg2", "sassp332",
                 1000, n_steps=16, error_variable="q", error_norm="L2",
                 params=dict(alpha=t3["alpha"])),
        TestCase("swe_steady", "swe", "smooth steady flow kept by a continuity source",
                 st["domain"], st["t_final"], "periodic", SWE_SCHEMES, "slimexh", "ssp3433", 400,
                 cfl=st["cfl"], steady_source=True, error_variable="V",
                 params=dict(a=st["a"], c=st["c"])),
        TestCase("swe_gaussian", "swe", "pressure wave from a Gaussian hump, h = 1 + exp(-x^2)",
                 (-10.0, 10.0), 1.2, "periodic", SWE_SCHEMES, "slimexh", "ssp3433", 400,
                 cfl=2.0, viscosity=True, uniform_steps=False),
        _riemann_case(orc.RP1, "swe", SWE_SCHEMES, "Riemann problem: two rarefactions"),
        _riemann_case(orc.RP2, "swe", SWE_SCHEMES, "Riemann problem: dam break"),
        _riemann_case(orc.B1, "relax", AP_SCHEMES, "stiff relaxation, Burgers rarefaction",
                      epsilon=1e-14),
        _riemann_case(orc.B2, "relax", AP_SCHEMES, "stiff relaxation, Burgers shock",
                      epsilon=1e-14),
        TestCase("ap_smooth", "relax", "stiff relaxation, smooth sine data, u = h/2",
                 ap["domain"], ap["t_final"], "periodic", AP_SCHEMES, "slimexh_ap", "ssp3433",
                 400, cfl=8.0, epsilon=1e-14,
                 params=dict(amplitude=ap["amplitude"], wavenumber=ap["wavenumber"])),
        TestCase("lowfroude", "relax", "Froude-scaled relaxation, viscous Burgers limit",
                 lf["domain"], lf["t_final"], "periodic", ("slimexh_ap",), "slimexh_ap",
                 "sp111", 200, n_steps=40, epsilon=1e-14, froude=True,
                 params=dict(amplitude=lf["amplitude"], wavenumber=lf["wavenumber"])),
    ]
    return {c.name: c for c in cases}


CATALOG = _catalog()


def list_tests():
    """Catalog entries in a stable order."""
    return list(CATALOG.values())


# --- configuration ----------------------------------------------------------------
@dataclass
class RunConfig:
    test_case: str
    scheme: Optional[str] = None
    tableau: Optional[str] = None
    n_cells: Optional[int] = None
    n_steps: Optional[int] = None
    cfl: Optional[float] = None
    epsilon: Optional[float] = None
    pressure_integral: str = "auto"
    viscosity: Optional[bool] = None
    output_dir: Optional[str] = None

    def resolved(self) -> "RunConfig":
        """Fill unset fields from the catalog and check the combination."""
        if self.test_case not in CATALOG:
            raise ConfigError(f"unknown test {self.test_case!r}; choose from {', '.join(CATALOG)}")
        case = CATALOG[self.test_case]
        out = dataclasses.replace(self)
        out.scheme = out.scheme or case.scheme
        if out.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {out.scheme!r}")
        if out.scheme not in case.schemes:
            raise ConfigError(f"scheme {out.scheme} does not apply to {case.name}; "
                              f"use one of {', '.join(case.schemes)}")
        out.tableau = out.tableau or case.tableau
        make_tableau(out.tableau)
        out.n_cells = int(out.n_cells or case.n_cells)
        if out.n_cells < 5:
            raise ConfigError("n_cells must be at least 5")
        if out.n_steps is not None and out.cfl is not None:
            raise ConfigError("set exactly one of n_steps and cfl")
        if out.n_steps is None and out.cfl is None:
            out.n_steps, out.cfl = case.n_steps, case.cfl
        if out.n_steps is not None and int(out.n_steps) < 1:
            raise ConfigError("n_steps must be positive")
        if out.cfl is not None and not out.cfl > 0:
            raise ConfigError("cfl must be positive")
        if case.family == "scalar" and out.cfl is not None:
            raise ConfigError("advection-diffusion tests take n_steps")
        if out.pressure_integral not in PRESSURE_CHOICES:
            raise ConfigError(f"pressure_integral must be one of {PRESSURE_CHOICES}")
        if out.viscosity is None:
            out.viscosity = case.viscosity
        if out.epsilon is None:
            out.epsilon = case.epsilon
        if case.family == "relax" and not (out.epsilon and out.epsilon > 0):
            raise ConfigError("relaxation tests need epsilon > 0")
        if case.family != "relax" and out.epsilon is not None:
            raise ConfigError(f"{case.name} has no relaxation term; drop epsilon")
        return out


_KEYS = {f.name for f in dataclasses.fields(RunConfig)}
_ALIASES = {"test": "test_case", "nx": "n_cells", "nt": "n_steps", "eps": "epsilon",
            "out": "output_dir", "pressure": "pressure_integral"}


def _coerce(key, raw):
    if raw is None:
        return None
    if key in ("n_cells", "n_steps"):
        return int(raw)
    if key in ("cfl", "epsilon"):
        return float(raw)
    if key == "viscosity":
        if isinstance(raw, bool):
            return raw
        low = str(raw).strip().lower()
        if low in ("1", "true", "on", "yes"):
            return True
        if low in ("0", "false", "off", "no"):
            return False
        raise ConfigError(f"viscosity expects on/off, got {raw!r}")
    return str(raw)


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        k, v = (p.strip() for p in line.split("=", 1))
        k = _ALIASES.get(k, k)
        if k not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {k!r}")
        try:
            out[k] = _coerce(k, v)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return out


def build_config(file_values: dict, overrides: dict) -> RunConfig:
    """Merge file values with flag overrides (flags win)."""
    merged = dict(file_values)
    for k, v in overrides.items():
        if v is not None:
            merged[_ALIASES.get(k, k)] = _coerce(_ALIASES.get(k, k), v)
    if "test_case" not in merged:
        raise ConfigError("no test selected")
    return RunConfig(**merged)


# --- running ------------------------------------------------------------------------
@dataclass
class RunReport:
    config: RunConfig
    t_final: float
    steps: int
    x: np.ndarray
    fields: dict
    errors: dict
    history: list
    mass_drift: float
    output_dir: Optional[Path] = None

    @property
    def primary_error(self) -> Optional[float]:
        case = CATALOG[self.config.test_case]
        e = self.errors.get(case.error_variable)
        return None if e is None else e[case.error_norm]


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _grid(case, n):
    return Grid1D(case.domain[0], case.domain[1], n, case.boundary)


def _initial(case, grid):
    x = grid.x
    if case.name == "swe_steady":
        h, u = orc.steady_swe(x)
    elif case.name == "swe_gaussian":
        h, u = 1.0 + np.exp(-x * x), np.zeros_like(x)
    elif case.name in ("ap_smooth", "lowfroude"):
        h = orc.sine_depth(x, case.params["amplitude"], case.params["wavenumber"])
        u = 0.5 * h
    else:
        ic = {"rp1": orc.RP1, "rp2": orc.RP2, "b1": orc.B1, "b2": orc.B2}[case.name]
        h, u = ic.initial(x)
        if case.family == "relax":
            u = 0.5 * h  # start on the equilibrium manifold
    return SWEState.from_velocity(grid, h, u)


def _exact(case, grid, t):
    """Reference (h, V) at time t, or None when the case has no oracle."""
    x = grid.x
    name = case.name
    if name == "swe_steady":
        h, u = orc.steady_swe(x)
        return h, h * u
    if name in ("rp1", "rp2"):
        h, u = orc.swe_exact_riemann(orc.RP1 if name == "rp1" else orc.RP2, x, t)
        return h, h * u
    if name in ("b1", "b2"):
        ic = orc.B1 if name == "b1" else orc.B2
        h = orc.burgers_exact_riemann(ic.h_left, ic.h_right, x, t, ic.x_d)
        return h, 0.5 * h * h
    if name == "ap_smooth":
        h = orc.burgers_smooth_exact(x, t, case.params["amplitude"], case.params["wavenumber"])
        return h, 0.5 * h * h
    if name == "lowfroude":
        # fine reference averaged onto the run grid
        k = max(1, int(math.ceil(1600 / grid.n_cells)))
        _, hf = orc.viscous_burgers_reference(grid.n_cells * k, t, case.params["amplitude"],
                                              case.params["wavenumber"], case.domain)
        return hf.reshape(grid.n_cells, k).mean(axis=1), None
    return None


def _swe_stepper(cfg: RunConfig, case: TestCase):
    tb = make_tableau(cfg.tableau)
    opts = SWEOptions(pressure_integral=cfg.pressure_integral, viscosity=cfg.viscosity,
                      steady_source=case.steady_source)
    if case.family == "swe":
        return lambda st, dt: advance(st, dt, tb, opts, cfg.scheme)
    relax = RelaxOptions(cfg.epsilon, case.froude)
    scheme = cfg.scheme[:-len("_ap")]
    return lambda st, dt: ap_advance(st, dt, tb, relax, opts, scheme)


def _wave_speed(st: SWEState, case: TestCase) -> float:
    return float(np.max(np.abs(st.u) + np.sqrt(orc.G * st.h.values)))


def _run_swe(cfg: RunConfig, case: TestCase):
    grid = _grid(case, cfg.n_cells)
    st = _initial(case, grid)
    step = _swe_stepper(cfg, case)
    tf = case.t_final
    m0 = float(st.h.values.sum() * grid.dx)
    outflow = 0.0
    hist = []

    def record(t, cfl):
        d = orc.diagnostics(st.h.values, st.V.values, grid.dx)
        row = [t, d.mass, d.kinetic, d.potential, d.total_energy, cfl]
        if case.family == "relax":
            row.append(equilibrium_defect(st))
        hist.append(row)

    record(0.0, 0.0)
    uniform = cfg.n_steps is not None or case.uniform_steps
    if cfg.n_steps is not None:
        n = int(cfg.n_steps)
    elif uniform:
        n = math.ceil(tf * _wave_speed(st, case) / (cfg.cfl * grid.dx) - 1e-12)
    t, k = 0.0, 0
    while t < tf * (1 - 1e-14):
        if uniform:
            dt = tf / n
        else:
            dt = min(cfg.cfl * grid.dx / _wave_speed(st, case), tf - t)
        cfl = dt * _wave_speed(st, case) / grid.dx
        st, info = step(st, dt)
        outflow += info.mass_outflow
        k += 1
        t = tf if (uniform and k == n) else t + dt
        record(t, cfl)
        if uniform and k == n:
            break
    mass = float(st.h.values.sum() * grid.dx)
    drift = abs(mass + outflow - m0) / m0
    fields = {"h": st.h.values.copy(), "u": st.u.copy(), "V": st.V.values.copy()}
    errors = {}
    ref = _exact(case, grid, t)
    if ref is not None:
        he, Ve = ref
        errors["h"] = advdiff.error_norms(st.h.values, he, grid.dx)
        if Ve is not None:
            errors["V"] = advdiff.error_norms(st.V.values, Ve, grid.dx)
    return t, k, grid.x, fields, errors, hist, drift


def _run_scalar(cfg: RunConfig, case: TestCase):
    tb = make_tableau(cfg.tableau)
    p = advdiff.make_problem(case.name, tb, int(cfg.n_steps), cfg.scheme, cfg.n_cells)
    res = advdiff.run_advdiff(p, record_history=True)
    hist = [[t, m, l2, li] for (_, t, l2, li, m) in res.history]
    m0, m1 = hist[0][1], hist[-1][1]
    drift = abs(m1 - m0) / abs(m0) if m0 else abs(m1 - m0)
    return res.t, res.steps, p.grid.x, {"q": res.q.values.copy()}, {"q": res.errors}, hist, drift


def _run_dir(cfg: RunConfig) -> Path:
    root = cfg.output_dir or os.environ.get(OUTPUT_ENV) or "slimex_out"
    stepping = f"nt{cfg.n_steps}" if cfg.n_steps is not None else f"cfl{cfg.cfl:g}"
    name = f"{cfg.test_case}_{cfg.scheme}_{cfg.tableau}_n{cfg.n_cells}_{stepping}"
    if cfg.pressure_integral != "auto":
        name += f"_p{cfg.pressure_integral}"
    return Path(root) / name


def write_outputs(report: RunReport, directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    f = report.fields
    if "q" in f:
        sol = _csv(["x", "value"], zip(report.x, f["q"]))
        diag = _csv(["time", "mass", "L2", "Linf"], report.history)
    else:
        sol = _csv(["x", "h", "u", "V"], zip(report.x, f["h"], f["u"], f["V"]))
        head = ["time", "mass", "kinetic", "potential", "total_energy", "CFL"]
        if report.history and len(report.history[0]) == 7:
            head.append("u_minus_h_over_2_Linf")
        diag = _csv(head, report.history)
    (directory / "solution_final.csv").write_text(sol)
    (directory / "diagnostics.csv").write_text(diag)
    if report.errors:
        rows = [(var, n, v) for var, norms in report.errors.items() for n, v in norms.items()]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["variable", "norm", "value"])
        for var, n, v in rows:
            w.writerow([var, n, _fmt(v)])
        (directory / "errors.csv").write_text(buf.getvalue())
    return directory


def run(config: RunConfig, write: bool = True) -> RunReport:
    """Execute one configured run; writes CSV files unless ``write`` is False."""
    cfg = config.resolved()
    case = CATALOG[cfg.test_case]
    try:
        if case.family == "scalar":
            out = _run_scalar(cfg, case)
        else:
            out = _run_swe(cfg, case)
    except NumericalError as exc:
        raise NumericalError(f"{cfg.test_case}/{cfg.scheme}/{cfg.tableau} "
                             f"n={cfg.n_cells}: {exc}") from exc
    report = RunReport(cfg, *out)
    if write:
        report.output_dir = write_outputs(report, _run_dir(cfg))
    return report


# --- convergence studies ----------------------------------------------------------
def observed_orders(errors: Sequence[float], ratios) -> list:
    """log(e_k / e_{k+1}) / log(r_k) between consecutive levels."""
    errors = list(errors)
    if np.isscalar(ratios):
        ratios = [ratios] * (len(errors) - 1)
    return [math.log(errors[k] / errors[k + 1]) / math.log(ratios[k])
            for k in range(len(errors) - 1)]


@dataclass
class OrderTable:
    test_case: str
    refinement: str
    header: list
    rows: list
    errors: list
    orders: list
    path: Optional[Path] = None

    def to_csv(self) -> str:
        return _csv(self.header, self.rows)


Refinement = Union[str, Sequence[float]]


def converge(base: RunConfig, refinement: Refinement = "halve_dt", levels: int = 5,
             variable: Optional[str] = None, norm: Optional[str] = None,
             write: bool = True) -> OrderTable:
    """Run a refinement sequence and tabulate observed orders.

    ``refinement`` is ``"halve_dt"`` (double n_steps), ``"halve_dx"`` (double
    n_cells at fixed CFL or n_steps) or a list of CFL numbers.
    """
    cfg = base.resolved()
    case = CATALOG[cfg.test_case]
    variable = variable or case.error_variable
    norm = norm or case.error_norm
    configs = []
    if isinstance(refinement, str):
        if refinement == "halve_dt":
            if cfg.n_steps is None:
                raise ConfigError("halve_dt needs a base n_steps")
            configs = [dataclasses.replace(cfg, n_steps=cfg.n_steps * 2 ** k, cfl=None)
                       for k in range(levels)]
        elif refinement == "halve_dx":
            configs = [dataclasses.replace(
                cfg, n_cells=cfg.n_cells * 2 ** k,
                n_steps=None if cfg.n_steps is None else cfg.n_steps * 2 ** k)
                for k in range(levels)]
        else:
            raise ConfigError(f"unknown refinement {refinement!r}")
        label = refinement
    else:
        cfls = [float(c) for c in refinement]
        if len(cfls) < 2:
            raise ConfigError("a CFL sweep needs at least two values")
        configs = [dataclasses.replace(cfg, cfl=c, n_steps=None) for c in cfls]
        label = "cfl_list"
    reports = [run(c, write=False) for c in configs]
    errs = []
    for r in reports:
        if variable not in r.errors:
            raise ConfigError(f"{case.name} has no reference for variable {variable!r}")
        errs.append(r.errors[variable][norm])
    # ratio of step sizes (time refinement) or of cell sizes (space refinement)
    if label == "halve_dx":
        ratios = [2.0] * (len(errs) - 1)
    else:
        ratios = [reports[k + 1].steps / reports[k].steps for k in range(len(errs) - 1)]
    orders = observed_orders(errs, ratios)
    header = ["level", "n_cells", "n_steps", "dt", "cfl", f"{variable}_{norm}", "order"]
    rows = []
    for k, (c, r) in enumerate(zip(configs, reports)):
        rows.append([k, c.n_cells, r.steps, r.t_final / r.steps,
                     c.cfl if c.cfl is not None else float("nan"), errs[k],
                     orders[k - 1] if k else float("nan")])
    table = OrderTable(cfg.test_case, label, header, rows, errs, orders)
    if write:
        d = _run_dir(cfg).parent
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"orders_{cfg.test_case}_{cfg.scheme}_{cfg.tableau}_{label}.csv"
        path.write_text(table.to_csv())
        table.path = path
    return table


# --- command line -------------------------------------------------------------------
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


def _common(f):
    opts = [
        click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                     help="key = value file; flags override it"),
        click.option("--test", help="catalog test name"),
        click.option("--scheme", type=click.Choice(SCHEMES)),
        click.option("--tableau", help=f"one of {', '.join(SCHEME_IDS)}"),
        click.option("--nx", type=int, help="number of cells"),
        click.option("--nt", type=int, help="number of time steps"),
        click.option("--cfl", type=float, help="CFL number (instead of --nt)"),
        click.option("--eps", type=float, help="relaxation parameter"),
        click.option("--pressure", type=click.Choice(PRESSURE_CHOICES),
                     help="pressure integral rule"),
        click.option("--viscosity/--no-viscosity", default=None,
                     help="implicit interface dissipation in the continuity equation"),
        click.option("--out", type=click.Path(file_okay=False),
                     help=f"output root (default ${OUTPUT_ENV} or ./slimex_out)"),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _config_from(kw) -> RunConfig:
    file_values = {}
    path = kw.pop("config_file", None)
    if path:
        file_values = parse_config_text(Path(path).read_text())
    return build_config(file_values, kw)


def _guard(fn: Callable[[], None]):
    try:
        fn()
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except (NumericalError, FloatingPointError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)
    except SlimexError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def cli(verbose):
    """Semi-Lagrangian IMEX solvers for advection-diffusion and shallow water."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@cli.command("run")
@_common
def run_cmd(**kw):
    """Run one test and write solution, diagnostics and error CSV files."""
    def go():
        rep = run(_config_from(kw))
        c = rep.config
        click.echo(f"{c.test_case} {c.scheme} {c.tableau} n={c.n_cells}: "
                   f"{rep.steps} steps to t={rep.t_final:.6g}, mass drift {rep.mass_drift:.3e}")
        for var, norms in rep.errors.items():
            click.echo(f"  {var}: " + "  ".join(f"{k}={v:.6e}" for k, v in norms.items()))
        click.echo(f"  output: {rep.output_dir}")
    _guard(go)


@cli.command("converge")
@_common
@click.option("--refine", type=click.Choice(["halve_dt", "halve_dx", "cfl_list"]),
              default="halve_dt", show_default=True)
@click.option("--levels", type=int, default=5, show_default=True)
@click.option("--cfl-list", default="8,7,6,5,4,3", show_default=True,
              help="comma separated CFL numbers for --refine cfl_list")
@click.option("--variable", default=None, help="error variable (q, h or V)")
@click.option("--norm", type=click.Choice(["L1", "L2", "Linf"]), default=None)
def converge_cmd(refine, levels, cfl_list, variable, norm, **kw):
    """Refinement study with observed orders."""
    def go():
        cfg = _config_from(kw)
        ref = [float(v) for v in cfl_list.split(",")] if refine == "cfl_list" else refine
        tab = converge(cfg, ref, levels, variable, norm)
        click.echo(tab.to_csv(), nl=False)
        click.echo(f"written to {tab.path}")
    _guard(go)


@cli.command("list-tests")
def list_cmd():
    """Show the catalog."""
    for c in list_tests():
        stepping = f"nt={c.n_steps}" if c.n_steps is not None else f"CFL={c.cfl:g}"
        extra = ", ".join(f"{k}={v:g}" for k, v in c.params.items())
        click.echo(f"{c.name:13s} {c.summary}")
        click.echo(f"{'':13s} domain=[{c.domain[0]:g}, {c.domain[1]:g}] t_f={c.t_final:g} "
                   f"bc={c.boundary} nx={c.n_cells} {stepping} schemes={'/'.join(c.schemes)}"
                   + (f" eps={c.epsilon:g}" if c.epsilon is not None else "")
                   + (f" {extra}" if extra else ""))


@cli.command("validate-tableaux")
def validate_cmd():
    """Check the structural conditions of every registered tableau."""
    bad = False
    for sid in SCHEME_IDS:
        problems = validate_tableau(make_tableau(sid))
        click.echo(f"{sid}: {'ok' if not problems else '; '.join(problems)}")
        bad = bad or bool(problems)
    sys.exit(EXIT_CONFIG if bad else EXIT_OK)


def main(argv=None):
    cli.main(args=argv, prog_name="slimex")


if __name__ == "__main__":
    main()
