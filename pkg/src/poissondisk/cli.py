"""Command-line front end.

Subcommands: ``catalog``, ``solve``, ``measure`` and ``verify``.  Settings
can come from a JSON config file (``--config``); explicit flags override
it.  Exit codes: 0 when every check holds, 1 when a report fails, 2 on an
input or configuration error.
"""

import argparse
import ast
import json
import math
import sys
from dataclasses import dataclass, field, fields
from typing import List, Optional

import numpy as np

from .catalog import DEFAULT_LABELS, catalog_listing, parse_map
from .exceptions import DegeneratePointError, DomainError, SenseReversalError
from .validation import check_power_of_two

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
SUITE_CHOICES = ("thm1", "thm2", "thm3", "thm4", "lem21", "lem22", "isoperimetric",
                 "schwarz", "all")
FUNCTIONALS = ("perimeter", "perimeter-profile", "radial-length", "radial-length-sup", "area",
               "isoperimetric", "qc-constant", "bloch", "lipschitz", "coefficients")


class ConfigError(ValueError):
    """Invalid command-line or config-file input."""


@dataclass
class RunConfig:
    """Everything a run depends on; equal configs give byte-identical output."""

    command: str
    maps: List[str] = field(default_factory=list)
    psi: Optional[str] = None
    g: Optional[str] = None
    suite: str = "all"
    functional: str = "perimeter"
    r: Optional[float] = None
    theta: float = 0.0
    points: List[str] = field(default_factory=list)
    n_max: int = 8
    boundary_nodes: int = 2048
    radial_nodes: int = 64
    angular_nodes: int = 128
    seed: int = 0
    tolerance: Optional[float] = None
    out: Optional[str] = None
    format: str = "json"

    def validate(self):
        if self.command not in ("catalog", "solve", "measure", "verify"):
            raise ConfigError(f"command: unknown command {self.command!r}")
        if self.suite not in SUITE_CHOICES:
            raise ConfigError(f"suite: expected one of {', '.join(SUITE_CHOICES)}")
        if self.functional not in FUNCTIONALS:
            raise ConfigError(f"functional: expected one of {', '.join(FUNCTIONALS)}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format: expected json or csv")
        try:
            check_power_of_two(self.boundary_nodes, minimum=16, name="boundary_nodes")
        except ValueError as exc:
            raise ConfigError(f"boundary_nodes: {exc}") from None
        for name in ("radial_nodes", "angular_nodes", "n_max"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name}: must be a positive integer")
        if self.tolerance is not None and not self.tolerance >= 0:
            raise ConfigError("tolerance: must be nonnegative")
        if "custom" in self.maps and self.psi is None:
            raise ConfigError("psi: a custom map needs --psi")
        return self


# expressions for custom maps

_FUNCS = {"conj": np.conj, "abs": np.abs, "exp": np.exp, "log": np.log, "sqrt": np.sqrt,
          "sin": np.sin, "cos": np.cos, "real": np.real, "imag": np.imag}
_CONSTS = {"pi": math.pi, "e": math.e, "i": 1j, "j": 1j}
_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load, ast.Constant,
          ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd)


def compile_expression(text, what="expression"):
    """Compile an arithmetic expression in ``z`` into a vectorised function.

    Allowed: numbers, ``z``, ``zbar``, ``pi``, ``e``, ``i``, the operators
    ``+ - * / **`` and the functions ``conj abs exp log sqrt sin cos real imag``.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"{what}: cannot parse {text!r} ({exc.msg})") from None
    for node in ast.walk(tree):
        if not isinstance(node, _NODES):
            raise ConfigError(f"{what}: {type(node).__name__} not allowed in {text!r}")
        if isinstance(node, ast.Name) and node.id not in {"z", "zbar", *_FUNCS, *_CONSTS}:
            raise ConfigError(f"{what}: unknown name {node.id!r}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name)
                                               and node.func.id in _FUNCS):
            raise ConfigError(f"{what}: only {', '.join(_FUNCS)} may be called")
    code = compile(tree, what, "eval")

    def fn(z):
        z = np.asarray(z, dtype=complex)
        env = {"z": z, "zbar": np.conj(z), **_FUNCS, **_CONSTS}
        return np.broadcast_to(np.asarray(eval(code, {"__builtins__": {}}, env), dtype=complex),
                               z.shape)

    return fn


def build_map(label, cfg):
    """Catalog map for ``label``, or the solver-backed map for ``custom``."""
    if label != "custom":
        try:
            return parse_map(label)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"map: {exc}") from None
    from .solver import PoissonSolution

    psi = compile_expression(cfg.psi, "psi")
    g = compile_expression(cfg.g, "g") if cfg.g else None
    sol = PoissonSolution(boundary_nodes=cfg.boundary_nodes, radial_nodes=cfg.radial_nodes,
                          angular_nodes=cfg.angular_nodes).fit(psi, g)
    sol.label = f"custom(psi={cfg.psi}, g={cfg.g or '0'})"
    return sol


def parse_point(text):
    try:
        z = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ConfigError(f"points: cannot parse {text!r}") from None
    if abs(z) >= 1:
        raise ConfigError(f"points: {text!r} is not in the open unit disk")
    return z


# commands

def _cmd_catalog(cfg):
    rows = catalog_listing()
    return rows, EXIT_OK


def _cmd_solve(cfg):
    from .solver import jet_norms

    rows = []
    pts = [parse_point(p) for p in (cfg.points or ["0"])]
    for label in cfg.maps:
        m = build_map(label, cfg)
        jets = m.jets(np.array(pts, dtype=complex))
        norms = jet_norms(jets)
        for k, z in enumerate(pts):
            rows.append({"map": getattr(m, "label", label), "z": z, "f": jets.f[k],
                         "f_z": jets.f_z[k], "f_zbar": jets.f_zbar[k],
                         "op_norm": norms["op_norm"][k], "jacobian": norms["jacobian"][k]})
    return rows, EXIT_OK


def _measure_one(m, cfg):
    from . import geometry as geo
    from .analysis import functionals as fn
    from .analysis.spectrum import harmonic_part

    name = cfg.functional
    top = fn.limit_radius(m)
    r = top if cfg.r is None else cfg.r
    if name == "perimeter":
        return [{"r": r, "value": geo.perimeter(m, r)}]
    if name == "perimeter-profile":
        prof = geo.perimeter_sup(m)
        return [{"r": a, "value": b} for a, b in zip(prof.radii, prof.values)]
    if name == "radial-length":
        return [{"r": r, "theta": cfg.theta, "value": geo.radial_length(m, cfg.theta, r)}]
    if name == "radial-length-sup":
        return [{"r": r, "value": geo.radial_length_sup(m, r=r)}]
    if name == "area":
        return [{"r": r, "value": geo.image_area(m, r)}]
    if name == "isoperimetric":
        res = geo.isoperimetric_check(m)
        return [{"value": res.area, "bound": res.bound, "holds": res.holds,
                 "perimeter": res.perimeter}]
    if name == "qc-constant":
        value, kind = geo.effective_K(m)
        return [{"value": value, "source": kind}]
    if name == "bloch":
        return [{"alpha": 1.0, "omega": "t", "value": fn.bloch_norm(m)}]
    if name == "lipschitz":
        pairs = fn.pair_samples(seed=cfg.seed, r_max=min(1.0 - 2.0 ** -12, top))
        from .majorant import linear_majorant
        return [{"omega": "t", "seed": cfg.seed,
                 "value": fn.lipschitz_constant(m, linear_majorant(), pairs)}]
    spec = harmonic_part(m, cfg.boundary_nodes)
    return [{"n": n, "a_n": spec.a[n], "b_n": spec.b[n], "value": spec.coefficient_sum(n)}
            for n in range(1, cfg.n_max + 1)]


def _cmd_measure(cfg):
    rows = []
    for label in cfg.maps:
        m = build_map(label, cfg)
        for row in _measure_one(m, cfg):
            rows.append({"map": getattr(m, "label", label), "functional": cfg.functional, **row})
    return rows, EXIT_OK


def _cmd_verify(cfg):
    from .analysis.suites import run_suite

    reports, labels = [], []
    for label in cfg.maps:
        m = build_map(label, cfg)
        reps = run_suite(m, cfg.suite, seed=cfg.seed, tolerance=cfg.tolerance)
        reports.extend(reps)
        labels.extend([getattr(m, "label", label)] * len(reps))
    code = EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL
    return (reports, labels), code


def _render(cfg, payload):
    from .analysis.report import _jsonable, reports_to_csv, reports_to_json

    if cfg.command == "verify":
        reports, labels = payload
        if cfg.format == "csv":
            return reports_to_csv(reports, labels)
        return reports_to_json(reports, labels)
    rows = _jsonable(payload)
    if cfg.format == "csv":
        import csv
        import io

        cols = []
        for row in rows:
            cols.extend(k for k in row if k not in cols)
        buf = io.StringIO()
        w = csv.DictWriter(buf, cols, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                        for k, v in row.items()})
        return buf.getvalue()
    return json.dumps(rows, indent=2) + "\n"


def run(config):
    """Execute a :class:`RunConfig`; returns the process exit code."""
    try:
        cfg = config.validate()
        if not cfg.maps and cfg.command != "catalog":
            cfg.maps = list(DEFAULT_LABELS)
        handler = {"catalog": _cmd_catalog, "solve": _cmd_solve, "measure": _cmd_measure,
                   "verify": _cmd_verify}[cfg.command]
        payload, code = handler(cfg)
        text = _render(cfg, payload)
    except (ConfigError, DomainError, SenseReversalError, DegeneratePointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL:
        print("at least one check failed", file=sys.stderr)
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="poissondisk", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=("catalog", "solve", "measure", "verify"))
    # defaults are None so that only explicit flags override the config file
    p.add_argument("--config", help="JSON file with any of the options below")
    p.add_argument("--map", dest="maps", action="append", default=None,
                   help="catalog label or 'custom' (repeatable; default: whole catalog)")
    p.add_argument("--psi", help="boundary datum of a custom map, as an expression in z")
    p.add_argument("--g", help="source of a custom map, as an expression in z")
    p.add_argument("--suite", choices=SUITE_CHOICES)
    p.add_argument("--functional", choices=FUNCTIONALS)
    p.add_argument("--r", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--points", nargs="+", help="evaluation points for solve, e.g. 0.5+0.1i")
    p.add_argument("--n-max", type=int)
    p.add_argument("--boundary-nodes", type=int)
    p.add_argument("--radial-nodes", type=int)
    p.add_argument("--angular-nodes", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"))
    return p


def load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: {path} line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config: {path} must hold a JSON object")
    known = {f.name for f in fields(RunConfig)} | {"map"}
    for key in data:
        if key.replace("-", "_") not in known:
            raise ConfigError(f"config: {path}: unknown field {key!r}")
    out = {k.replace("-", "_"): v for k, v in data.items()}
    if "map" in out:
        m = out.pop("map")
        out["maps"] = [m] if isinstance(m, str) else list(m)
    return out


def config_from_args(argv=None):
    args = build_parser().parse_args(argv)
    values = {"command": args.command}
    if args.config:
        values.update(load_config_file(args.config))
        values["command"] = args.command
    for key, val in vars(args).items():
        if key not in ("command", "config") and val is not None:
            values[key] = val
    try:
        for key in ("boundary_nodes", "radial_nodes", "angular_nodes", "n_max", "seed"):
            if key in values:
                values[key] = int(values[key])
        for key in ("r", "theta", "tolerance"):
            if values.get(key) is not None:
                values[key] = float(values[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config: {exc}") from None
    return RunConfig(**values)


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
