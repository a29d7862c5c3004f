"""Command-line driver: scenario runs, sweeps, the finite-volume check, the
wavelength criterion and the source-wave verifications, all emitted as CSV.

Configuration is a single JSON document; unknown keys are rejected and every
omitted field gets the standard deep-ocean default (3700 m column, q_ref =
1.1296, k = 1).  Command-line flags override file values.  Outputs are byte
deterministic: floats are serialized with 17 significant digits and sweep
results are assembled in case order regardless of worker count.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 partial sweep failure.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .criterion import incidence_transform, is_tsunami, min_wavelength
from .equilibrium import Column, equilibrium_strain
from .errors import ConfigError, DegenerateStatesError, SimulationError
from .fvm import FvState, RiemannProblem, evolve, measure_front_speed
from .profile import Scenario, integrate_profile, reference_state
from .shock import composite_wave, rh_speed, track_shock
from .sourcewave import SystemDescription, build_wave, verify_nonlinear, verify_transport
from .statelaws import MaterialParams, sound_speed_q

DEFAULT_K_SWEEP = [0.05, 0.15, 0.5, 1.0, 2.0, 5.0, 10.0]

_SCHEMA = {
    "material": {"rho0": 1000.0, "c0": 1647.0, "s0": 1647.0 / 858.0,
                 "g": 9.8, "p_a": 1.0e5},
    "scenario": {"z_f": -3700.0, "q_ref": 1.1296, "k": 1.0, "phi_deg": 0.0},
    "solver": {"grid_step": 1.0, "ode_tolerance": 1.0e-8, "cfl": 0.45,
               "cells": 8000, "t_max": 5.0, "form": "corrected",
               "train_length": None},
    "sweep": {"k_values": None, "phi_values_deg": None, "workers": 1},
    "output": {"directory": "out", "emit_plots": False,
               "composite_times": [0.4, 0.8, 1.2]},
    "criterion": {"n_interactions": 25, "c_s": None, "wavelength": None},
    "fvm": {"q_left": None, "w_left": None, "q_right": None, "w_right": None,
            "domain_length": 12000.0, "t_final": 2.0, "snapshot_every": None},
}


@dataclass
class RunConfig:
    material: MaterialParams
    z_f: float
    q_ref: float
    k: float
    phi: float
    grid_step: float
    ode_tolerance: float
    cfl: float
    cells: int
    t_max: float
    form: str
    train_length: float | None
    k_values: list | None
    phi_values: list | None
    workers: int
    out_dir: Path
    emit_plots: bool
    composite_times: list
    criterion_n: int
    criterion_c_s: float | None
    criterion_wavelength: float | None
    fvm_states: tuple | None
    fvm_domain_length: float
    fvm_t_final: float
    fvm_snapshot_every: int | None
    cases: list = field(default_factory=list)

    def base_scenario(self, k=None, phi=None) -> Scenario:
        column = Column(z_f=self.z_f, params=self.material)
        sc = Scenario(column=column, q_ref=self.q_ref,
                      k=self.k if k is None else k,
                      grid_step=self.grid_step, ode_tolerance=self.ode_tolerance,
                      form=self.form, train_length=self.train_length)
        return incidence_transform(sc, self.phi if phi is None else phi)


def _merge(document: dict) -> dict:
    merged = {}
    for section, defaults in _SCHEMA.items():
        merged[section] = dict(defaults)
    for section, content in document.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown configuration section: {section!r}")
        if not isinstance(content, dict):
            raise ConfigError(f"section {section!r} must be an object")
        for key, value in content.items():
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown configuration key: {section}.{key}")
            merged[section][key] = value
    return merged


def _require_number(value, name, minimum=None, strict=False, maximum=None):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    v = float(value)
    if minimum is not None and (v <= minimum if strict else v < minimum):
        op = ">" if strict else ">="
        raise ConfigError(f"{name} must satisfy {name.split('.')[-1]} {op} {minimum}, got {v}")
    if maximum is not None and v > maximum:
        raise ConfigError(f"{name} must be <= {maximum}, got {v}")
    return v


def parse_config(text: str, overrides: dict | None = None) -> RunConfig:
    """Parse and fully validate a JSON configuration document."""
    if text.strip():
        try:
            document = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"configuration is not valid JSON: {err}") from err
    else:
        document = {}
    if not isinstance(document, dict):
        raise ConfigError("configuration root must be a JSON object")
    cfg = _merge(document)
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        section, key = dotted.split(".", 1)
        cfg[section][key] = value

    mat = cfg["material"]
    try:
        material = MaterialParams(
            rho0=_require_number(mat["rho0"], "material.rho0", 0.0, strict=True),
            c0=_require_number(mat["c0"], "material.c0", 0.0, strict=True),
            s0=_require_number(mat["s0"], "material.s0", 0.0, strict=True),
            g=_require_number(mat["g"], "material.g", 0.0),
            p_a=_require_number(mat["p_a"], "material.p_a", 0.0))
    except ValueError as err:
        raise ConfigError(f"material: {err}") from err

    sc = cfg["scenario"]
    z_f = _require_number(sc["z_f"], "scenario.z_f")
    if z_f >= 0.0:
        raise ConfigError(f"scenario.z_f must satisfy z_f < 0, got {z_f}")
    q_ref = _require_number(sc["q_ref"], "scenario.q_ref", 0.0, strict=True)
    k = _require_number(sc["k"], "scenario.k", 0.0)
    phi_deg = _require_number(sc["phi_deg"], "scenario.phi_deg", 0.0, maximum=89.999)

    sol = cfg["solver"]
    grid_step = _require_number(sol["grid_step"], "solver.grid_step", 0.0, strict=True)
    ode_tolerance = _require_number(sol["ode_tolerance"], "solver.ode_tolerance", 0.0, strict=True)
    cfl = _require_number(sol["cfl"], "solver.cfl", 0.0, strict=True, maximum=0.999)
    cells = int(_require_number(sol["cells"], "solver.cells", 16.0))
    t_max = _require_number(sol["t_max"], "solver.t_max", 0.0, strict=True)
    form = sol["form"]
    if form not in ("corrected", "literal"):
        raise ConfigError(f"solver.form must be 'corrected' or 'literal', got {form!r}")
    train_length = sol["train_length"]
    if train_length is not None:
        train_length = _require_number(train_length, "solver.train_length", 0.0, strict=True)

    sw = cfg["sweep"]
    k_values = sw["k_values"]
    if k_values is not None:
        if not isinstance(k_values, (list, tuple)) or not k_values:
            raise ConfigError("sweep.k_values must be a non-empty list of numbers")
        k_values = [_require_number(v, "sweep.k_values[*]", 0.0) for v in k_values]
    phi_values = sw["phi_values_deg"]
    if phi_values is not None:
        if not isinstance(phi_values, (list, tuple)) or not phi_values:
            raise ConfigError("sweep.phi_values_deg must be a non-empty list of numbers")
        phi_values = [np.radians(_require_number(v, "sweep.phi_values_deg[*]", 0.0,
                                                 maximum=89.999))
                      for v in phi_values]
    workers = int(_require_number(sw["workers"], "sweep.workers", 1.0))

    out = cfg["output"]
    composite_times = out["composite_times"]
    if not isinstance(composite_times, (list, tuple)):
        raise ConfigError("output.composite_times must be a list of times")
    composite_times = [_require_number(v, "output.composite_times[*]", 0.0)
                       for v in composite_times]
    if not isinstance(out["emit_plots"], bool):
        raise ConfigError("output.emit_plots must be true or false")

    cr = cfg["criterion"]
    criterion_n = int(_require_number(cr["n_interactions"], "criterion.n_interactions", 0.0))
    c_s = cr["c_s"]
    if c_s is not None:
        c_s = _require_number(c_s, "criterion.c_s", 0.0, strict=True)
    wavelength = cr["wavelength"]
    if wavelength is not None:
        wavelength = _require_number(wavelength, "criterion.wavelength", 0.0, strict=True)

    fv = cfg["fvm"]
    fvm_states = None
    if any(fv[key] is not None for key in ("q_left", "w_left", "q_right", "w_right")):
        fvm_states = (
            _require_number(fv["q_left"], "fvm.q_left", 0.0, strict=True)
            if fv["q_left"] is not None else None,
            _require_number(fv["w_left"], "fvm.w_left") if fv["w_left"] is not None else None,
            _require_number(fv["q_right"], "fvm.q_right", 0.0, strict=True)
            if fv["q_right"] is not None else None,
            _require_number(fv["w_right"], "fvm.w_right") if fv["w_right"] is not None else None)
    snapshot_every = fv["snapshot_every"]
    if snapshot_every is not None:
        snapshot_every = int(_require_number(snapshot_every, "fvm.snapshot_every",
                                             1.0))

    config = RunConfig(
        material=material, z_f=z_f, q_ref=q_ref, k=k, phi=float(np.radians(phi_deg)),
        grid_step=grid_step, ode_tolerance=ode_tolerance, cfl=cfl, cells=cells,
        t_max=t_max, form=form, train_length=train_length,
        k_values=k_values, phi_values=phi_values, workers=max(1, workers),
        out_dir=Path(out["directory"]), emit_plots=out["emit_plots"],
        composite_times=composite_times, criterion_n=criterion_n,
        criterion_c_s=c_s, criterion_wavelength=wavelength,
        fvm_states=fvm_states,
        fvm_domain_length=_require_number(fv["domain_length"], "fvm.domain_length",
                                          0.0, strict=True),
        fvm_t_final=_require_number(fv["t_final"], "fvm.t_final", 0.0, strict=True),
        fvm_snapshot_every=snapshot_every)

    try:
        config.base_scenario()
    except ValueError as err:
        raise ConfigError(f"scenario: {err}") from err
    return config


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _case_label(k: float, phi: float) -> str:
    return f"case_k{k:g}_phi{np.degrees(phi):g}"


def _run_case(config: RunConfig, k: float, phi: float, with_shock: bool) -> dict:
    scenario = config.base_scenario(k=k, phi=phi)
    ref = reference_state(scenario)
    case_dir = config.out_dir / _case_label(k, phi)
    case_dir.mkdir(parents=True, exist_ok=True)
    profile = integrate_profile(scenario)
    _write_csv(case_dir / "profile.csv", "z,q0,eta,q,w,p",
               zip(profile.z, profile.q0, profile.eta, profile.q, profile.w, profile.p))
    row = {"k": k, "phi_deg": float(np.degrees(phi)), "A": ref.A, "w_ref": ref.w_ref,
           "c_ref": ref.c_ref, "admissible": profile.monotone_increasing,
           "outcome": "profile_only", "arrival_time": None, "end_depth": None,
           "min_lower_margin": None, "min_upper_margin": None}
    if not with_shock:
        return row
    if not profile.monotone_increasing:
        row["outcome"] = "not_admissible"
        return row
    path = track_shock(profile, scenario, t_max=config.t_max)
    _write_csv(case_dir / "shock.csv", "t,z,q_s,speed,lower_bound,upper_bound",
               zip(path.t, path.z, path.q_s, path.speed,
                   path.lower_bound, path.upper_bound))
    for i, t_snap in enumerate(config.composite_times):
        if not path.t[0] <= t_snap <= path.t[-1]:
            continue
        comp = composite_wave(profile, path, t_snap)
        rows = [(z, q, "kept") for z, q in zip(comp.kept_z, comp.kept_q)] + \
               [(z, q, "eliminated") for z, q in zip(comp.eliminated_z, comp.eliminated_q)]
        _write_csv(case_dir / f"composite_{i:02d}.csv", "z,q,part", rows)
    if path.reached_surface:
        row["outcome"] = "surfaced"
        row["arrival_time"] = path.arrival_time
    elif path.exhausted:
        row["outcome"] = "exhausted"
    else:
        row["outcome"] = "timeout"
    row["end_depth"] = float(path.z[-1])
    row["min_lower_margin"] = float(np.min(path.speed - path.lower_bound))
    row["min_upper_margin"] = float(np.min(path.upper_bound - path.speed))
    return row


_SUMMARY_COLUMNS = ["k", "phi_deg", "A", "w_ref", "c_ref", "admissible", "outcome",
                    "arrival_time", "end_depth", "min_lower_margin", "min_upper_margin"]


def _write_criterion_report(config: RunConfig) -> None:
    H = -config.z_f
    c_s = config.criterion_c_s if config.criterion_c_s is not None else config.material.c0
    bound = min_wavelength(H, config.criterion_n, c_s, config.material)
    candidate = config.criterion_wavelength
    if candidate is None:
        verdict = "n/a"
    else:
        verdict = "tsunami" if is_tsunami(candidate, H, config.criterion_n, c_s,
                                          config.material) else "no_wave"
    _write_csv(config.out_dir / "criterion.csv", "H,N,c_s,bound,candidate,verdict",
               [(H, config.criterion_n, c_s, bound, candidate, verdict)])
    print(f"criterion: H={_fmt(H)} N={config.criterion_n} c_s={_fmt(c_s)} "
          f"bound={_fmt(bound)} candidate={_fmt(candidate)} verdict={verdict}")


def run(config: RunConfig, with_shock: bool = True, sweep: bool = False) -> int:
    """Execute the configured case (or case matrix) and write all outputs."""
    config.out_dir.mkdir(parents=True, exist_ok=True)
    if sweep:
        ks = config.k_values if config.k_values is not None else DEFAULT_K_SWEEP
        phis = config.phi_values if config.phi_values is not None else [config.phi]
    else:
        ks, phis = [config.k], [config.phi]
    cases = [(k, phi) for k in ks for phi in phis]
    config.cases = cases

    def runner(case):
        k, phi = case
        try:
            return _run_case(config, k, phi, with_shock)
        except SimulationError as err:
            shutil.rmtree(config.out_dir / _case_label(k, phi), ignore_errors=True)
            return {"k": k, "phi_deg": float(np.degrees(phi)), "A": None, "w_ref": None,
                    "c_ref": None, "admissible": None,
                    "outcome": f"failed: {err}", "arrival_time": None, "end_depth": None,
                    "min_lower_margin": None, "min_upper_margin": None}

    if config.workers > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(runner, cases))
    else:
        rows = [runner(case) for case in cases]

    _write_csv(config.out_dir / "summary.csv", ",".join(_SUMMARY_COLUMNS),
               [[row[col] for col in _SUMMARY_COLUMNS] for row in rows])
    _write_criterion_report(config)
    if config.emit_plots:
        _emit_plot_script(config.out_dir)
    failures = sum(1 for row in rows if str(row["outcome"]).startswith("failed"))
    for row in rows:
        print(f"case k={_fmt(row['k'])} phi_deg={_fmt(row['phi_deg'])}: {row['outcome']}")
    if failures == len(rows):
        return 3
    if failures:
        return 4
    return 0


def run_fvm(config: RunConfig) -> int:
    """Measure the Riemann front speed on a refinement ladder and report."""
    config.out_dir.mkdir(parents=True, exist_ok=True)
    params = config.material
    flat = MaterialParams(rho0=params.rho0, c0=params.c0, s0=params.s0,
                          g=0.0, p_a=params.p_a)
    scenario = Scenario(column=Column(z_f=config.z_f, params=flat),
                        q_ref=config.q_ref, k=0.0)
    if config.fvm_states is not None:
        q_l, w_l, q_r, w_r = config.fvm_states
        if None in (q_l, w_l, q_r, w_r):
            raise ConfigError("fvm: q_left, w_left, q_right, w_right must be set together")
    else:
        base = config.base_scenario()
        ref = reference_state(base)
        q0f = equilibrium_strain(config.z_f, params)
        q_l, w_l = config.q_ref, ref.A * (1.0 - q0f / config.q_ref)
        q_r, w_r = float(equilibrium_strain(config.z_f, params)), 0.0
    riemann = RiemannProblem(q_left=q_l, w_left=w_l, q_right=q_r, w_right=w_r)
    target = rh_speed(q_l, w_l, q_r, w_r, params)
    rows = []
    for n in [config.cells // 4, config.cells // 2, config.cells]:
        measured = measure_front_speed(riemann, scenario, config.fvm_t_final,
                                       n_cells=n, domain=(0.0, config.fvm_domain_length),
                                       cfl=config.cfl)
        rows.append((n, measured, target, abs(measured - target) / target))
        print(f"fvm n={n}: measured={_fmt(measured)} reference={_fmt(target)} "
              f"rel_diff={_fmt(rows[-1][3])}")
    _write_csv(config.out_dir / "fvm.csv", "n_cells,measured,rh_reference,rel_diff", rows)
    if config.fvm_snapshot_every is not None:
        length = config.fvm_domain_length
        edges = np.linspace(0.0, length, config.cells + 1)
        centers = 0.5 * (edges[:-1] + edges[1:])
        interface = 0.25 * length
        state = FvState(q=np.where(centers < interface, q_l, q_r),
                        m=np.where(centers < interface, q_l * w_l, q_r * w_r),
                        dz=edges[1] - edges[0], z_origin=0.0)
        snap_rows = []

        def take(st):
            for z, qv, mv in zip(st.z_centers, st.q, st.m):
                snap_rows.append((st.t, z, qv, mv, mv / qv))

        take(state)
        for i, state in enumerate(evolve(state, scenario, config.fvm_t_final,
                                         cfl=config.cfl), start=1):
            if i % config.fvm_snapshot_every == 0:
                take(state)
        _write_csv(config.out_dir / "snapshots.csv", "t,z_center,q,m,w", snap_rows)
    return 0


def run_annex(config: RunConfig) -> int:
    """Build source waves and write their residual reports."""
    config.out_dir.mkdir(parents=True, exist_ok=True)
    params = config.material
    scenario = config.base_scenario()
    ref = reference_state(scenario)
    q0f = equilibrium_strain(config.z_f, params)
    k = config.k

    def source(q, m):
        w = m / q
        return -params.g * q - (k / params.rho0) * q * np.abs(w) * w

    column_sys = SystemDescription(u=lambda q, m: m / q,
                                   c=lambda q, m: sound_speed_q(q, params),
                                   S=source)
    wave = build_wave(column_sys, ref.A, ref.A * q0f,
                      q_interval=(q0f + 1e-3, config.q_ref - 1e-3))
    lo, hi = wave.psi_range
    # keep the phase x - x0 - A t inside [lo, hi] for every grid time
    span = hi - lo
    t_len = 0.2 * span / abs(ref.A)
    t_grid = np.linspace(0.0, t_len, 41)
    x_grid = wave.x0 + np.linspace(lo + abs(ref.A) * t_len + 0.05 * span,
                                   hi - 0.05 * span, 81)
    transport = verify_transport(wave, x_grid, t_grid)
    nonlinear = verify_nonlinear(wave, column_sys, x_grid, t_grid)
    transport.write_csv(config.out_dir / "annex_transport.csv")
    nonlinear.write_csv(config.out_dir / "annex_nonlinear.csv")
    print(f"annex: wave on q in [{_fmt(wave.q_nodes[0])}, {_fmt(wave.q_nodes[-1])}], "
          f"A={_fmt(ref.A)}")
    print(f"annex: max transport residual {_fmt(max(transport.max_q, transport.max_m))}")
    print(f"annex: max nonlinear residual {_fmt(max(nonlinear.max_q, nonlinear.max_m))}")
    return 0


_PLOT_SCRIPT = """\
#!/usr/bin/env python3
\"\"\"Render the CSV outputs next to this script (requires matplotlib).\"\"\"
import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).parent


def read(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return rows


for case_dir in sorted(here.glob("case_*")):
    rows = read(case_dir / "profile.csv")
    z = [float(r["z"]) for r in rows]
    q = [float(r["q"]) for r in rows]
    plt.figure()
    plt.plot(z, q)
    plt.xlabel("z [m]")
    plt.ylabel("q")
    plt.title(case_dir.name + ": strain profile")
    plt.savefig(case_dir / "profile.png", dpi=130)
    plt.close()
    shock = case_dir / "shock.csv"
    if shock.exists():
        rows = read(shock)
        t = [float(r["t"]) for r in rows]
        z = [float(r["z"]) for r in rows]
        s = [float(r["speed"]) for r in rows]
        lo = [float(r["lower_bound"]) for r in rows]
        hi = [float(r["upper_bound"]) for r in rows]
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
        ax1.plot(t, z)
        ax1.set_xlabel("t [s]")
        ax1.set_ylabel("shock position z [m]")
        ax2.plot(t, s, label="speed")
        ax2.plot(t, lo, "--", label="c(q0(z))")
        ax2.plot(t, hi, "--", label="A")
        ax2.set_xlabel("t [s]")
        ax2.legend()
        fig.savefig(case_dir / "shock.png", dpi=130)
        plt.close(fig)
    for comp in sorted(case_dir.glob("composite_*.csv")):
        rows = read(comp)
        plt.figure()
        for part, color in (("kept", "tab:red"), ("eliminated", "tab:blue")):
            zz = [float(r["z"]) for r in rows if r["part"] == part]
            qq = [float(r["q"]) for r in rows if r["part"] == part]
            plt.plot(zz, qq, color=color, label=part)
        plt.xlabel("z [m]")
        plt.ylabel("q")
        plt.legend()
        plt.savefig(comp.with_suffix(".png"), dpi=130)
        plt.close()
print("plots written")
"""


def _emit_plot_script(out_dir: Path) -> None:
    (out_dir / "plots.py").write_text(_PLOT_SCRIPT)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strainwave",
        description="Pressure-wave tsunami generation: profiles, shock "
                    "tracking, sweeps, finite-volume checks and the "
                    "wavelength criterion.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in [("profile", "integrate the strain-wave profile only"),
                        ("shock", "profile plus front-shock tracking"),
                        ("sweep", "case matrix over friction and incidence"),
                        ("fvm", "finite-volume front-speed measurement"),
                        ("criterion", "wavelength criterion verdict"),
                        ("annex", "source-wave residual verification")]:
        p = sub.add_parser(name, help=descr)
        p.add_argument("config", nargs="?", default=None,
                       help="JSON configuration file (defaults apply if omitted)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--k", type=float, help="friction coefficient")
        p.add_argument("--q-ref", type=float, dest="q_ref", help="forcing strain")
        p.add_argument("--z-f", type=float, dest="z_f", help="floor elevation (negative)")
        p.add_argument("--phi-deg", type=float, dest="phi_deg", help="incidence angle")
        p.add_argument("--grid-step", type=float, dest="grid_step")
        p.add_argument("--ode-tolerance", type=float, dest="ode_tolerance")
        p.add_argument("--form", choices=["corrected", "literal"])
        p.add_argument("--train-length", type=float, dest="train_length")
        p.add_argument("--t-max", type=float, dest="t_max")
        p.add_argument("--cfl", type=float)
        p.add_argument("--cells", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--emit-plots", action="store_true", default=None,
                       dest="emit_plots")
        p.add_argument("--k-values", dest="k_values",
                       help="comma-separated friction sweep values")
        p.add_argument("--phi-values-deg", dest="phi_values_deg",
                       help="comma-separated incidence sweep values")
        p.add_argument("--wavelength", type=float, help="candidate wavelength [m]")
        p.add_argument("--n-interactions", type=int, dest="n_interactions")
        p.add_argument("--c-s", type=float, dest="c_s", help="sonic interaction speed")
    return parser


def _overrides_from_args(args) -> dict:
    def parse_list(text):
        if text is None:
            return None
        return [float(v) for v in text.split(",") if v.strip()]

    return {
        "output.directory": args.out,
        "output.emit_plots": args.emit_plots,
        "scenario.k": args.k,
        "scenario.q_ref": args.q_ref,
        "scenario.z_f": args.z_f,
        "scenario.phi_deg": args.phi_deg,
        "solver.grid_step": args.grid_step,
        "solver.ode_tolerance": args.ode_tolerance,
        "solver.form": args.form,
        "solver.train_length": args.train_length,
        "solver.t_max": args.t_max,
        "solver.cfl": args.cfl,
        "solver.cells": args.cells,
        "sweep.workers": args.workers,
        "sweep.k_values": parse_list(args.k_values),
        "sweep.phi_values_deg": parse_list(args.phi_values_deg),
        "criterion.wavelength": args.wavelength,
        "criterion.n_interactions": args.n_interactions,
        "criterion.c_s": args.c_s,
    }


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        text = Path(args.config).read_text() if args.config else ""
    except OSError as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text, _overrides_from_args(args))
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        if args.command == "profile":
            return run(config, with_shock=False)
        if args.command == "shock":
            return run(config, with_shock=True)
        if args.command == "sweep":
            return run(config, with_shock=True, sweep=True)
        if args.command == "fvm":
            return run_fvm(config)
        if args.command == "criterion":
            config.out_dir.mkdir(parents=True, exist_ok=True)
            _write_criterion_report(config)
            return 0
        if args.command == "annex":
            return run_annex(config)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (SimulationError, DegenerateStatesError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
