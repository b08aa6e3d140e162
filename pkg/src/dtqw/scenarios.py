"""Built-in experiment presets and the scenario pipeline.

Each preset bundles the disorder kind(s), step count, ensemble size and
emitted files of one standard experiment:

    fig2   ordered two-walker joint distributions, t=50
    fig3   static disorder joints + localization-length fit, t=50, n=100
    fig4   dynamic disorder joints + Gaussian semilog fit, t=50, n=100
    fluct  fluctuating-scenario joints (static + fluctuating phases, both at
           full strength) + Gaussian fit, t=50, n=100
    fig5   variance vs step for all disorder kinds + power-law fits,
           t=100, n=100 (the space-time random kind appears twice: alone as
           "fluctuating" and riding on full static disorder as "combined")
    fig6   final variance vs disorder strength, static and dynamic, t=100, n=100
    fig7   final variance vs fluctuating strength at full static strength
           (mobility edge), t=100, n=100
    fig8   joint entropy vs step, t=100, n=50
    fig9   mutual information vs step, t=100, n=50

``run_scenario`` executes a preset configuration (possibly with overridden
fields), writes the result tables plus a reproducibility manifest, and is
byte-deterministic in (config, seed) for every data file.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .config import ScenarioConfig
from .disorder import GENERATOR_ID, DisorderKind
from .fitting import FitError, fit_exponential_decay, fit_gaussian_semilog, fit_power_law
from .observables import classical_baseline, ensemble_average_joints, ensemble_run
from .output import Table, emit_results, joint_table, marginal_table, sha256_file, write_json

STRENGTH_GRID = tuple(k * math.pi / 10 for k in range(11))

_SERIES_KINDS = (
    DisorderKind.ORDERED,
    DisorderKind.DYNAMIC,
    DisorderKind.FLUCTUATING,
    DisorderKind.COMBINED,
    DisorderKind.STATIC,
)
_INFO_KINDS = (DisorderKind.ORDERED, DisorderKind.DYNAMIC, DisorderKind.STATIC)


@dataclass
class RunManifest:
    scenario: dict
    artifact_version: str
    generator: str
    base_seed: int
    duration_seconds: float
    files: dict[str, str]  # file name -> sha256 of contents

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _presets() -> dict[str, ScenarioConfig]:
    pi = math.pi
    return {
        "fig2": ScenarioConfig("fig2", steps=50, disorder=DisorderKind.ORDERED, configs=1, seed=200),
        "fig3": ScenarioConfig("fig3", steps=50, disorder=DisorderKind.STATIC, phi_max=pi, configs=100, seed=300),
        "fig4": ScenarioConfig("fig4", steps=50, disorder=DisorderKind.DYNAMIC, phi_max=pi, configs=100, seed=400),
        "fluct": ScenarioConfig(
            "fluct", steps=50, disorder=DisorderKind.COMBINED, phi_static=pi, phi_dynamic=pi, configs=100, seed=450
        ),
        "fig5": ScenarioConfig(
            "fig5", steps=100, phi_max=pi, configs=100, seed=500, observables=("variance",)
        ),
        "fig6": ScenarioConfig(
            "fig6", steps=100, configs=100, seed=600, observables=("variance",),
            sweep_parameter="phi_max", sweep_values=STRENGTH_GRID,
        ),
        "fig7": ScenarioConfig(
            "fig7", steps=100, disorder=DisorderKind.COMBINED, phi_static=pi, configs=100, seed=700,
            observables=("variance",), sweep_parameter="phi_dynamic", sweep_values=STRENGTH_GRID,
        ),
        "fig8": ScenarioConfig("fig8", steps=100, phi_max=pi, configs=50, seed=800, observables=("entropy",)),
        "fig9": ScenarioConfig(
            "fig9", steps=100, phi_max=pi, configs=50, seed=900, observables=("mutual_information",)
        ),
    }


def preset_names() -> tuple[str, ...]:
    return tuple(_presets())


def preset(name: str) -> ScenarioConfig:
    presets = _presets()
    if name not in presets:
        raise ValueError(f"unknown scenario {name!r}; available: {', '.join(presets)}")
    cfg = presets[name]
    return dataclasses.replace(cfg, out_dir=str(Path("results") / name))


def _sym_names(cfg: ScenarioConfig) -> tuple[str, ...]:
    if cfg.symmetry == "both":
        return ("bosonic", "fermionic")
    return (cfg.symmetry,)


def _fit_or_error(fit: Callable, *args, **kwargs) -> dict:
    try:
        return fit(*args, **kwargs).to_dict()
    except FitError as exc:
        return {"error": str(exc)}


def _plan_joints(cfg: ScenarioConfig, n_jobs: int):
    joints, marg, positions = ensemble_average_joints(cfg, n_jobs=n_jobs)
    tables = []
    for sym, joint in joints.items():
        suffix = "bose" if sym.value == "bosonic" else "fermi"
        tables.append(joint_table(f"joint_{suffix}", joint.matrix, positions))
    tables.append(marginal_table("marginal", marg, positions))

    docs = {}
    center = 0.5 * sum(cfg.start_sites)
    if cfg.name == "fig3":
        docs["fits"] = {"exponential_wing": _fit_or_error(fit_exponential_decay, marg, positions, center)}
    elif cfg.name in ("fig4", "fluct"):
        docs["fits"] = {
            "semilog_parabola": _fit_or_error(fit_gaussian_semilog, marg, positions),
            "exponential_wing": _fit_or_error(fit_exponential_decay, marg, positions, center),
        }
    return tables, docs


def _baseline_table(steps: int, per_step: bool) -> Table:
    if per_step:
        rows = [(t, classical_baseline(t)) for t in range(steps + 1)]
    else:
        rows = [(steps, classical_baseline(steps))]
    return Table("classical_baseline", ("step", "variance"), rows)


def _plan_variance_series(cfg: ScenarioConfig, n_jobs: int):
    table = Table("variance_vs_t", ("step", "kind", "symmetry", "var_mean", "var_std"))
    fits: dict[str, dict] = {}
    for kind in _SERIES_KINDS:
        sub = dataclasses.replace(cfg, disorder=kind, observables=("variance",))
        series = ensemble_run(sub, n_jobs=n_jobs)
        for sym in _sym_names(cfg):
            s = series[("variance", sym)]
            for t, m, sd in zip(s.steps, s.mean, s.std_dev):
                table.rows.append((int(t), kind.value, sym, float(m), float(sd)))
            fits[f"{kind.value}_{sym}"] = _fit_or_error(fit_power_law, s)
    return [table, _baseline_table(cfg.steps, per_step=True)], {"fits": fits}


def _plan_strength_sweep(cfg: ScenarioConfig, n_jobs: int):
    table = Table("variance_vs_phi", ("phi", "kind", "symmetry", "var_mean", "var_std"))
    for kind in (DisorderKind.STATIC, DisorderKind.DYNAMIC):
        for phi in cfg.sweep_values:
            sub = dataclasses.replace(
                cfg, disorder=kind, phi_max=phi, observables=("variance",),
                sweep_parameter=None, sweep_values=(),
            )
            series = ensemble_run(sub, eval_steps=[cfg.steps], n_jobs=n_jobs)
            for sym in _sym_names(cfg):
                s = series[("variance", sym)]
                table.rows.append((float(phi), kind.value, sym, float(s.mean[0]), float(s.std_dev[0])))
    return [table, _baseline_table(cfg.steps, per_step=False)], {}


def _plan_mobility(cfg: ScenarioConfig, n_jobs: int):
    table = Table("variance_vs_phi_dynamic", ("phi_dynamic", "symmetry", "var_mean", "var_std"))
    crossings: dict[str, float | None] = {sym: None for sym in _sym_names(cfg)}
    baseline = classical_baseline(cfg.steps)
    for phi in cfg.sweep_values:
        sub = dataclasses.replace(
            cfg, disorder=DisorderKind.COMBINED, phi_dynamic=phi, observables=("variance",),
            sweep_parameter=None, sweep_values=(),
        )
        series = ensemble_run(sub, eval_steps=[cfg.steps], n_jobs=n_jobs)
        for sym in _sym_names(cfg):
            s = series[("variance", sym)]
            table.rows.append((float(phi), sym, float(s.mean[0]), float(s.std_dev[0])))
            if crossings[sym] is None and s.mean[0] > baseline:
                crossings[sym] = float(phi)
    doc = {
        "classical_baseline": baseline,
        "phi_static": cfg.resolved_phi_static(),
        "grid": list(cfg.sweep_values),
        "first_crossing": crossings,
    }
    return [table, _baseline_table(cfg.steps, per_step=False)], {"mobility_edge": doc}


def _plan_info_series(cfg: ScenarioConfig, n_jobs: int):
    observable = cfg.observables[0]
    stem = "entropy_vs_t" if observable == "entropy" else "mutual_information_vs_t"
    table = Table(stem, ("step", "kind", "symmetry", "mean", "std_dev"))
    for kind in _INFO_KINDS:
        sub = dataclasses.replace(cfg, disorder=kind, observables=(observable,))
        series = ensemble_run(sub, n_jobs=n_jobs)
        for sym in _sym_names(cfg):
            s = series[(observable, sym)]
            for t, m, sd in zip(s.steps, s.mean, s.std_dev):
                table.rows.append((int(t), kind.value, sym, float(m), float(sd)))
    return [table], {}


_PLANS = {
    "fig2": _plan_joints,
    "fig3": _plan_joints,
    "fig4": _plan_joints,
    "fluct": _plan_joints,
    "fig5": _plan_variance_series,
    "fig6": _plan_strength_sweep,
    "fig7": _plan_mobility,
    "fig8": _plan_info_series,
    "fig9": _plan_info_series,
}


def run_scenario(cfg: ScenarioConfig, n_jobs: int = 1) -> RunManifest:
    """Execute one scenario: evolve, measure, fit, and write all outputs.

    Emits the plan's tables in ``cfg.format``, any fit/diagnostic documents
    as JSON, and a ``manifest.json`` with SHA-256 digests of every emitted
    file.  Identical (config, seed) produce byte-identical data files.
    """
    cfg.validate()
    if cfg.name not in _PLANS:
        raise ValueError(f"unknown scenario {cfg.name!r}; available: {', '.join(_PLANS)}")
    start = time.time()
    tables, docs = _PLANS[cfg.name](cfg, n_jobs)
    out_dir = Path(cfg.out_dir)
    paths = emit_results(tables, cfg.format, out_dir)
    for stem, doc in docs.items():
        path = out_dir / f"{stem}.json"
        write_json(doc, path)
        paths.append(path)
    manifest = RunManifest(
        scenario=cfg.to_dict(),
        artifact_version=__version__,
        generator=GENERATOR_ID,
        base_seed=cfg.seed,
        duration_seconds=time.time() - start,
        files={p.name: sha256_file(p) for p in paths},
    )
    write_json(manifest.to_dict(), out_dir / "manifest.json")
    return manifest
