"""Monte-Carlo experiment pipeline: demand models, advice construction,
policy computation and worst/average ratio aggregation."""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from .advice import box_advice, ellipse_advice, point_advice
from .bounds import no_advice_level
from .consistency import cstar_bisection
from .engine import ordered_sequence, performance_ratio, run_sequence, unit_chunks
from .pareto import solve_pareto
from .plfunction import PLFunction, constant_pl
from .ratios import DemandPoint, Rewards, cp


@dataclass(frozen=True)
class DemandModel:
    """Two-component mixture over demand coordinates, truncated at zero.

    The main component is Uniform(main_low, main_high) or Normal(mean, sd)
    depending on ``kind``; the contaminant is Uniform(cont_low, cont_high);
    each coordinate is drawn independently from the mixture.
    """

    kind: str = "uniform-mixture"
    weight: float = 0.9
    main_low: float = 10.0
    main_high: float = 20.0
    mean: float = 15.0
    sd: float = 3.0
    cont_low: float = 0.0
    cont_high: float = 30.0

    def __post_init__(self) -> None:
        if self.kind not in ("uniform-mixture", "normal-mixture"):
            raise ValueError(f"unknown demand model kind {self.kind!r}")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError("mixture weight must lie in [0, 1]")


def sample_demand(model: DemandModel, rng: np.random.Generator) -> DemandPoint:
    """Draw one demand point; coordinates are independent mixture draws."""
    coords = []
    for _ in range(2):
        if rng.random() < model.weight:
            if model.kind == "uniform-mixture":
                v = rng.uniform(model.main_low, model.main_high)
            else:
                v = rng.normal(model.mean, model.sd)
        else:
            v = rng.uniform(model.cont_low, model.cont_high)
        coords.append(max(0.0, float(v)))
    return DemandPoint(coords[0], coords[1])


@dataclass(frozen=True)
class EvalReport:
    """Worst/average performance ratios of a policy (or of many trials)."""

    avg_cp: float | None
    worst_cp: float | None
    per_instance: tuple[float, ...] = ()
    per_trial: tuple[tuple[float, float], ...] = ()

    @property
    def empty(self) -> bool:
        return self.avg_cp is None


def _instance_ratio(policy, pt, order, rw, rng, n_perms):
    x, y = pt.x, pt.y
    if order == "adversarial":
        state = run_sequence(ordered_sequence(x, y), policy, rw)
        return performance_ratio(state, rw)
    chunks = unit_chunks(x, y)
    total = 0.0
    for _ in range(n_perms):
        perm = [chunks[i] for i in rng.permutation(len(chunks))]
        total += performance_ratio(run_sequence(perm, policy, rw), rw)
    return total / n_perms


def evaluate(policy: PLFunction, testset, order: str, rw: Rewards,
             rng: np.random.Generator | None = None, n_perms: int = 100) -> EvalReport:
    """Score a policy on a test set under adversarial or stochastic order."""
    if order not in ("adversarial", "stochastic"):
        raise ValueError("order must be 'adversarial' or 'stochastic'")
    if order == "stochastic" and rng is None:
        rng = np.random.default_rng(0)
    ratios = tuple(
        _instance_ratio(policy, pt, order, rw, rng, n_perms) for pt in testset
    )
    if not ratios:
        return EvalReport(None, None, ())
    return EvalReport(sum(ratios) / len(ratios), min(ratios), ratios)


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte-Carlo experiment: model, advice kind and evaluation setup."""

    model: DemandModel = field(default_factory=DemandModel)
    advice_kind: str = "box"  # box | ellipse | point | none | grid
    z: float = 1.0
    n_samples: int = 10
    K: int = 1000
    c_rule: float = 1.0
    n_test: int = 100
    order: str = "adversarial"
    seed: int = 0
    n_perms: int = 100
    segments: int = 64
    epsilon: float = 1e-6

    def __post_init__(self) -> None:
        if self.advice_kind not in ("box", "ellipse", "point", "none", "grid"):
            raise ValueError(f"unknown advice kind {self.advice_kind!r}")
        if not 0.0 < self.c_rule <= 1.0:
            raise ValueError("c_rule must lie in (0, 1]")


def _grid_policy(samples, rw: Rewards) -> PLFunction:
    """Best fixed protection level on the training samples by grid search
    (maximizes the worst ordered-arrival ratio); a non-paper baseline."""
    grid = np.linspace(0.0, rw.m, 201)
    best_p, best_v = 0.0, -1.0
    for p in grid:
        v = min(cp(float(p), pt, rw) for pt in samples)
        if v > best_v + 1e-12:
            best_p, best_v = float(p), v
    return constant_pl(best_p, max(rw.m, 1.0))


def _trial_policy(cfg: ExperimentConfig, rw: Rewards, samples) -> PLFunction:
    if cfg.advice_kind == "none":
        return constant_pl(no_advice_level(rw), rw.m)
    if cfg.advice_kind == "grid":
        return _grid_policy(samples, rw)
    pts = [(p.x, p.y) for p in samples]
    if cfg.advice_kind == "box":
        region = box_advice(pts, cfg.z)
    elif cfg.advice_kind == "ellipse":
        region = ellipse_advice(pts, cfg.z, cfg.segments)
    else:
        region = point_advice(pts)
    c_star = cstar_bisection(region, rw, cfg.epsilon).c_star
    return solve_pareto(region, rw, cfg.c_rule * c_star).p_star


def run_experiment(cfg: ExperimentConfig, rw: Rewards) -> EvalReport:
    """K advice-drawing trials scored on one shared test set.

    Reported Avg CP is the mean over trials of the per-trial average ratio;
    Worst CP is the mean over trials of the per-trial minimum ratio.
    """
    master = np.random.SeedSequence(cfg.seed)
    test_ss, *trial_ss = master.spawn(cfg.K + 1)
    test_rng = np.random.default_rng(test_ss)
    testset = [sample_demand(cfg.model, test_rng) for _ in range(cfg.n_test)]

    def one_trial(ss) -> tuple[float, float]:
        rng = np.random.default_rng(ss)
        samples = [sample_demand(cfg.model, rng) for _ in range(cfg.n_samples)]
        policy = _trial_policy(cfg, rw, samples)
        rep = evaluate(policy, testset, cfg.order, rw, rng, cfg.n_perms)
        return rep.avg_cp, rep.worst_cp

    workers = int(os.environ.get("PARETO_PL_THREADS", "0")) or min(
        4, os.cpu_count() or 1
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = tuple(pool.map(one_trial, trial_ss))
    else:
        per_trial = tuple(one_trial(ss) for ss in trial_ss)

    if not per_trial:
        return EvalReport(None, None)
    avg = sum(t[0] for t in per_trial) / len(per_trial)
    worst = sum(t[1] for t in per_trial) / len(per_trial)
    return EvalReport(avg, worst, (), per_trial)


def write_report_csv(report: EvalReport, path: str) -> None:
    """One row per trial (or per instance when no trials were run)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if report.per_trial:
            w.writerow(["trial", "avg_cp", "worst_cp"])
            for i, (a, b) in enumerate(report.per_trial):
                w.writerow([i, f"{a:.12g}", f"{b:.12g}"])
        else:
            w.writerow(["instance", "cp"])
            for i, r in enumerate(report.per_instance):
                w.writerow([i, f"{r:.12g}"])


def write_report_json(report: EvalReport, path: str, cfg: ExperimentConfig | None = None) -> None:
    """Summary JSON with optional echo of the experiment configuration."""
    payload = {
        "avg_cp": report.avg_cp,
        "worst_cp": report.worst_cp,
        "n_trials": len(report.per_trial),
        "n_instances": len(report.per_instance),
    }
    if cfg is not None:
        payload["config"] = asdict(cfg)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
