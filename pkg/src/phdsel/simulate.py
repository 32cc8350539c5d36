"""Replicated model-selection experiments over mixture data.

Each replication draws a mixture sample, fits both families by minimum
penalized Hellinger distance, and records the studentized selection
statistic and decision.  Replications use counter-derived random substreams
keyed by (seed, n, h, replication index), so results do not depend on
execution order or worker count.
"""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .cells import BinnedSample, CellPartition, default_partition
from .divergence import penalized_hellinger
from .errors import InvalidInput, NoEquidistance
from .fit import fit_phd_to_probs
from .inference import FAVOR_FIRST, FAVOR_SECOND, model_select
from .models import (DiscreteModel, MixtureDGP, geometric_model,
                     mixture_cell_probs, poisson_model, sample_mixture)

DEFAULT_SIZES = (20, 30, 40, 50, 300)
DEFAULT_H_VALUES = (1.0, 0.5)
DEFAULT_REPS = 1000
DEFAULT_ALPHA = 0.05
DEFAULT_SEED = 20260809


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation study: a mixture weight crossed with sizes and
    penalty weights."""

    pi: float
    sizes: tuple[int, ...] = DEFAULT_SIZES
    reps: int = DEFAULT_REPS
    h_values: tuple[float, ...] = DEFAULT_H_VALUES
    alpha: float = DEFAULT_ALPHA
    seed: int = DEFAULT_SEED
    partition: CellPartition = field(default_factory=default_partition)

    def __post_init__(self):
        if not 0.0 <= self.pi <= 1.0:
            raise InvalidInput(f"pi must be in [0,1], got {self.pi!r}")
        if self.reps < 1:
            raise InvalidInput("reps must be >= 1")
        if not self.sizes:
            raise InvalidInput("sizes must be nonempty")
        if any(n < 1 for n in self.sizes):
            raise InvalidInput("every size must be >= 1")
        if any(h <= 0 for h in self.h_values):
            raise InvalidInput("every h must be > 0")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInput(f"alpha must be in (0,1), got {self.alpha!r}")


@dataclass(frozen=True)
class ExperimentRow:
    """Aggregates of one (n, h) block of replications.

    Percentages are over all replications; degenerate-variance replications
    are folded into the indecisive percentage but also counted separately.
    The statistic mean/SD skip degenerate replications.  ``pct_correct`` and
    ``pct_incorrect`` are set only when the mixture is a pure component.
    """

    pi: float
    n: int
    h: float
    lambda_mean: float
    lambda_sd: float
    p_mean: float
    p_sd: float
    dhp_poisson_mean: float
    dhp_poisson_sd: float
    dhp_geometric_mean: float
    dhp_geometric_sd: float
    hi_mean: float
    hi_sd: float
    pct_favor_poisson: float
    pct_favor_geometric: float
    pct_indecisive: float
    pct_correct: float | None
    pct_incorrect: float | None
    n_degenerate: int


def substream(seed: int, n: int, h: float, rep: int) -> np.random.Generator:
    """Deterministic per-replication generator keyed by (seed, n, h, rep)."""
    h_key = int(round(h * 10**6))
    return np.random.default_rng(np.random.SeedSequence((seed, n, h_key, rep)))


def _replicate(config: ExperimentConfig, dgp: MixtureDGP,
               pois: DiscreteModel, geom: DiscreteModel,
               n: int, h: float, rep: int) -> tuple:
    rng = substream(config.seed, n, h, rep)
    data = sample_mixture(dgp, n, rng)
    idx = config.partition.bin_indices(data)
    counts = np.bincount(idx, minlength=config.partition.m)
    sample = BinnedSample(counts=counts, n=n)
    rep_out = model_select(sample, pois, geom, h, config.alpha)
    return (rep_out.fit1.theta_hat[0], rep_out.fit2.theta_hat[0],
            rep_out.d1, rep_out.d2, rep_out.hi, rep_out.decision,
            rep_out.degenerate)


def run_experiment(config: ExperimentConfig,
                   max_workers: int | None = None) -> list[ExperimentRow]:
    """Run the full grid of (n, h) blocks.

    ``max_workers`` fans replications out over threads; results are stored
    by replication index and aggregated afterwards, so any worker count
    produces bit-identical rows.
    """
    dgp = MixtureDGP(pi=config.pi)
    pois = poisson_model(config.partition)
    geom = geometric_model(config.partition)
    rows = []
    for n in config.sizes:
        for h in config.h_values:
            task = partial(_replicate, config, dgp, pois, geom, n, h)
            if max_workers and max_workers > 1:
                with ThreadPoolExecutor(max_workers=max_workers) as pool:
                    results = list(pool.map(task, range(config.reps)))
            else:
                results = [task(rep) for rep in range(config.reps)]
            rows.append(_aggregate(config, n, h, results))
    return rows


def _aggregate(config: ExperimentConfig, n: int, h: float,
               results: list[tuple]) -> ExperimentRow:
    lam, p, d1, d2, hi, decision, degenerate = zip(*results)
    lam, p, d1, d2, hi = (np.array(v, dtype=float) for v in (lam, p, d1, d2, hi))
    reps = len(results)
    n_deg = int(sum(degenerate))
    ok = ~np.isnan(hi)
    n_fav1 = sum(d == FAVOR_FIRST for d in decision)
    n_fav2 = sum(d == FAVOR_SECOND for d in decision)
    n_ind = reps - n_fav1 - n_fav2  # degenerate reps are indecisive already

    def sd(v: np.ndarray) -> float:
        return float(np.std(v, ddof=1)) if v.size > 1 else 0.0

    pct = lambda c: 100.0 * c / reps
    if config.pi == 1.0:
        correct, incorrect = pct(n_fav1), pct(n_fav2)
    elif config.pi == 0.0:
        correct, incorrect = pct(n_fav2), pct(n_fav1)
    else:
        correct = incorrect = None
    return ExperimentRow(
        pi=config.pi, n=n, h=h,
        lambda_mean=float(lam.mean()), lambda_sd=sd(lam),
        p_mean=float(p.mean()), p_sd=sd(p),
        dhp_poisson_mean=float(d1.mean()), dhp_poisson_sd=sd(d1),
        dhp_geometric_mean=float(d2.mean()), dhp_geometric_sd=sd(d2),
        hi_mean=float(hi[ok].mean()) if ok.any() else math.nan,
        hi_sd=sd(hi[ok]) if ok.any() else math.nan,
        pct_favor_poisson=pct(n_fav1), pct_favor_geometric=pct(n_fav2),
        pct_indecisive=pct(n_ind),
        pct_correct=correct, pct_incorrect=incorrect,
        n_degenerate=n_deg,
    )


@dataclass(frozen=True)
class EquidistanceResult:
    pi_star: float
    degenerate: bool


def equidistance_gap(pi: float, model1: DiscreteModel, model2: DiscreteModel,
                     partition: CellPartition, h: float,
                     poisson_rate: float = 4.0, geometric_p: float = 0.2) -> float:
    """Fitted-distance gap d1 - d2 of the two families against the exact
    mixture with weight ``pi`` (population level, no sampling)."""
    mix = mixture_cell_probs(pi, partition, poisson_rate, geometric_p)
    d1 = fit_phd_to_probs(model1, mix, h).objective
    d2 = fit_phd_to_probs(model2, mix, h).objective
    return d1 - d2


def equidistance_pi(model1: DiscreteModel, model2: DiscreteModel,
                    partition: CellPartition, h: float,
                    poisson_rate: float = 4.0,
                    geometric_p: float = 0.2) -> EquidistanceResult:
    """Mixing weight at which both families are equally distant from the
    mixture, found by bisection of the population gap.

    Identical families make every weight an equidistance point; 0.5 is
    returned with the ``degenerate`` flag.  A gap without a sign change on
    [0, 1] raises NoEquidistance.
    """
    gap = lambda pi: equidistance_gap(pi, model1, model2, partition, h,
                                      poisson_rate, geometric_p)
    probe = [gap(pi) for pi in (0.0, 0.25, 0.5, 0.75, 1.0)]
    if max(abs(g) for g in probe) < 1e-10:
        return EquidistanceResult(pi_star=0.5, degenerate=True)
    lo, hi_ = 0.0, 1.0
    g_lo, g_hi = probe[0], probe[-1]
    if g_lo == 0.0:
        return EquidistanceResult(pi_star=0.0, degenerate=False)
    if g_hi == 0.0:
        return EquidistanceResult(pi_star=1.0, degenerate=False)
    if (g_lo > 0.0) == (g_hi > 0.0):
        raise NoEquidistance("distance gap has no sign change on [0, 1]")
    for _ in range(60):
        mid = 0.5 * (lo + hi_)
        g_mid = gap(mid)
        if g_mid == 0.0:
            return EquidistanceResult(pi_star=mid, degenerate=False)
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi_ = mid
        if hi_ - lo < 1e-10:
            break
    return EquidistanceResult(pi_star=0.5 * (lo + hi_), degenerate=False)


CSV_COLUMNS = (
    "pi", "n", "h",
    "lambda_mean", "lambda_sd", "p_mean", "p_sd",
    "dhp_poisson_mean", "dhp_poisson_sd",
    "dhp_geometric_mean", "dhp_geometric_sd",
    "hi_mean", "hi_sd",
    "pct_favor_poisson", "pct_favor_geometric", "pct_indecisive",
    "pct_correct", "pct_incorrect", "n_degenerate",
)

_TEXT_HEADERS = ("pi", "n", "h", "lambda_hat", "p_hat", "DHP(Pois)",
                 "DHP(Geom)", "HI", "%Pois", "%Geom", "%correct",
                 "%indecisive", "%incorrect")


def _round3(x: float) -> str:
    return "" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.3f}"


def _pct(x: float | None) -> str:
    return "" if x is None else f"{x:.0f}"


def emit_table(rows: list[ExperimentRow], format: str = "csv") -> str:
    """Render experiment rows: ``csv`` for machines, ``text`` for humans.

    Values carry three decimals and percentages are rounded to integers.
    """
    if not rows:
        raise InvalidInput("no rows to render")
    if format == "csv":
        out = io.StringIO()
        out.write(",".join(CSV_COLUMNS) + "\n")
        for r in rows:
            vals = [f"{r.pi:g}", str(r.n), f"{r.h:g}",
                    _round3(r.lambda_mean), _round3(r.lambda_sd),
                    _round3(r.p_mean), _round3(r.p_sd),
                    _round3(r.dhp_poisson_mean), _round3(r.dhp_poisson_sd),
                    _round3(r.dhp_geometric_mean), _round3(r.dhp_geometric_sd),
                    _round3(r.hi_mean), _round3(r.hi_sd),
                    _pct(r.pct_favor_poisson), _pct(r.pct_favor_geometric),
                    _pct(r.pct_indecisive), _pct(r.pct_correct),
                    _pct(r.pct_incorrect), str(r.n_degenerate)]
            out.write(",".join(vals) + "\n")
        return out.getvalue()
    if format == "text":
        table = [_TEXT_HEADERS]
        for r in rows:
            table.append((f"{r.pi:g}", str(r.n), f"{r.h:g}",
                          f"{r.lambda_mean:.3f}({r.lambda_sd:.3f})",
                          f"{r.p_mean:.3f}({r.p_sd:.3f})",
                          f"{r.dhp_poisson_mean:.3f}({r.dhp_poisson_sd:.3f})",
                          f"{r.dhp_geometric_mean:.3f}({r.dhp_geometric_sd:.3f})",
                          _round3(r.hi_mean) + "(" + _round3(r.hi_sd) + ")",
                          _pct(r.pct_favor_poisson), _pct(r.pct_favor_geometric),
                          _pct(r.pct_correct), _pct(r.pct_indecisive),
                          _pct(r.pct_incorrect)))
        widths = [max(len(row[i]) for row in table) for i in range(len(_TEXT_HEADERS))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths))
                 for row in table]
        return "\n".join(lines) + "\n"
    raise InvalidInput(f"unknown table format {format!r}")


_CONFIG_KEYS = ("pi", "sizes", "reps", "h_values", "alpha", "seed", "cuts")


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Validate a flat JSON-style mapping; errors name the offending key."""
    for key in _CONFIG_KEYS:
        if key not in raw:
            raise InvalidInput(f"config key '{key}' is missing")
    unknown = set(raw) - set(_CONFIG_KEYS)
    if unknown:
        raise InvalidInput(f"config key '{sorted(unknown)[0]}' is not recognized")
    try:
        partition = CellPartition(cuts=(0.0, *map(float, raw["cuts"]), math.inf))
    except (TypeError, ValueError, InvalidInput) as exc:
        raise InvalidInput(f"config key 'cuts' is invalid: {exc}") from exc
    checks = {
        "pi": float, "reps": int, "alpha": float, "seed": int,
    }
    kw = {}
    for key, cast in checks.items():
        try:
            kw[key] = cast(raw[key])
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"config key '{key}' is invalid: {exc}") from exc
    for key, cast in (("sizes", int), ("h_values", float)):
        try:
            kw[key] = tuple(cast(v) for v in raw[key])
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"config key '{key}' is invalid: {exc}") from exc
    return ExperimentConfig(partition=partition, **kw)


def load_config(path: str) -> ExperimentConfig:
    """Read an ExperimentConfig from a flat JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidInput("config must be a JSON object")
    return config_from_dict(raw)
