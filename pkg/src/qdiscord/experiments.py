"""Reproducible ensemble experiments behind the CLI.

Every pipeline draws state k from the substream (seed, k), so the output is
a pure function of the configuration: reruns and different worker counts
produce byte-identical tables.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .canonical import to_canonical
from .ensembles import SeededGenerator, mixture_family, project_x_state, random_hs_state
from .measures import (angles_from_direction, direction_from_angles,
                       minimize_conditional_entropy, quantum_discord)


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings shared by the ensemble experiments."""

    samples: int = 10000
    seed: int = 42
    bins: tuple[int, int] = (100, 100)
    workers: int = 1
    cluster_tol: float = 0.01  # angular tolerance between axes, in units of pi
    out: Optional[str] = None

    def validate(self) -> "ExperimentConfig":
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.bins[0] < 1 or self.bins[1] < 1:
            raise ValueError("bins must be positive")
        return self


# --------------------------------------------------------------------------- #
# per-index tasks (module level so they pickle for worker pools)              #
# --------------------------------------------------------------------------- #

def _optimal_angles_task(args: tuple[int, int, bool]) -> tuple[float, float]:
    seed, index, x_project = args
    rho = random_hs_state(SeededGenerator(seed, start=index))
    if x_project:
        rho = project_x_state(rho)
    decomp = to_canonical(rho)
    n, _ = minimize_conditional_entropy(decomp.canonical_state)
    return angles_from_direction(n)


def _discord_pair_task(args: tuple[int, int]) -> tuple[float, float]:
    seed, index = args
    rho = random_hs_state(SeededGenerator(seed, start=index))
    report = quantum_discord(rho)
    return report.discord, report.mcdm_discord


def _mixture_point_task(q: float) -> tuple[float, float, float]:
    report = quantum_discord(mixture_family(q))
    return q, report.discord, report.mcdm_discord


def _pmap(fn, items, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(items) // (workers * 8))
    with ctx.Pool(processes=workers) as pool:
        return pool.map(fn, items, chunksize=chunk)


# --------------------------------------------------------------------------- #
# pipelines                                                                   #
# --------------------------------------------------------------------------- #

TABLE1_HEADER = ("theta_over_pi", "phi_over_pi", "percentage")
HISTOGRAM_HEADER = ("theta_bin_lower_over_pi", "phi_bin_lower_over_pi", "count")
MIXTURE_HEADER = ("q", "discord", "mcdm_discord")
SCATTER_HEADER = ("index", "discord", "mcdm_discord")


def optimal_direction_clusters(config: ExperimentConfig) -> list[tuple[float, float, float]]:
    """Optimal-measurement clusters for random X-states, as rows
    (theta/pi, phi/pi, percentage) in descending order.

    Pipeline per state: Hilbert-Schmidt draw, X projection, canonical form,
    conditional-entropy minimization.  Directions are clustered greedily by
    axis angle (tolerance ``cluster_tol`` * pi); each cluster is labelled by
    its first member.
    """
    config.validate()
    angles = _pmap(_optimal_angles_task,
                   [(config.seed, i, True) for i in range(config.samples)],
                   config.workers)
    tol = config.cluster_tol * math.pi
    cos_tol = math.cos(tol)
    reps: list[np.ndarray] = []
    labels: list[tuple[float, float]] = []
    counts: list[int] = []
    for theta, phi in angles:
        n = direction_from_angles(theta, phi)
        for k, rep in enumerate(reps):
            if abs(float(rep @ n)) >= cos_tol:
                counts[k] += 1
                break
        else:
            reps.append(n)
            labels.append((theta, phi))
            counts.append(1)
    order = sorted(range(len(reps)), key=lambda k: (-counts[k], k))
    return [(labels[k][0] / math.pi, labels[k][1] / math.pi,
             100.0 * counts[k] / config.samples) for k in order]


def optimal_direction_histogram(config: ExperimentConfig) -> list[tuple[float, float, int]]:
    """2-D histogram of optimal measurements for random states, as rows
    (theta bin lower edge / pi, phi bin lower edge / pi, count), non-empty
    bins only, in bin order.  Counts sum to ``samples``.
    """
    config.validate()
    angles = _pmap(_optimal_angles_task,
                   [(config.seed, i, False) for i in range(config.samples)],
                   config.workers)
    t_bins, p_bins = config.bins
    counts: dict[tuple[int, int], int] = {}
    for theta, phi in angles:
        ti = min(int(theta / math.pi * t_bins), t_bins - 1)
        pi_ = min(int((phi + math.pi / 2) / math.pi * p_bins), p_bins - 1)
        key = (ti, pi_)
        counts[key] = counts.get(key, 0) + 1
    return [(ti / t_bins, -0.5 + pi_ / p_bins, counts[(ti, pi_)])
            for ti, pi_ in sorted(counts)]


def mixture_curve(config: ExperimentConfig) -> list[tuple[float, float, float]]:
    """(q, discord, upper bound) on a uniform q grid with ``samples`` points."""
    config.validate()
    count = config.samples
    qs = [i / (count - 1) for i in range(count)] if count > 1 else [0.0]
    return _pmap(_mixture_point_task, qs, config.workers)


def bound_scatter(config: ExperimentConfig) -> tuple[list[tuple[int, float, float]], float]:
    """(index, discord, upper bound) for random states plus the mean squared gap."""
    config.validate()
    pairs = _pmap(_discord_pair_task,
                  [(config.seed, i) for i in range(config.samples)],
                  config.workers)
    rows = [(i, d, dt) for i, (d, dt) in enumerate(pairs)]
    mean_sq = math.fsum((dt - d) ** 2 for d, dt in pairs) / len(pairs)
    return rows, mean_sq


# --------------------------------------------------------------------------- #
# CSV output                                                                  #
# --------------------------------------------------------------------------- #

def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def render_csv(header, rows, summary: Optional[str] = None) -> str:
    """CSV text: header row, 12-significant-digit values, LF endings."""
    lines = [",".join(header)]
    lines.extend(",".join(_format_value(v) for v in row) for row in rows)
    if summary is not None:
        lines.append(summary)
    return "\n".join(lines) + "\n"


def write_output(text: str, path: Optional[str]) -> None:
    """Write to stdout, or atomically to ``path`` (temp file and rename)."""
    if path is None:
        sys.stdout.write(text)
        return
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)
