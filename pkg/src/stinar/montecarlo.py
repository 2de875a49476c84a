"""Seeded Monte Carlo study of the STINAR(1) estimators.

Each replication ``r`` of cell ``c`` draws from its own generator derived from
``(seed, c, r)``, so results do not depend on how replications are split
across worker processes. Aggregates use exactly rounded sums (``math.fsum``)
in replication order.
"""

import csv
import io
import json
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product

from .errors import InputFormatError, ParameterError
from .estimation import StinarWarning, cls_alpha, mom_mu
from .moments import jump_second_moment, jump_third_moment, plugin_jump_moments
from .params import StinarParams, alpha_bound
from .process import simulate_stinar
from .rng import make_rng

FIELDS = (
    "alpha", "mu1", "mu2", "n", "replications",
    "mean_alpha", "mse_alpha", "mean_mu1", "mse_mu1", "mean_mu2", "mse_mu2",
    "mean_muJ2", "true_muJ2", "mean_muJ3", "true_muJ3", "flagged",
)


@dataclass
class McConfig:
    grid: list
    sample_sizes: list
    replications: int = 5000
    seed: int = 0
    parallelism: object = 1
    chunk: int = 250

    def __post_init__(self):
        self.grid = [tuple(float(v) for v in g) for g in self.grid]
        self.sample_sizes = [int(n) for n in self.sample_sizes]
        if int(self.replications) < 1:
            raise ParameterError("replications must be >= 1")
        self.replications = int(self.replications)
        for n in self.sample_sizes:
            if n < 3:
                raise ParameterError(f"sample sizes must be >= 3, got {n}")
        for g in self.grid:
            if len(g) != 3:
                raise ParameterError(f"grid points are (alpha, mu1, mu2) triples, got {g}")
            StinarParams(*g)

    def cells(self):
        """``(cell_index, (alpha, mu1, mu2), n)`` ordered by sample size, then grid point."""
        return [(i, g, n) for i, (n, g) in enumerate(product(self.sample_sizes, self.grid))]

    def workers(self):
        if self.parallelism in (None, "auto", 0):
            return os.cpu_count() or 1
        return max(1, int(self.parallelism))


def load_config(path):
    """Read a JSON experiment file.

    Keys: ``sample_sizes`` (list of int), ``replications`` (int), ``seed``
    (int), optional ``parallelism`` (int or ``"auto"``), and either ``grid``
    (list of ``[alpha, mu1, mu2]``) or both ``alphas`` and ``mu_pairs``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"config {path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputFormatError(f"cannot read config {path}: {exc.strerror}") from None
    return config_from_dict(raw)


def config_from_dict(raw):
    if not isinstance(raw, dict):
        raise InputFormatError("config must be a JSON object")
    known = {"grid", "alphas", "mu_pairs", "sample_sizes", "replications", "seed", "parallelism", "chunk"}
    for key in raw:
        if key not in known:
            raise InputFormatError(f"config key {key!r} is not recognised")

    def need(key, kind):
        if key not in raw:
            raise InputFormatError(f"config key {key!r} is missing")
        val = raw[key]
        if not isinstance(val, kind) or isinstance(val, bool):
            raise InputFormatError(f"config key {key!r} has the wrong type")
        return val

    if "grid" in raw:
        grid = need("grid", list)
    else:
        alphas = need("alphas", list)
        pairs = need("mu_pairs", list)
        try:
            grid = [(a, m1, m2) for (m1, m2) in pairs for a in alphas]
        except (TypeError, ValueError):
            raise InputFormatError("config key 'mu_pairs' must hold [mu1, mu2] pairs") from None
    sizes = need("sample_sizes", list)
    reps = need("replications", int)
    seed = need("seed", int)
    try:
        return McConfig(
            grid=grid,
            sample_sizes=sizes,
            replications=reps,
            seed=seed,
            parallelism=raw.get("parallelism", 1),
            chunk=raw.get("chunk", 250),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise InputFormatError(f"config values malformed: {exc}") from None


def replicate(params, n, seed, cell, r):
    """One replication: simulate, estimate, and plug the estimates into the jump moments."""
    rng = make_rng(seed, cell, r)
    z = simulate_stinar(params, n, rng)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StinarWarning)
        a = cls_alpha(z)
        m1, m2 = mom_mu(z)
    j2, j3 = plugin_jump_moments(a, m1, m2)
    flagged = m1 <= 0 or m2 <= 0 or not 0 <= a <= alpha_bound(m1, m2)
    return (a, m1, m2, j2, j3, float(flagged))


def _run_chunk(args):
    params, n, seed, cell, lo, hi = args
    return cell, lo, [replicate(params, n, seed, cell, r) for r in range(lo, hi)]


def _aggregate(params, n, rows):
    a, m1, m2 = params
    p = StinarParams(a, m1, m2)
    cols = list(zip(*rows))
    R = len(rows)

    def mean(v):
        return math.fsum(v) / R

    def mse(v, truth):
        return math.fsum((x - truth) ** 2 for x in v) / R

    return {
        "alpha": a, "mu1": m1, "mu2": m2, "n": n, "replications": R,
        "mean_alpha": mean(cols[0]), "mse_alpha": mse(cols[0], a),
        "mean_mu1": mean(cols[1]), "mse_mu1": mse(cols[1], m1),
        "mean_mu2": mean(cols[2]), "mse_mu2": mse(cols[2], m2),
        "mean_muJ2": mean(cols[3]), "true_muJ2": jump_second_moment(p),
        "mean_muJ3": mean(cols[4]), "true_muJ3": jump_third_moment(p),
        "flagged": int(sum(cols[5])),
    }


@dataclass
class McReport:
    cells: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def run_study(cfg, progress=None):
    """Run every cell of ``cfg`` and return the aggregated :class:`McReport`."""
    cells = cfg.cells()
    jobs = []
    for cell, g, n in cells:
        for lo in range(0, cfg.replications, cfg.chunk):
            jobs.append((g, n, cfg.seed, cell, lo, min(lo + cfg.chunk, cfg.replications)))

    results = {cell: [None] * cfg.replications for cell, _, _ in cells}

    def store(out):
        cell, lo, rows = out
        results[cell][lo:lo + len(rows)] = rows
        if progress:
            progress(len(rows))

    workers = cfg.workers()
    if workers == 1 or len(jobs) == 1:
        for job in jobs:
            store(_run_chunk(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(_run_chunk, jobs):
                store(out)

    report = McReport(config={
        "grid": [list(g) for g in cfg.grid],
        "sample_sizes": cfg.sample_sizes,
        "replications": cfg.replications,
        "seed": cfg.seed,
    })
    for cell, g, n in cells:
        report.cells.append(_aggregate(g, n, results[cell]))
    return report


def _check_complete(report):
    for i, rec in enumerate(report.cells):
        missing = [k for k in FIELDS if k not in rec or rec[k] is None]
        if missing:
            raise ParameterError(f"report cell {i} is incomplete: missing {missing}")


def to_csv(report):
    """CSV text, one row per cell; floats written with ``repr`` so they read back exactly."""
    _check_complete(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for rec in report.cells:
        w.writerow([repr(rec[k]) if isinstance(rec[k], float) else rec[k] for k in FIELDS])
    return buf.getvalue()


def from_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    cells = []
    for row in rows:
        rec = {}
        for k in FIELDS:
            if k not in row:
                raise InputFormatError(f"CSV column {k!r} is missing")
            rec[k] = int(row[k]) if k in ("n", "replications", "flagged") else float(row[k])
        cells.append(rec)
    return McReport(cells=cells)


def _group(report):
    groups = {}
    for rec in report.cells:
        groups.setdefault((rec["mu1"], rec["mu2"]), []).append(rec)
    return groups


def to_text(report):
    """Aligned tables: estimator means with MSEs in parentheses, then jump moments.

    True jump moments are repeated on every row so they sit next to the estimates.
    """
    _check_complete(report)
    lines = []
    for (m1, m2), recs in _group(report).items():
        lines.append(f"Estimates for (mu1, mu2) = ({m1:g}, {m2:g}): empirical mean (MSE)")
        lines.append(f"{'n':>5} {'alpha':>6}  {'alpha_hat':>17}  {'mu1_hat':>17}  {'mu2_hat':>17}")
        for r in recs:
            lines.append(
                f"{r['n']:>5} {r['alpha']:>6g}  "
                f"{r['mean_alpha']:7.4f} ({r['mse_alpha']:7.4f})  "
                f"{r['mean_mu1']:7.4f} ({r['mse_mu1']:7.4f})  "
                f"{r['mean_mu2']:7.4f} ({r['mse_mu2']:7.4f})"
            )
        lines.append("")
        lines.append(f"Jump moments for (mu1, mu2) = ({m1:g}, {m2:g}): true value and empirical mean")
        lines.append(f"{'n':>5} {'alpha':>6}  {'muJ2':>8} {'muJ2_hat':>9}  {'muJ3':>8} {'muJ3_hat':>9}  {'flagged':>7}")
        for r in recs:
            lines.append(
                f"{r['n']:>5} {r['alpha']:>6g}  {r['true_muJ2']:8.1f} {r['mean_muJ2']:9.2f}  "
                f"{r['true_muJ3']:8.1f} {r['mean_muJ3']:9.2f}  {r['flagged']:>7d}"
            )
        lines.append("")
    if not report.cells:
        lines.append("  ".join(FIELDS))
    return "\n".join(lines).rstrip("\n") + "\n"


def emit_tables(report, fmt="csv", path=None):
    """Render ``report`` as ``"csv"`` or ``"text"``; write to ``path`` when given."""
    if fmt == "csv":
        out = to_csv(report)
    elif fmt == "text":
        out = to_text(report)
    else:
        raise ParameterError(f"unknown table format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    return out
