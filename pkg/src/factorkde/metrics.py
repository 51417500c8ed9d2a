"""Error metrics for the simulation study and rank-based diagnostics."""
import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateDataError
from .margins import UniformMatrix

REPORT_COLUMNS = ("estimator", "n", "d", "k", "family", "theta",
                  "rmse", "mae", "sd", "bias", "reps", "seed0")


@dataclass(frozen=True)
class ErrorSummary:
    """Across-replication aggregate of the per-replication error triples."""
    rmse: float
    mae: float
    sd: float
    bias: float


def replication_errors(est_values, true_values):
    """(rmse, mae, mean error) of est - true over one replication."""
    est = np.asarray(est_values, dtype=float).ravel()
    tru = np.asarray(true_values, dtype=float).ravel()
    if est.size != tru.size:
        raise ValueError(f"length mismatch: {est.size} vs {tru.size}")
    if est.size == 0:
        raise ValueError("need at least one evaluation point")
    e = est - tru
    return float(np.sqrt(np.mean(e * e))), float(np.mean(np.abs(e))), float(np.mean(e))


def aggregate(reps) -> ErrorSummary:
    """Aggregate replication triples: means of rmse/mae, bias = mean of the
    mean errors, sd = their across-replication sample standard deviation."""
    arr = np.asarray(list(reps), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("expected a sequence of (rmse, mae, mean_err) triples")
    if arr.shape[0] < 2:
        raise ValueError("need at least 2 replications to aggregate")
    return ErrorSummary(rmse=float(arr[:, 0].mean()),
                        mae=float(arr[:, 1].mean()),
                        sd=float(arr[:, 2].std(ddof=1)),
                        bias=float(arr[:, 2].mean()))


def rmsd(est_values, true_values) -> float:
    """Root mean squared difference between two value vectors."""
    return replication_errors(est_values, true_values)[0]


def scree_eigenvalues(u):
    """Descending eigenvalues of the Spearman rank correlation matrix."""
    um = UniformMatrix.coerce(u)
    vals = um.values
    n, d = vals.shape
    ranks = np.empty_like(vals)
    for j in range(d):
        col = vals[:, j]
        if np.unique(col).size < 2:
            raise DegenerateDataError(f"column {j} is constant")
        order = np.argsort(col, kind="stable")
        ranks[order, j] = np.arange(1, n + 1, dtype=float)
    corr = np.corrcoef(ranks, rowvar=False)
    corr = np.atleast_2d(corr)
    return np.sort(np.linalg.eigvalsh(corr))[::-1]


def write_report_csv(path, rows):
    """Write aggregate rows (dicts keyed by REPORT_COLUMNS) as CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in REPORT_COLUMNS])


def _format_cell(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return x
