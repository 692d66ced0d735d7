"""Replication benchmark and split-stability harnesses."""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .clustering import SPECTRAL
from .exceptions import InputError, SLRError
from .glm import BINOMIAL, GAUSSIAN
from .metrics import auc, l2_error, mse, selection_metrics
from .model import predict, to_beta
from .model_selection import fit_cv, make_rng
from .simulation import SimConfig, simulate_dataset

__all__ = ["StabilityReport", "run_bench", "run_stability", "thread_count", "train_test_split"]


def thread_count(threads=None):
    """Worker count: explicit value, else ``SLR_THREADS``, else 1."""
    if threads is None:
        threads = os.environ.get("SLR_THREADS", "1")
    try:
        threads = int(threads)
    except ValueError:
        raise InputError(f"SLR_THREADS must be an integer, got {threads!r}") from None
    return max(1, threads)


def parallel_map(fn, items, threads=None):
    """``list(map(fn, items))``, optionally spread over worker processes.

    Results come back in input order, so output never depends on scheduling.
    """
    items = list(items)
    n = min(thread_count(threads), len(items))
    if n <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _quantiles(values):
    v = np.asarray([x for x in values if x is not None], dtype=float)
    if v.size == 0:
        return None
    q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0])
    return {"min": q[0], "q25": q[1], "median": q[2], "q75": q[3], "max": q[4], "mean": float(v.mean())}


@dataclass(frozen=True)
class _BenchTask:
    cfg: SimConfig
    rep: int
    test_n: int
    K: int
    grid: tuple
    cluster: str
    timing: bool
    permute: bool = False


def _bench_one(task: _BenchTask):
    cfg = task.cfg
    train = simulate_dataset(cfg, task.rep, 0)
    if task.permute:
        train = replace(train, y=make_rng(cfg.seed, task.rep, 3).permutation(train.y))
    test_cfg = replace(cfg, n=task.test_n)
    test = simulate_dataset(test_cfg, task.rep, 1)
    row = {"rep": task.rep}
    start = time.perf_counter()
    try:
        model, path = fit_cv(train.X, train.y, grid=task.grid, K=task.K, family=cfg.family,
                             cluster=task.cluster, seed=(cfg.seed, task.rep, 2))
    except SLRError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    elapsed = time.perf_counter() - start
    beta = to_beta(model)
    sel = selection_metrics(beta, train.beta_true)
    pred = predict(model, test.X)
    row.update({
        "m": model.m,
        "plus": list(model.partition.plus),
        "minus": list(model.partition.minus),
        "theta0": model.theta0,
        "theta1": model.theta1,
        "l2_error": l2_error(beta, train.beta_true),
        **sel.as_dict(),
    })
    if cfg.family == GAUSSIAN:
        row["mse"] = mse(test.y, pred)
    else:
        row["auc"] = auc(pred, test.y) if np.unique(test.y).size == 2 else None
    if path.flags:
        row["cv_flags"] = len(path.flags)
    if task.timing:
        row["fit_time"] = elapsed
    return row


def run_bench(cfg: SimConfig, reps=100, K=10, grid=None, cluster=SPECTRAL, test_n=None,
              threads=None, timing=False, permute=False):
    """Simulate, fit by CV + one-SE, and score ``reps`` independent replications.

    Replication ``r`` draws its training set, test set and folds from
    sub-streams ``(seed, r, 0)``, ``(seed, r, 1)`` and ``(seed, r, 2)``, so
    results do not depend on how replications are scheduled. Fit times are
    only recorded when ``timing`` is set, as they make output irreproducible.
    With ``permute`` the training responses are shuffled (sub-stream
    ``(seed, r, 3)``) as a null control; test sets are left intact.

    Returns
    -------
    dict
        ``{"config": ..., "rows": [...], "summary": {metric: quantiles}}``.
    """
    if reps < 1:
        raise InputError("need at least one replication")
    test_n = cfg.n if test_n is None else int(test_n)
    grid = None if grid is None else tuple(grid)
    tasks = [_BenchTask(cfg, r, test_n, K, grid, cluster, timing, permute) for r in range(reps)]
    rows = parallel_map(_bench_one, tasks, threads)
    metric = "mse" if cfg.family == GAUSSIAN else "auc"
    keys = [metric, "f1", "tpr", "fpr", "precision", "l2_error", "m"] + (["fit_time"] if timing else [])
    ok = [r for r in rows if "error" not in r]
    summary = {k: _quantiles([r[k] for r in ok]) for k in keys}
    summary["failures"] = len(rows) - len(ok)
    config = {**asdict(cfg), "reps": reps, "folds": K, "grid": grid, "cluster": cluster, "test_n": test_n,
              "permute": permute}
    return {"config": config, "rows": rows, "summary": summary}


def train_test_split(y, fraction, rng, stratify):
    """Index arrays for a random split with ``fraction`` of samples in training.

    When stratifying, each class is split separately with its training share
    rounded to the nearest integer.
    """
    y = np.asarray(y)
    groups = [np.flatnonzero(y == c) for c in np.unique(y)] if stratify else [np.arange(y.size)]
    train = []
    for g in groups:
        g = rng.permutation(g)
        train.append(g[: int(round(fraction * g.size))])
    train = np.sort(np.concatenate(train))
    test = np.setdiff1d(np.arange(y.size), train)
    return train, test


@dataclass
class StabilityReport:
    """Selection frequencies over repeated random train/test splits.

    ``proportion[j]`` is the share of successful splits whose balance used
    variable ``j``; ``numerator[j]`` and ``denominator[j]`` count on which
    side it appeared.
    """

    feature_names: list
    proportion: np.ndarray
    numerator: np.ndarray
    denominator: np.ndarray
    metric: str
    test_metric: list
    model_size: list
    n_splits: int
    failures: list = field(default_factory=list)

    def as_dict(self):
        vars_ = [
            {"name": name, "proportion": float(pr), "numerator": int(nu), "denominator": int(de)}
            for name, pr, nu, de in zip(self.feature_names, self.proportion, self.numerator, self.denominator)
        ]
        return {
            "n_splits": self.n_splits,
            "metric": self.metric,
            "test_metric": self.test_metric,
            "model_size": self.model_size,
            "variables": vars_,
            "failures": self.failures,
        }


@dataclass(frozen=True)
class _SplitTask:
    X: np.ndarray
    y: np.ndarray
    family: str
    split: int
    seed: int
    fraction: float
    K: int
    grid: tuple
    cluster: str


def _split_one(t: _SplitTask):
    rng = make_rng(t.seed, t.split, 0)
    train, test = train_test_split(t.y, t.fraction, rng, stratify=t.family == BINOMIAL)
    try:
        model, _ = fit_cv(t.X[train], t.y[train], grid=t.grid, K=t.K, family=t.family,
                          cluster=t.cluster, seed=(t.seed, t.split, 1))
    except SLRError as exc:
        return {"split": t.split, "error": f"{type(exc).__name__}: {exc}"}
    pred = predict(model, t.X[test])
    if t.family == GAUSSIAN:
        score = mse(t.y[test], pred)
    else:
        score = auc(pred, t.y[test]) if np.unique(t.y[test]).size == 2 else None
    return {"split": t.split, "plus": model.partition.plus, "minus": model.partition.minus,
            "m": model.m, "score": score}


def run_stability(X, y, family=GAUSSIAN, reps=20, fraction=0.7, K=10, grid=None,
                  cluster=SPECTRAL, seed=0, feature_names=None, threads=None) -> StabilityReport:
    """Refit on ``reps`` random splits and tally which variables get selected."""
    if reps < 1:
        raise InputError("need at least one split")
    if not 0 < fraction < 1:
        raise InputError("split fraction must lie strictly between 0 and 1")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    p = X.shape[1]
    names = list(feature_names) if feature_names is not None else [f"x{j}" for j in range(p)]
    grid = None if grid is None else tuple(grid)
    tasks = [_SplitTask(X, y, family, s, seed, fraction, K, grid, cluster) for s in range(reps)]
    results = parallel_map(_split_one, tasks, threads)
    numerator = np.zeros(p, dtype=int)
    denominator = np.zeros(p, dtype=int)
    scores, sizes, failures = [], [], []
    for res in results:
        if "error" in res:
            failures.append(res)
            continue
        numerator[list(res["plus"])] += 1
        denominator[list(res["minus"])] += 1
        scores.append(res["score"])
        sizes.append(res["m"])
    ok = len(results) - len(failures)
    proportion = (numerator + denominator) / ok if ok else np.zeros(p)
    return StabilityReport(
        feature_names=names,
        proportion=proportion,
        numerator=numerator,
        denominator=denominator,
        metric="mse" if family == GAUSSIAN else "auc",
        test_metric=scores,
        model_size=sizes,
        n_splits=reps,
        failures=failures,
    )
