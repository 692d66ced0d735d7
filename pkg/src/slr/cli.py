"""Command-line interface: ``slr fit|predict|cv|simulate|bench|stability``.

Every command writes one JSON document (``simulate`` writes CSV) to
``--out`` or stdout. Exit status is 0 on success, 2 for invalid input and 3
for numerical failure, with a JSON error object on stderr.
"""

import argparse
import csv
import json
import sys

from .clustering import HIERARCHICAL, SPECTRAL
from .exceptions import InputError, NumericalError
from .glm import BINOMIAL, GAUSSIAN
from .harness import run_bench, run_stability
from .io import dumps, load_dataset, model_from_dict, model_to_dict
from .model import SlrModel, predict, to_beta
from .model_selection import cv_path, fit_cv, select_one_se
from .oracle import exhaustive_best_balance
from .simulation import CASES, SimConfig, simulate_dataset


def parse_grid(text):
    """``"2,4,6"`` or ``"2:30:2"`` (start:stop:step, inclusive) to a list of ints."""
    if text is None:
        return None
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            return list(range(start, stop + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"bad --grid {text!r}") from None


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    return load_dataset(args.input, response=args.response, pseudocount=args.pseudocount,
                        family=args.family)


def _require_response(data, args):
    if data.y is None:
        raise InputError("--response is required for this command")


def cmd_fit(args):
    data = _load(args)
    _require_response(data, args)
    if args.exhaustive:
        res = exhaustive_best_balance(data.X, data.y, family=args.family)
        model = SlrModel(res.partition, res.theta0, res.theta1, args.family,
                         m=len(res.partition.active), p=data.X.shape[1],
                         feature_names=tuple(data.feature_names))
        path = None
        diagnostics = {"method": "exhaustive", "criterion": res.criterion, "ties": res.ties,
                       "candidates": res.n_candidates}
    else:
        model, path = fit_cv(data.X, data.y, grid=parse_grid(args.grid), K=args.folds,
                             family=args.family, cluster=args.cluster, seed=args.seed,
                             feature_names=data.feature_names)
        diagnostics = {"method": "slr", "cluster": args.cluster, **model.diagnostics}
    out = {
        "model": model_to_dict(model),
        "beta": to_beta(model),
        "cv_path": None if path is None else {**path.as_dict(), "selected": model.m},
        "diagnostics": {**diagnostics, "n": int(data.X.shape[0]), "p": int(data.X.shape[1])},
    }
    _emit(dumps(out), args.out)


def cmd_predict(args):
    with open(args.model, encoding="utf-8") as fh:
        doc = json.load(fh)
    data = _load(args)
    model = model_from_dict(doc.get("model", doc), feature_names=data.feature_names)
    pred = predict(model, data.X)
    _emit(dumps({"family": model.family, "samples": data.sample_ids, "predictions": pred}), args.out)


def cmd_cv(args):
    data = _load(args)
    _require_response(data, args)
    path = cv_path(data.X, data.y, grid=parse_grid(args.grid), K=args.folds, family=args.family,
                   cluster=args.cluster, seed=args.seed)
    _emit(dumps({"cv_path": {**path.as_dict(), "selected": select_one_se(path)}}), args.out)


def _sim_config(args, **overrides):
    plus, minus = CASES[args.case]
    kw = dict(n=args.n, p=args.p, plus_set=plus, minus_set=minus, sigma_eps=args.sigma_eps,
              sigma_y=args.sigma_y, theta1_true=args.theta1, binary_scale=args.binary_scale,
              family=args.family, seed=args.seed)
    kw.update(overrides)
    return SimConfig(**kw)


def cmd_simulate(args):
    cfg = _sim_config(args)
    ds = simulate_dataset(cfg)
    names = [f"x{j}" for j in range(cfg.p)]
    target = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(target, lineterminator="\n")
        w.writerow(names + ["y"])
        for row, yi in zip(ds.X, ds.y):
            w.writerow([repr(float(v)) for v in row] + [repr(float(yi))])
    finally:
        if args.out:
            target.close()
    if args.truth:
        truth = {"plus": [names[j] for j in cfg.plus_set], "minus": [names[j] for j in cfg.minus_set],
                 "beta": dict(zip(names, ds.beta_true.tolist())), "u": ds.u}
        with open(args.truth, "w", encoding="utf-8") as fh:
            fh.write(dumps(truth))


def cmd_bench(args):
    cfg = _sim_config(args)
    result = run_bench(cfg, reps=args.reps, K=args.folds, grid=parse_grid(args.grid),
                       cluster=args.cluster, test_n=args.test_n, timing=args.timing,
                       permute=args.permute)
    _emit(dumps(result), args.out)


def cmd_stability(args):
    data = _load(args)
    _require_response(data, args)
    rep = run_stability(data.X, data.y, family=args.family, reps=args.reps, fraction=args.split,
                        K=args.folds, grid=parse_grid(args.grid), cluster=args.cluster,
                        seed=args.seed, feature_names=data.feature_names)
    _emit(dumps(rep.as_dict()), args.out)


def _common(p, data=True):
    if data:
        p.add_argument("--input", required=True, help="samples x features CSV")
        p.add_argument("--response", help="response column name, or a single-column file")
        p.add_argument("--pseudocount", type=float, help="added to every cell before closure")
    p.add_argument("--family", choices=[GAUSSIAN, BINOMIAL], default=GAUSSIAN)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")


def _modelling(p):
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--grid", help='screened sizes, e.g. "2,4,6" or "2:30:2"')
    p.add_argument("--cluster", choices=[SPECTRAL, HIERARCHICAL], default=SPECTRAL)


def _simulation(p):
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=int, default=30)
    p.add_argument("--case", choices=sorted(CASES), default="i")
    p.add_argument("--sigma-eps", type=float, default=0.1)
    p.add_argument("--sigma-y", type=float, default=0.1)
    p.add_argument("--theta1", type=float, default=0.5)
    p.add_argument("--binary-scale", type=float, default=6.0)


def build_parser():
    parser = argparse.ArgumentParser(prog="slr", description="Supervised log-ratio balance selection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="select a balance by CV + one-SE rule and fit it")
    _common(p)
    _modelling(p)
    p.add_argument("--exhaustive", action="store_true", help="search all balances (p <= 10)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="apply a saved model to new samples")
    _common(p)
    p.add_argument("--model", required=True, help="JSON written by `slr fit`")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("cv", help="cross-validation error path only")
    _common(p)
    _modelling(p)
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("simulate", help="write a simulated dataset as CSV")
    _common(p, data=False)
    _simulation(p)
    p.add_argument("--truth", help="also write the true balance and coefficients as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="replicated simulation benchmark")
    _common(p, data=False)
    _modelling(p)
    _simulation(p)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--test-n", type=int, help="test set size (default: --n)")
    p.add_argument("--timing", action="store_true", help="record per-replication fit time")
    p.add_argument("--permute", action="store_true", help="shuffle training responses (null control)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stability", help="selection frequencies over random splits")
    _common(p)
    _modelling(p)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--split", type=float, default=0.7, help="training fraction")
    p.set_defaults(func=cmd_stability)
    return parser


def _fail(exc, code):
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (InputError, FileNotFoundError) as exc:
        return _fail(exc, 2)
    except NumericalError as exc:
        return _fail(exc, 3)
    return 0


if __name__ == "__main__":
    sys.exit(main())
