"""Supervised log-ratio (SLR) selection of a single balance biomarker."""

from .clustering import TwoClusterResult, cluster_two
from .coda import BalancePartition, VariationMatrix, alr, balance, clr, closure, inv_alr, variation_matrix
from .estimator import SLRClassifier, SLRRegressor
from .metrics import SelectionReport, auc, l2_error, mse, selection_metrics
from .model import SlrModel, fit_balance_glm, fit_slr, predict, to_beta
from .model_selection import CvPath, cv_path, fit_cv, select_one_se, stratified_kfold
from .oracle import OracleResult, exhaustive_best_balance
from .screening import UnivariateEffects, top_m_indices, univariate_effects
from .simulation import SimConfig, SimDataset, alpha_coefficients, simulate_dataset

__all__ = [
    "alpha_coefficients",
    "alr",
    "auc",
    "balance",
    "BalancePartition",
    "closure",
    "clr",
    "cluster_two",
    "cv_path",
    "CvPath",
    "exhaustive_best_balance",
    "fit_balance_glm",
    "fit_cv",
    "fit_slr",
    "inv_alr",
    "l2_error",
    "mse",
    "OracleResult",
    "predict",
    "select_one_se",
    "selection_metrics",
    "SelectionReport",
    "SimConfig",
    "SimDataset",
    "simulate_dataset",
    "SLRClassifier",
    "SlrModel",
    "SLRRegressor",
    "stratified_kfold",
    "to_beta",
    "top_m_indices",
    "TwoClusterResult",
    "univariate_effects",
    "UnivariateEffects",
    "variation_matrix",
    "VariationMatrix",
]

__version__ = "0.1.0"
