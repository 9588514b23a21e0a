"""Learner pool: bootstrap training, median voting, Pareto pruning, evaluation."""

from mbpep.ensemble.evaluation import evaluate, fused_batch, original_unit_batch
from mbpep.ensemble.integration import (
    MARGIN_EPSILON,
    MemberBounds,
    fuse_median,
    margin,
    margin_score,
    margins_from,
    median_vote,
    member_bounds,
    score_margins,
)
from mbpep.ensemble.pool import EnsemblePool, LearnerFailure
from mbpep.ensemble.pruning import (
    ParetoArchive,
    ParetoEntry,
    SubsetEvaluator,
    enumerate_pareto_front,
    pareto_prune,
    subset_objective,
)
from mbpep.ensemble.training import (
    TrainHistory,
    bootstrap_resample,
    child_seed,
    derive_learner_seeds,
    train_learner,
    train_pool,
)

__all__ = [
    "EnsemblePool",
    "LearnerFailure",
    "TrainHistory",
    "bootstrap_resample",
    "child_seed",
    "derive_learner_seeds",
    "train_learner",
    "train_pool",
    "MARGIN_EPSILON",
    "MemberBounds",
    "member_bounds",
    "fuse_median",
    "median_vote",
    "margins_from",
    "margin",
    "score_margins",
    "margin_score",
    "ParetoArchive",
    "ParetoEntry",
    "SubsetEvaluator",
    "subset_objective",
    "pareto_prune",
    "enumerate_pareto_front",
    "evaluate",
    "fused_batch",
    "original_unit_batch",
]
