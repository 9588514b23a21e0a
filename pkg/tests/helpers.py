"""Builders shared across test modules."""

from typing import Any

import numpy as np
from numpy.typing import NDArray

from mbpep.ensemble import EnsemblePool
from mbpep.nnet import BaseLearner, ForwardTrace, Mode, backward, forward, init_learner
from mbpep.piloss import IntervalBatch, loss_mbpep, loss_mbpep_grad
from mbpep.schemas import BoundMode, LossConfig, RunConfig, TrainConfig


def make_pool(
    size: int,
    input_dim: int = 1,
    hidden: tuple[int, ...] = (6,),
    seed: int = 0,
    bound_mode: BoundMode = BoundMode.SOFTPLUS,
) -> EnsemblePool:
    """Pool of untrained random learners with every learner selected."""
    cfg = TrainConfig(pool_size=size, hidden_dims=hidden, bound_mode=bound_mode)
    learners = [
        init_learner(
            cfg.layer_dims(input_dim),
            dropout_retention=1.0,
            seed=seed * 1000 + index,
            bound_mode=bound_mode,
        )
        for index in range(size)
    ]
    return EnsemblePool(
        learners=learners,
        bootstrap_seeds=list(range(size)),
        selection_mask=np.ones(size, dtype=bool),
        train_config=cfg,
    )


def tiny_run_config(**sections: Any) -> RunConfig:
    """Run config small enough to train in well under a second."""
    document: dict[str, Any] = {
        "seed": 3,
        "threads": 1,
        "data": {"n": 90},
        "train": {"epochs": 3, "pool_size": 3, "hidden_dims": [5], "batch_size": 16},
        "prune": {"max_iterations": 20},
    }
    for name, values in sections.items():
        if isinstance(values, dict):
            document[name] = {**document.get(name, {}), **values}
        else:
            document[name] = values
    return RunConfig.model_validate(document)


def traced_loss(
    learner: BaseLearner,
    inputs: NDArray[np.float64],
    targets: NDArray[np.float64],
    cfg: LossConfig,
    dropout_seed: int = 42,
) -> tuple[ForwardTrace, IntervalBatch, float]:
    """Train-mode loss with dropout masks fixed by ``dropout_seed``."""
    trace, bounds = forward(learner, inputs, Mode.TRAIN, np.random.default_rng(dropout_seed))
    batch = bounds.with_targets(targets)
    return trace, batch, loss_mbpep(batch, cfg)


def analytic_param_grads(
    learner: BaseLearner,
    inputs: NDArray[np.float64],
    targets: NDArray[np.float64],
    cfg: LossConfig,
    dropout_seed: int = 42,
) -> list[NDArray[np.float64]]:
    """Backpropagated gradients of the traced loss, weights then biases."""
    trace, batch, _ = traced_loss(learner, inputs, targets, cfg, dropout_seed)
    grad_lower, grad_upper = loss_mbpep_grad(batch, cfg)
    return backward(learner, trace, np.column_stack([grad_lower, grad_upper])).arrays()


def numeric_param_grads(
    learner: BaseLearner,
    inputs: NDArray[np.float64],
    targets: NDArray[np.float64],
    cfg: LossConfig,
    h: float = 1e-6,
    dropout_seed: int = 42,
) -> list[NDArray[np.float64]]:
    """Central finite differences over every parameter, weights then biases."""
    grads = []
    for param in learner.parameters():
        grad = np.empty_like(param)
        for index in np.ndindex(param.shape):
            original = param[index]
            param[index] = original + h
            f_plus = traced_loss(learner, inputs, targets, cfg, dropout_seed)[2]
            param[index] = original - h
            f_minus = traced_loss(learner, inputs, targets, cfg, dropout_seed)[2]
            param[index] = original
            grad[index] = (f_plus - f_minus) / (2 * h)
        grads.append(grad)
    return grads
