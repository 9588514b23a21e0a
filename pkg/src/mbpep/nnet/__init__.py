"""Feed-forward interval learners with analytic backpropagation."""

from mbpep.nnet.learner import (
    BaseLearner,
    ForwardTrace,
    Gradients,
    Mode,
    backward,
    default_activation,
    forward,
    init_learner,
    predict,
)
from mbpep.nnet.optimizer import OptimizerState, apply_update, init_optimizer

__all__ = [
    "BaseLearner",
    "ForwardTrace",
    "Gradients",
    "Mode",
    "backward",
    "default_activation",
    "forward",
    "init_learner",
    "predict",
    "OptimizerState",
    "apply_update",
    "init_optimizer",
]
