"""SGD and Adam parameter updates for base learners.

The Adam step follows the usual bias-corrected moment recursion:

    m <- b1 m + (1 - b1) g
    v <- b2 v + (1 - b2) g^2
    theta <- theta - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from mbpep.core.exceptions import NonFiniteError, ValidationError
from mbpep.nnet.learner import BaseLearner, Gradients
from mbpep.schemas.config import OptimizerConfig, OptimizerKind


@dataclass
class OptimizerState:
    """Mutable optimizer state for one learner.

    Attributes:
        kind: Update rule.
        learning_rate: Step size.
        adam_betas: Moment decay rates.
        adam_epsilon: Denominator guard.
        first_moments: Per-parameter m, shaped like `BaseLearner.parameters()`.
        second_moments: Per-parameter v.
        step_count: Updates applied so far.
    """

    kind: OptimizerKind
    learning_rate: float
    adam_betas: tuple[float, float] = (0.9, 0.999)
    adam_epsilon: float = 1e-8
    first_moments: list[NDArray[np.float64]] = field(default_factory=list)
    second_moments: list[NDArray[np.float64]] = field(default_factory=list)
    step_count: int = 0


def init_optimizer(config: OptimizerConfig, learner: BaseLearner) -> OptimizerState:
    """Fresh optimizer state with zero moments mirroring the learner's parameters."""
    params = learner.parameters()
    state = OptimizerState(
        kind=config.kind,
        learning_rate=config.learning_rate,
        adam_betas=(config.beta1, config.beta2),
        adam_epsilon=config.epsilon,
    )
    if config.kind is OptimizerKind.ADAM:
        state.first_moments = [np.zeros_like(p) for p in params]
        state.second_moments = [np.zeros_like(p) for p in params]
    return state


def apply_update(
    learner: BaseLearner,
    grads: Gradients,
    opt: OptimizerState,
) -> tuple[BaseLearner, OptimizerState]:
    """Apply one update in place and return the learner and state.

    Raises:
        ValidationError: If gradient shapes differ from parameter shapes.
        NonFiniteError: If any gradient entry is NaN/Inf; nothing is updated.
    """
    params = learner.parameters()
    grad_arrays = grads.arrays()
    if len(params) != len(grad_arrays) or any(
        p.shape != g.shape for p, g in zip(params, grad_arrays)
    ):
        raise ValidationError(
            "Gradient shapes do not match parameters",
            details={
                "parameters": [list(p.shape) for p in params],
                "gradients": [list(g.shape) for g in grad_arrays],
            },
        )
    if not grads.is_finite():
        raise NonFiniteError("Non-finite gradient, update skipped")

    opt.step_count += 1
    if opt.kind is OptimizerKind.SGD:
        for param, grad in zip(params, grad_arrays):
            param -= opt.learning_rate * grad
        return learner, opt

    if not opt.first_moments:
        opt.first_moments = [np.zeros_like(p) for p in params]
        opt.second_moments = [np.zeros_like(p) for p in params]
    beta1, beta2 = opt.adam_betas
    correction1 = 1.0 - beta1**opt.step_count
    correction2 = 1.0 - beta2**opt.step_count
    for param, grad, m, v in zip(
        params, grad_arrays, opt.first_moments, opt.second_moments
    ):
        m *= beta1
        m += (1.0 - beta1) * grad
        v *= beta2
        v += (1.0 - beta2) * grad * grad
        param -= (
            opt.learning_rate
            * (m / correction1)
            / (np.sqrt(v / correction2) + opt.adam_epsilon)
        )
    return learner, opt
