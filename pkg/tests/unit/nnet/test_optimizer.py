"""Unit tests for SGD and Adam updates."""

import numpy as np
import pytest

from mbpep.core import NonFiniteError, ValidationError
from mbpep.nnet import BaseLearner, Gradients, apply_update, init_optimizer
from mbpep.schemas import Activation, OptimizerConfig, OptimizerKind


def scalar_learner(theta: float = 1.0) -> BaseLearner:
    return BaseLearner(
        layer_dims=[1, 2],
        weights=[np.full((1, 2), theta)],
        biases=[np.zeros(2)],
        activation=Activation.SIGMOID,
    )


def gradients(weight: float, bias: float = 0.0) -> Gradients:
    return Gradients(weights=[np.full((1, 2), weight)], biases=[np.full(2, bias)])


class TestSgd:
    """Test cases for plain gradient descent."""

    def test_one_step(self) -> None:
        """Test theta 1.0, g 2.0, lr 0.1 gives 0.8."""
        learner = scalar_learner(1.0)
        opt = init_optimizer(OptimizerConfig(kind=OptimizerKind.SGD, learning_rate=0.1), learner)
        apply_update(learner, gradients(2.0), opt)
        np.testing.assert_allclose(learner.weights[0], 0.8)
        assert opt.step_count == 1


class TestAdam:
    """Test cases for bias-corrected Adam."""

    def test_zero_gradient_is_fixed_point(self) -> None:
        """Test that g = 0 leaves parameters unchanged but counts the step."""
        learner = scalar_learner(1.0)
        opt = init_optimizer(OptimizerConfig(), learner)
        apply_update(learner, gradients(0.0), opt)
        np.testing.assert_array_equal(learner.weights[0], 1.0)
        assert opt.step_count == 1

    @pytest.mark.parametrize("g", [1e-3, 1.0, 1e3])
    def test_first_step_magnitude_is_lr(self, g: float) -> None:
        """Test that the first update has size lr whatever the gradient scale."""
        learner = scalar_learner(1.0)
        opt = init_optimizer(OptimizerConfig(learning_rate=0.01), learner)
        apply_update(learner, gradients(g), opt)
        np.testing.assert_allclose(learner.weights[0], 1.0 - 0.01, rtol=1e-4)


class TestGuards:
    """Test cases for update validation."""

    def test_non_finite_gradient_skips_update(self) -> None:
        """Test that NaN gradients raise before touching parameters."""
        learner = scalar_learner(1.0)
        opt = init_optimizer(OptimizerConfig(), learner)
        with pytest.raises(NonFiniteError):
            apply_update(learner, gradients(np.nan), opt)
        np.testing.assert_array_equal(learner.weights[0], 1.0)
        assert opt.step_count == 0

    def test_shape_mismatch(self) -> None:
        """Test that gradient shapes must match parameters."""
        learner = scalar_learner()
        opt = init_optimizer(OptimizerConfig(), learner)
        bad = Gradients(weights=[np.zeros((2, 2))], biases=[np.zeros(2)])
        with pytest.raises(ValidationError):
            apply_update(learner, bad, opt)
