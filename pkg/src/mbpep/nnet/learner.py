"""Two-headed feed-forward interval predictor.

A learner maps N x d inputs through hidden layers (Sigmoid or Relu, with
inverted dropout in training) to two linear output units, which the bound
parameterization turns into (lower, upper). `backward` replays a
`ForwardTrace` to give exact gradients of any loss whose derivative with
respect to the bounds is known.

Example::

    learner = init_learner([1, 100, 2], Activation.RELU, 0.8, seed=7)
    trace, bounds = forward(learner, x, Mode.TRAIN, np.random.default_rng(0))
    grads = backward(learner, trace, np.column_stack([d_lower, d_upper]))
"""

from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from mbpep.core.exceptions import ValidationError
from mbpep.piloss.batch import IntervalBounds
from mbpep.schemas.config import Activation, BoundMode

DEFAULT_DROPOUT_RETENTION = 0.8


class Mode(StrEnum):
    """Forward pass mode."""

    TRAIN = "train"
    INFER = "infer"


@dataclass
class BaseLearner:
    """One interval predictor.

    Attributes:
        layer_dims: Widths from input to the 2-unit output layer.
        weights: Per-layer matrices of shape (fan_in, fan_out).
        biases: Per-layer vectors of length fan_out.
        activation: Hidden activation.
        dropout_retention: Keep probability for hidden units in training.
        rng_seed: Seed the parameters were drawn from.
        bound_mode: Output parameterization.
    """

    layer_dims: list[int]
    weights: list[NDArray[np.float64]]
    biases: list[NDArray[np.float64]]
    activation: Activation
    dropout_retention: float = DEFAULT_DROPOUT_RETENTION
    rng_seed: int = 0
    bound_mode: BoundMode = BoundMode.SOFTPLUS

    def __post_init__(self) -> None:
        _check_layer_dims(self.layer_dims)
        if len(self.weights) != len(self.layer_dims) - 1 or len(self.biases) != len(
            self.weights
        ):
            raise ValidationError(
                "Parameter count does not match layer_dims",
                details={"layer_dims": self.layer_dims, "layers": len(self.weights)},
            )
        for index, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            expected = (self.layer_dims[index], self.layer_dims[index + 1])
            if weight.shape != expected or bias.shape != (expected[1],):
                raise ValidationError(
                    "Parameter shapes do not chain with layer_dims",
                    details={
                        "layer": index,
                        "weight_shape": list(weight.shape),
                        "bias_shape": list(bias.shape),
                        "expected": list(expected),
                    },
                )

    @property
    def n_layers(self) -> int:
        """Number of weight layers."""
        return len(self.weights)

    @property
    def input_dim(self) -> int:
        """Expected input column count."""
        return self.layer_dims[0]

    def parameters(self) -> list[NDArray[np.float64]]:
        """Weights then biases, per layer, in a fixed order."""
        return [*self.weights, *self.biases]

    def copy(self) -> "BaseLearner":
        """Deep copy of the parameters."""
        return BaseLearner(
            layer_dims=list(self.layer_dims),
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            activation=self.activation,
            dropout_retention=self.dropout_retention,
            rng_seed=self.rng_seed,
            bound_mode=self.bound_mode,
        )


@dataclass
class ForwardTrace:
    """Activations cached by `forward` for `backward`.

    ``layer_inputs[l]`` is the (post-dropout) input of weight layer l, so
    ``layer_inputs[0]`` is the raw input. ``dropout_masks[l]`` belongs to the
    hidden activation produced by layer l and is None in inference or when
    retention is 1.
    """

    layer_inputs: list[NDArray[np.float64]]
    pre_activations: list[NDArray[np.float64]]
    dropout_masks: list[NDArray[np.float64] | None]
    raw_output: NDArray[np.float64]
    mode: Mode


@dataclass
class Gradients:
    """Parameter gradients aligned with `BaseLearner.weights` / `biases`."""

    weights: list[NDArray[np.float64]]
    biases: list[NDArray[np.float64]] = field(default_factory=list)

    def arrays(self) -> list[NDArray[np.float64]]:
        """Weights then biases, matching `BaseLearner.parameters`."""
        return [*self.weights, *self.biases]

    def is_finite(self) -> bool:
        """True when every entry is finite."""
        return all(bool(np.isfinite(array).all()) for array in self.arrays())


def default_activation(layer_dims: list[int]) -> Activation:
    """Relu for two or more hidden layers, Sigmoid otherwise."""
    hidden_layers = len(layer_dims) - 2
    return Activation.RELU if hidden_layers >= 2 else Activation.SIGMOID


def init_learner(
    layer_dims: list[int],
    activation: Activation | None = None,
    dropout_retention: float = DEFAULT_DROPOUT_RETENTION,
    seed: int = 0,
    bound_mode: BoundMode = BoundMode.SOFTPLUS,
) -> BaseLearner:
    """Create a learner with fan-in scaled random weights and zero biases.

    Sigmoid layers draw uniform(+-sqrt(6 / (fan_in + fan_out))); Relu layers
    draw normal * sqrt(2 / fan_in). Equal seeds give bit-identical learners.

    Raises:
        ValidationError: For non-positive widths, a last width other than 2,
            or a retention outside (0, 1].
    """
    _check_layer_dims(layer_dims)
    if not 0.0 < dropout_retention <= 1.0:
        raise ValidationError(
            "dropout_retention must lie in (0, 1]",
            details={"dropout_retention": dropout_retention},
        )
    activation = activation or default_activation(layer_dims)
    rng = np.random.default_rng(seed)

    weights: list[NDArray[np.float64]] = []
    biases: list[NDArray[np.float64]] = []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        if activation is Activation.SIGMOID:
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            weight = rng.uniform(-limit, limit, size=(fan_in, fan_out))
        else:
            weight = rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        weights.append(weight.astype(np.float64))
        biases.append(np.zeros(fan_out, dtype=np.float64))

    return BaseLearner(
        layer_dims=list(layer_dims),
        weights=weights,
        biases=biases,
        activation=activation,
        dropout_retention=dropout_retention,
        rng_seed=seed,
        bound_mode=bound_mode,
    )


def forward(
    learner: BaseLearner,
    inputs: NDArray[np.float64],
    mode: Mode = Mode.INFER,
    rng: np.random.Generator | None = None,
) -> tuple[ForwardTrace, IntervalBounds]:
    """Run the network on an N x d input matrix.

    Train mode drops each hidden unit independently with probability
    1 - retention and divides survivors by retention, so Infer mode needs no
    rescaling. The input layer is never dropped.

    Raises:
        ValidationError: If the column count differs from ``layer_dims[0]`` or
            Train mode is requested without a random stream.
    """
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2 or x.shape[1] != learner.input_dim:
        raise ValidationError(
            "Input dimension mismatch",
            details={"expected": learner.input_dim, "shape": list(x.shape)},
        )
    apply_dropout = mode is Mode.TRAIN and learner.dropout_retention < 1.0
    if mode is Mode.TRAIN and rng is None:
        raise ValidationError("Train mode needs a random stream")

    layer_inputs = [x]
    pre_activations: list[NDArray[np.float64]] = []
    masks: list[NDArray[np.float64] | None] = []
    activations = x
    last = learner.n_layers - 1
    for index, (weight, bias) in enumerate(zip(learner.weights, learner.biases)):
        z = activations @ weight + bias
        pre_activations.append(z)
        if index == last:
            break
        hidden = _activate(z, learner.activation)
        mask: NDArray[np.float64] | None = None
        if apply_dropout:
            assert rng is not None
            keep = rng.random(hidden.shape) < learner.dropout_retention
            mask = keep.astype(np.float64)
            hidden = hidden * mask / learner.dropout_retention
        masks.append(mask)
        layer_inputs.append(hidden)
        activations = hidden

    raw = pre_activations[-1]
    trace = ForwardTrace(
        layer_inputs=layer_inputs,
        pre_activations=pre_activations,
        dropout_masks=masks,
        raw_output=raw,
        mode=mode,
    )
    return trace, _bounds_from_raw(raw, learner.bound_mode)


def predict(learner: BaseLearner, inputs: NDArray[np.float64]) -> IntervalBounds:
    """Deterministic Infer-mode bounds."""
    _, bounds = forward(learner, inputs, Mode.INFER)
    return bounds


def backward(
    learner: BaseLearner,
    trace: ForwardTrace,
    grad_outputs: NDArray[np.float64],
) -> Gradients:
    """Backpropagate d loss / d (lower, upper) through a traced pass.

    Args:
        learner: The learner that produced ``trace``.
        trace: Cache from `forward`.
        grad_outputs: N x 2 matrix; column 0 is d loss / d lower, column 1 is
            d loss / d upper.

    Raises:
        ValidationError: If trace and learner or gradients disagree in shape.
    """
    grad = np.asarray(grad_outputs, dtype=np.float64)
    raw = trace.raw_output
    if len(trace.pre_activations) != learner.n_layers:
        raise ValidationError(
            "Trace does not belong to this learner",
            details={"trace_layers": len(trace.pre_activations), "layers": learner.n_layers},
        )
    if grad.shape != raw.shape:
        raise ValidationError(
            "grad_outputs shape mismatch",
            details={"expected": list(raw.shape), "received": list(grad.shape)},
        )

    delta = _raw_output_grad(raw, grad, learner.bound_mode)
    weight_grads: list[NDArray[np.float64]] = [np.empty(0)] * learner.n_layers
    bias_grads: list[NDArray[np.float64]] = [np.empty(0)] * learner.n_layers
    for index in range(learner.n_layers - 1, -1, -1):
        layer_input = trace.layer_inputs[index]
        weight_grads[index] = layer_input.T @ delta
        bias_grads[index] = delta.sum(axis=0)
        if index == 0:
            break
        upstream = delta @ learner.weights[index].T
        mask = trace.dropout_masks[index - 1]
        if mask is not None:
            upstream = upstream * mask / learner.dropout_retention
        delta = upstream * _activation_grad(
            trace.pre_activations[index - 1], learner.activation
        )

    return Gradients(weights=weight_grads, biases=bias_grads)


def _check_layer_dims(layer_dims: list[int]) -> None:
    if len(layer_dims) < 2:
        raise ValidationError(
            "layer_dims needs an input and an output width",
            details={"layer_dims": list(layer_dims)},
        )
    if any(width < 1 for width in layer_dims):
        raise ValidationError(
            "layer_dims entries must be positive",
            details={"layer_dims": list(layer_dims)},
        )
    if layer_dims[-1] != 2:
        raise ValidationError(
            "Output layer must have exactly 2 units",
            details={"layer_dims": list(layer_dims)},
        )


def _activate(z: NDArray[np.float64], activation: Activation) -> NDArray[np.float64]:
    if activation is Activation.SIGMOID:
        return np.asarray(expit(z), dtype=np.float64)
    return np.maximum(z, 0.0)


def _activation_grad(
    z: NDArray[np.float64], activation: Activation
) -> NDArray[np.float64]:
    if activation is Activation.SIGMOID:
        sig = expit(z)
        return np.asarray(sig * (1.0 - sig), dtype=np.float64)
    return np.where(z > 0.0, 1.0, 0.0)


def _bounds_from_raw(raw: NDArray[np.float64], mode: BoundMode) -> IntervalBounds:
    lower = raw[:, 0]
    if mode is BoundMode.RAW:
        return IntervalBounds(lower.copy(), raw[:, 1].copy())
    return IntervalBounds(lower.copy(), lower + np.logaddexp(0.0, raw[:, 1]))


def _raw_output_grad(
    raw: NDArray[np.float64], grad: NDArray[np.float64], mode: BoundMode
) -> NDArray[np.float64]:
    if mode is BoundMode.RAW:
        return grad.copy()
    d_lower, d_upper = grad[:, 0], grad[:, 1]
    # upper = o1 + softplus(o2): both bounds move with o1, only upper with o2
    return np.column_stack([d_lower + d_upper, d_upper * expit(raw[:, 1])])
