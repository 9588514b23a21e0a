"""Bootstrap sampling and independent training of the learner pool.

Each learner owns one seed. The seed drives its bootstrap resample directly
and, through `numpy.random.SeedSequence` children, its initial weights and
its minibatch/dropout stream, so learners share no state and serial and
threaded runs produce identical parameters.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from mbpep.core import get_logger
from mbpep.core.exceptions import DataError, NonFiniteError, TrainingError, ValidationError
from mbpep.data.dataset import Dataset
from mbpep.ensemble.pool import EnsemblePool, LearnerFailure
from mbpep.nnet.learner import BaseLearner, Mode, backward, forward, init_learner
from mbpep.nnet.optimizer import OptimizerState, apply_update, init_optimizer
from mbpep.piloss.batch import IntervalBatch
from mbpep.piloss.losses import loss_mbpep, loss_mbpep_grad
from mbpep.schemas.config import TrainConfig

logger = get_logger(__name__)

_INIT_STREAM = 1
_TRAIN_STREAM = 2


@dataclass
class TrainHistory:
    """Mean minibatch loss per completed epoch."""

    epoch_losses: list[float] = field(default_factory=list)


def derive_learner_seeds(base_seed: int, count: int) -> list[int]:
    """Per-learner seeds from a counter scheme.

    Seed i depends only on (base_seed, i), so growing the pool never changes
    earlier learners.
    """
    return [child_seed(base_seed, index) for index in range(count)]


def child_seed(seed: int, stream: int) -> int:
    """Independent sub-seed of ``seed`` for a numbered purpose."""
    state = np.random.SeedSequence(seed, spawn_key=(stream,)).generate_state(1, np.uint64)
    return int(state[0] >> 1)


def bootstrap_resample(dataset: Dataset, seed: int) -> Dataset:
    """N draws with replacement from the N samples of ``dataset``.

    Raises:
        DataError: If the dataset is empty.
    """
    n = len(dataset)
    if n < 1:
        raise DataError("Cannot resample an empty dataset")
    rng = np.random.default_rng(seed)
    return dataset.take(rng.integers(0, n, size=n))


def train_learner(
    dataset: Dataset,
    cfg: TrainConfig,
    seed: int,
    index: int | None = None,
) -> tuple[BaseLearner, TrainHistory]:
    """Train one learner on its own bootstrap resample.

    Raises:
        NonFiniteError: If a loss or gradient turns NaN/Inf; the current epoch
            is abandoned and the learner is reported as failed.
    """
    sample = bootstrap_resample(dataset, seed)
    learner = init_learner(
        cfg.layer_dims(dataset.n_features),
        activation=cfg.activation,
        dropout_retention=cfg.dropout_retention,
        seed=child_seed(seed, _INIT_STREAM),
        bound_mode=cfg.bound_mode,
    )
    opt = init_optimizer(cfg.optimizer, learner)
    rng = np.random.default_rng(child_seed(seed, _TRAIN_STREAM))
    history = TrainHistory()

    log = logger.bind(learner_index=index, seed=seed)
    log.debug("learner_training_started", epochs=cfg.epochs, samples=len(sample))
    for epoch in range(cfg.epochs):
        try:
            epoch_loss = _run_epoch(learner, opt, sample, cfg, rng)
        except NonFiniteError as exc:
            log.warning("learner_epoch_aborted", epoch=epoch, error=exc.message)
            raise NonFiniteError(
                exc.message,
                learner_index=index,
                details={"epoch": epoch, **exc.details},
            ) from exc
        history.epoch_losses.append(epoch_loss)

    if history.epoch_losses:
        log.debug("learner_training_complete", final_loss=history.epoch_losses[-1])
    return learner, history


def train_pool(
    dataset: Dataset,
    cfg: TrainConfig,
    seeds: list[int],
    threads: int = 1,
) -> EnsemblePool:
    """Train ``cfg.pool_size`` independent learners.

    Learners whose training fails are dropped and listed in
    `EnsemblePool.failures`.

    Raises:
        ValidationError: If ``seeds`` does not hold one seed per learner.
        TrainingError: If every learner fails.
    """
    if len(seeds) != cfg.pool_size:
        raise ValidationError(
            "Need one seed per learner",
            details={"pool_size": cfg.pool_size, "seeds": len(seeds)},
        )

    def job(index: int) -> BaseLearner | LearnerFailure:
        try:
            learner, _ = train_learner(dataset, cfg, seeds[index], index)
            return learner
        except TrainingError as exc:
            logger.error(
                "learner_training_failed",
                learner_index=index,
                error=exc.message,
                **exc.details,
            )
            return LearnerFailure(index=index, message=exc.message)

    if threads > 1 and cfg.pool_size > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(job, range(cfg.pool_size)))
    else:
        outcomes = [job(index) for index in range(cfg.pool_size)]

    learners: list[BaseLearner] = []
    kept_seeds: list[int] = []
    failures: list[LearnerFailure] = []
    for index, outcome in enumerate(outcomes):
        if isinstance(outcome, LearnerFailure):
            failures.append(outcome)
        else:
            learners.append(outcome)
            kept_seeds.append(seeds[index])

    if not learners:
        raise TrainingError(
            "Every learner in the pool failed to train",
            details={"failures": [f.message for f in failures]},
        )

    logger.info(
        "pool_trained",
        learners=len(learners),
        failed=len(failures),
        epochs=cfg.epochs,
        threads=threads,
    )
    return EnsemblePool(
        learners=learners,
        bootstrap_seeds=kept_seeds,
        selection_mask=np.ones(len(learners), dtype=bool),
        train_config=cfg,
        failures=failures,
    )


def _run_epoch(
    learner: BaseLearner,
    opt: OptimizerState,
    sample: Dataset,
    cfg: TrainConfig,
    rng: np.random.Generator,
) -> float:
    n = len(sample)
    order = rng.permutation(n)
    total = 0.0
    for start in range(0, n, cfg.batch_size):
        idx = order[start : start + cfg.batch_size]
        trace, bounds = forward(learner, sample.features[idx], Mode.TRAIN, rng)
        if not (np.isfinite(bounds.lower).all() and np.isfinite(bounds.upper).all()):
            raise NonFiniteError("Non-finite bounds in forward pass")
        batch = IntervalBatch(bounds.lower, bounds.upper, sample.targets[idx])
        loss = loss_mbpep(batch, cfg.loss)
        if not np.isfinite(loss):
            raise NonFiniteError("Non-finite loss", details={"loss": loss})
        grad_lower, grad_upper = loss_mbpep_grad(batch, cfg.loss)
        grads = backward(learner, trace, np.column_stack([grad_lower, grad_upper]))
        apply_update(learner, grads, opt)
        total += loss * len(idx)
    return total / n
