"""Bi-objective Pareto pruning of the learner pool.

Each subset s of the pool is scored on two objectives to minimize:

    f(s)    = margin score of s + loss of s      (on the objective split)
    size(s) = number of selected learners

The search keeps an archive of mutually non-dominated subsets. Each
iteration copies a random archived mask, flips every bit independently with
probability p, and archives the child unless some entry dominates it; entries
the child dominates are evicted. The archive starts from the full pool, so the
chosen subset never has a larger f than the unpruned ensemble.

Example::

    archive, mask = pareto_prune(pool, valid, PruneConfig(), LossConfig())
    pool.select(mask)
"""

import itertools
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mbpep.core import get_logger
from mbpep.core.exceptions import ValidationError
from mbpep.data.dataset import Dataset
from mbpep.ensemble.integration import (
    MemberBounds,
    fuse_median,
    margins_from,
    member_bounds,
    score_margins,
)
from mbpep.ensemble.pool import EnsemblePool
from mbpep.piloss.losses import loss_mbpep
from mbpep.schemas.config import LossConfig, ObjectiveLoss, PruneConfig, SelectionRule

logger = get_logger(__name__)

MAX_ENUMERATION_SIZE = 16


@dataclass(frozen=True)
class ParetoEntry:
    """One archived subset.

    Attributes:
        mask: 0/1 membership per pool learner.
        f_value: Margin score plus loss.
        size: Number of selected learners.
    """

    mask: tuple[int, ...]
    f_value: float
    size: int

    def dominates(self, other: "ParetoEntry") -> bool:
        """No worse in both objectives and strictly better in one."""
        if self.f_value > other.f_value or self.size > other.size:
            return False
        return self.f_value < other.f_value or self.size < other.size

    def same_objectives(self, other: "ParetoEntry") -> bool:
        """Equal (f, size)."""
        return self.f_value == other.f_value and self.size == other.size

    def order_key(self) -> tuple[float, int, tuple[int, ...]]:
        """Min f, then min size, then lexicographically smallest mask."""
        return (self.f_value, self.size, self.mask)


@dataclass
class ParetoArchive:
    """Mutually non-dominated subsets found so far."""

    entries: list[ParetoEntry] = field(default_factory=list)
    iterations_run: int = 0

    def add(self, candidate: ParetoEntry) -> bool:
        """Insert ``candidate`` unless it is dominated.

        An entry with identical objectives is replaced only by a
        lexicographically smaller mask.

        Returns:
            True if the archive changed.
        """
        if candidate.size == 0 or math.isinf(candidate.f_value):
            return False
        for entry in self.entries:
            if entry.dominates(candidate):
                return False
            if entry.same_objectives(candidate) and entry.mask <= candidate.mask:
                return False
        self.entries = [
            entry
            for entry in self.entries
            if not (candidate.dominates(entry) or candidate.same_objectives(entry))
        ]
        self.entries.append(candidate)
        return True

    def is_non_dominated(self) -> bool:
        """Pairwise check of the archive invariant."""
        return not any(
            a.dominates(b) for a, b in itertools.permutations(self.entries, 2)
        )

    def front(self) -> list[ParetoEntry]:
        """Entries sorted by size, then f."""
        return sorted(self.entries, key=lambda e: (e.size, e.f_value, e.mask))

    def objective_points(self) -> set[tuple[float, int]]:
        """(f, size) pairs of the archive."""
        return {(e.f_value, e.size) for e in self.entries}

    def best_objective(self) -> ParetoEntry:
        """Entry with minimum f (ties: smaller size, then smaller mask)."""
        if not self.entries:
            raise ValidationError("Pareto archive is empty")
        return min(self.entries, key=ParetoEntry.order_key)

    def knee(self) -> ParetoEntry:
        """Entry farthest from the segment joining the two extreme entries.

        Objectives are min-max scaled over the archive first. With fewer than
        three entries this is `best_objective`.
        """
        best = self.best_objective()
        if len(self.entries) < 3:
            return best
        smallest = min(self.entries, key=lambda e: (e.size, e.f_value, e.mask))
        f_values = np.array([e.f_value for e in self.entries])
        sizes = np.array([e.size for e in self.entries], dtype=np.float64)
        f_span = float(f_values.max() - f_values.min()) or 1.0
        s_span = float(sizes.max() - sizes.min()) or 1.0

        def scaled(entry: ParetoEntry) -> NDArray[np.float64]:
            return np.array(
                [
                    (entry.f_value - f_values.min()) / f_span,
                    (entry.size - sizes.min()) / s_span,
                ]
            )

        start, end = scaled(best), scaled(smallest)
        direction = end - start
        length = float(np.hypot(*direction))
        if length == 0.0:
            return best

        def distance(entry: ParetoEntry) -> float:
            offset = scaled(entry) - start
            return abs(direction[0] * offset[1] - direction[1] * offset[0]) / length

        return min(self.entries, key=lambda e: (-distance(e), *e.order_key()))

    def choose(self, rule: SelectionRule) -> ParetoEntry:
        """Entry picked by ``rule``."""
        if rule is SelectionRule.KNEE:
            return self.knee()
        return self.best_objective()


class SubsetEvaluator:
    """Computes f(mask) for one pool on one dataset.

    Member bounds are predicted once; each evaluation is then a masked mean,
    a median and a loss. Results are memoized per mask.
    """

    def __init__(
        self,
        pool: EnsemblePool,
        dataset: Dataset,
        loss_cfg: LossConfig,
        objective_loss: ObjectiveLoss = ObjectiveLoss.FUSED,
    ) -> None:
        """Predict every learner's bounds on ``dataset``.

        Args:
            pool: Pool whose subsets are scored (its own mask is ignored).
            dataset: Objective split.
            loss_cfg: Loss parameters of the loss term.
            objective_loss: Fused-ensemble loss or mean of per-learner losses.
        """
        self.pool = pool
        self.dataset = dataset
        self.loss_cfg = loss_cfg
        self.objective_loss = objective_loss
        self.members = member_bounds(pool, dataset.features, list(range(pool.size)))
        self.evaluations = 0
        self._cache: dict[tuple[int, ...], float] = {}
        self._member_losses: NDArray[np.float64] | None = None

    def __call__(self, mask: ArrayLike) -> float:
        """f for ``mask``; +inf for the empty subset."""
        key = _mask_key(mask, self.pool.size)
        if key in self._cache:
            return self._cache[key]
        value = self._evaluate(np.array(key, dtype=bool))
        self._cache[key] = value
        return value

    def entry(self, mask: ArrayLike) -> ParetoEntry:
        """Archive entry for ``mask``."""
        key = _mask_key(mask, self.pool.size)
        return ParetoEntry(mask=key, f_value=self(key), size=sum(key))

    def _evaluate(self, selected: NDArray[np.bool_]) -> float:
        if not selected.any():
            return math.inf
        self.evaluations += 1
        subset = MemberBounds(
            lower=self.members.lower[selected], upper=self.members.upper[selected]
        )
        score = score_margins(margins_from(subset))
        if self.objective_loss is ObjectiveLoss.MEAN:
            loss = float(np.mean(self._per_member_losses()[selected]))
        else:
            fused = fuse_median(subset).with_targets(self.dataset.targets)
            loss = loss_mbpep(fused, self.loss_cfg)
        return score + loss

    def _per_member_losses(self) -> NDArray[np.float64]:
        if self._member_losses is None:
            self._member_losses = np.array(
                [
                    loss_mbpep(
                        fuse_median(
                            MemberBounds(
                                lower=self.members.lower[[i]],
                                upper=self.members.upper[[i]],
                            )
                        ).with_targets(self.dataset.targets),
                        self.loss_cfg,
                    )
                    for i in range(self.pool.size)
                ]
            )
        return self._member_losses


def subset_objective(
    pool: EnsemblePool,
    mask: ArrayLike,
    dataset: Dataset,
    loss_cfg: LossConfig,
    objective_loss: ObjectiveLoss = ObjectiveLoss.FUSED,
) -> float:
    """f(mask) = margin score + loss of the masked subset; +inf if empty."""
    return SubsetEvaluator(pool, dataset, loss_cfg, objective_loss)(mask)


def pareto_prune(
    pool: EnsemblePool,
    dataset: Dataset,
    cfg: PruneConfig,
    loss_cfg: LossConfig,
    seed: int | None = None,
    evaluator: SubsetEvaluator | None = None,
) -> tuple[ParetoArchive, NDArray[np.bool_]]:
    """Search for non-dominated subsets and select one into the pool.

    Args:
        pool: Trained pool; its selection mask is overwritten.
        dataset: Objective split.
        cfg: Search budget, mutation rate, selection rule, loss term.
        loss_cfg: Loss parameters.
        seed: Overrides ``cfg.rng_seed``.
        evaluator: Reuse an existing evaluator (and its cache).

    Returns:
        The final archive and the chosen mask.
    """
    evaluator = evaluator or SubsetEvaluator(pool, dataset, loss_cfg, cfg.objective_loss)
    size = pool.size
    iterations = cfg.iterations_for(size)
    flip_p = cfg.flip_probability_for(size)
    rng_seed = seed if seed is not None else (cfg.rng_seed or 0)
    rng = np.random.default_rng(rng_seed)

    archive = ParetoArchive()
    archive.add(evaluator.entry(np.ones(size, dtype=bool)))

    if size > 1:
        for iteration in range(iterations):
            parent = archive.entries[int(rng.integers(len(archive.entries)))]
            flips = rng.random(size) < flip_p
            child = np.array(parent.mask, dtype=bool) ^ flips
            archive.iterations_run = iteration + 1
            if not child.any():
                continue
            if archive.add(evaluator.entry(child)):
                logger.debug(
                    "pareto_archive_updated",
                    iteration=iteration,
                    archive_size=len(archive.entries),
                )

    chosen = archive.choose(cfg.selection_rule)
    mask = np.array(chosen.mask, dtype=bool)
    pool.select(mask)
    logger.info(
        "pruning_complete",
        pool_size=size,
        chosen_size=chosen.size,
        f_chosen=chosen.f_value,
        archive_size=len(archive.entries),
        iterations=archive.iterations_run,
        evaluations=evaluator.evaluations,
    )
    return archive, mask


def enumerate_pareto_front(
    pool: EnsemblePool,
    dataset: Dataset,
    loss_cfg: LossConfig,
    objective_loss: ObjectiveLoss = ObjectiveLoss.FUSED,
    evaluator: SubsetEvaluator | None = None,
) -> ParetoArchive:
    """Exact Pareto front by scoring all 2^T - 1 non-empty subsets.

    Raises:
        ValidationError: If the pool has more than `MAX_ENUMERATION_SIZE` learners.
    """
    if pool.size > MAX_ENUMERATION_SIZE:
        raise ValidationError(
            "Pool too large to enumerate",
            details={"pool_size": pool.size, "limit": MAX_ENUMERATION_SIZE},
        )
    evaluator = evaluator or SubsetEvaluator(pool, dataset, loss_cfg, objective_loss)
    archive = ParetoArchive()
    for mask in _all_masks(pool.size):
        if any(mask):
            archive.add(evaluator.entry(mask))
    return archive


def _all_masks(size: int) -> Iterable[tuple[int, ...]]:
    return itertools.product((0, 1), repeat=size)


def _mask_key(mask: ArrayLike, size: int) -> tuple[int, ...]:
    array = np.asarray(mask, dtype=bool)
    if array.shape != (size,):
        raise ValidationError(
            "Mask length differs from pool size",
            details={"mask": list(array.shape), "pool_size": size},
        )
    return tuple(int(bit) for bit in array)
