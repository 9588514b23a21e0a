"""Repository for trained ensembles ("mbpep-model/1" files)."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mbpep.core.exceptions import ModelFormatError, ValidationError
from mbpep.data.dataset import NormParams
from mbpep.ensemble.pool import EnsemblePool
from mbpep.nnet.learner import BaseLearner
from mbpep.repositories.base import JsonDocumentRepository
from mbpep.schemas.config import RunConfig
from mbpep.schemas.model_file import (
    MODEL_VERSION,
    LearnerDocument,
    ModelDocument,
    NormalizationDocument,
)


@dataclass
class StoredModel:
    """A pool together with everything needed to apply it to raw data.

    Attributes:
        pool: Learners and selection mask.
        norm: Min-max parameters fitted on the training split.
        feature_names: Feature columns in training order.
        target_name: Target column name.
        run_config: Configuration the model was trained with, if recorded.
    """

    pool: EnsemblePool
    norm: NormParams
    feature_names: tuple[str, ...]
    target_name: str = "y"
    run_config: RunConfig | None = None


class ModelRepository(JsonDocumentRepository[ModelDocument]):
    """Persists `StoredModel` objects.

    Example::

        repo = ModelRepository()
        repo.save(StoredModel(pool, norm, ("x",)), Path("model.json"))
        restored = repo.load(Path("model.json"))
    """

    def __init__(self) -> None:
        """Initialize repository for model documents."""
        super().__init__(ModelDocument, MODEL_VERSION)

    def save(self, model: StoredModel, path: Path) -> Path:
        """Write ``model`` to ``path``."""
        return self.write(to_document(model), path)

    def load(self, path: Path) -> StoredModel:
        """Read and rebuild a model.

        Raises:
            NotFoundError: If the file is missing.
            ModelFormatError: On version mismatch or inconsistent content.
        """
        return from_document(self.read(path))


def to_document(model: StoredModel) -> ModelDocument:
    """Serializable form of ``model``."""
    pool = model.pool
    return ModelDocument(
        train_config=pool.train_config,
        run_config=model.run_config,
        learners=[
            LearnerDocument(
                layer_dims=list(learner.layer_dims),
                activation=learner.activation,
                dropout_retention=learner.dropout_retention,
                bound_mode=learner.bound_mode,
                rng_seed=learner.rng_seed,
                weights=[w.tolist() for w in learner.weights],
                biases=[b.tolist() for b in learner.biases],
            )
            for learner in pool.learners
        ],
        bootstrap_seeds=list(pool.bootstrap_seeds),
        selection_mask=[int(bit) for bit in pool.selection_mask],
        normalization=NormalizationDocument(
            feature_min=model.norm.feature_min.tolist(),
            feature_max=model.norm.feature_max.tolist(),
            target_min=model.norm.target_min,
            target_max=model.norm.target_max,
            feature_names=list(model.feature_names),
            target_name=model.target_name,
        ),
    )


def from_document(document: ModelDocument) -> StoredModel:
    """Rebuild a `StoredModel`.

    Raises:
        ModelFormatError: If weights do not chain or the pool is inconsistent.
    """
    try:
        learners = [
            BaseLearner(
                layer_dims=list(doc.layer_dims),
                weights=[np.asarray(w, dtype=np.float64) for w in doc.weights],
                biases=[np.asarray(b, dtype=np.float64) for b in doc.biases],
                activation=doc.activation,
                dropout_retention=doc.dropout_retention,
                rng_seed=doc.rng_seed,
                bound_mode=doc.bound_mode,
            )
            for doc in document.learners
        ]
        pool = EnsemblePool(
            learners=learners,
            bootstrap_seeds=list(document.bootstrap_seeds),
            selection_mask=np.asarray(document.selection_mask, dtype=bool),
            train_config=document.train_config,
        )
    except ValidationError as exc:
        raise ModelFormatError(
            "Model file is internally inconsistent",
            details={"error": exc.message, **exc.details},
        ) from exc
    except ValueError as exc:
        raise ModelFormatError(
            "Model file holds ragged parameter arrays", details={"error": str(exc)}
        ) from exc

    norm_doc = document.normalization
    if len(norm_doc.feature_min) != pool.input_dim or len(norm_doc.feature_max) != pool.input_dim:
        raise ModelFormatError(
            "Normalization does not match the learners' input width",
            details={"input_dim": pool.input_dim, "columns": len(norm_doc.feature_min)},
        )
    norm = NormParams(
        feature_min=np.asarray(norm_doc.feature_min, dtype=np.float64),
        feature_max=np.asarray(norm_doc.feature_max, dtype=np.float64),
        target_min=norm_doc.target_min,
        target_max=norm_doc.target_max,
    )
    return StoredModel(
        pool=pool,
        norm=norm,
        feature_names=tuple(norm_doc.feature_names),
        target_name=norm_doc.target_name,
        run_config=document.run_config,
    )
