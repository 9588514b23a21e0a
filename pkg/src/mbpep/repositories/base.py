"""Base repository for versioned JSON documents.

Every file the tool writes is a pydantic model serialized as indented JSON.
This base class owns the file I/O and error mapping; subclasses add the
conversion between documents and in-memory objects.
"""

from pathlib import Path
from typing import Generic, TypeVar

from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as PydanticValidationError

from mbpep.core import get_logger
from mbpep.core.exceptions import DataError, ModelFormatError, NotFoundError

logger = get_logger(__name__)

DocumentType = TypeVar("DocumentType", bound=BaseModel)


class _VersionProbe(BaseModel):
    model_config = ConfigDict(extra="ignore")

    version: str | None = None
    schema_version: str | None = None

    @property
    def found(self) -> str | None:
        return self.version or self.schema_version


class JsonDocumentRepository(Generic[DocumentType]):
    """Reads and writes one document type.

    Attributes:
        document: The pydantic model class this repository manages.
        version: Version string the document must carry.

    Example::

        class RunLogRepository(JsonDocumentRepository[RunLog]):
            def __init__(self) -> None:
                super().__init__(RunLog, "run-log/1")
    """

    def __init__(self, document: type[DocumentType], version: str) -> None:
        """Initialize repository with its document class.

        Args:
            document: Pydantic model to validate against.
            version: Expected version tag.
        """
        self.document = document
        self.version = version

    def write(self, obj: DocumentType, path: Path) -> Path:
        """Serialize ``obj`` to ``path``, creating parent directories.

        Raises:
            DataError: If the file cannot be written.
        """
        text = obj.model_dump_json(indent=2) + "\n"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise DataError(
                "Cannot write document", details={"path": str(path), "error": str(exc)}
            ) from exc
        logger.info("document_written", path=str(path), document=self.document.__name__)
        return path

    def read(self, path: Path) -> DocumentType:
        """Load and validate a document.

        Raises:
            NotFoundError: If the file does not exist.
            ModelFormatError: On a version mismatch or invalid content.
        """
        if not path.is_file():
            raise NotFoundError("File not found", details={"path": str(path)})
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(
                "Cannot read document", details={"path": str(path), "error": str(exc)}
            ) from exc

        try:
            probe = _VersionProbe.model_validate_json(text)
        except PydanticValidationError as exc:
            raise ModelFormatError(
                "File is not a JSON document", details={"path": str(path)}
            ) from exc
        if probe.found != self.version:
            raise ModelFormatError(
                "Unsupported document version",
                details={"path": str(path), "expected": self.version, "received": probe.found},
            )

        try:
            return self.document.model_validate_json(text)
        except PydanticValidationError as exc:
            raise ModelFormatError(
                "Document does not match its schema",
                details={"path": str(path), "errors": _error_lines(exc)},
            ) from exc


def _error_lines(exc: PydanticValidationError) -> list[str]:
    return [
        f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
        for error in exc.errors()
    ]
