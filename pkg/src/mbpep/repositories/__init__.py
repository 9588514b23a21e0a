"""Repositories package initialization.

This package contains the file-backed repositories for model and report
documents.
"""

from mbpep.repositories.base import JsonDocumentRepository
from mbpep.repositories.model import ModelRepository, StoredModel, from_document, to_document
from mbpep.repositories.report import ReportRepository

__all__ = [
    "JsonDocumentRepository",
    "ModelRepository",
    "StoredModel",
    "ReportRepository",
    "from_document",
    "to_document",
]
