"""Versioned on-disk model format.

Models are a JSON envelope ``{"format", "version", "model"}``; the payload
is the ensemble's full sub-model state.  Serialization is canonical (sorted
keys, fixed separators, trailing newline) so identical fits produce
byte-identical files.  Loading refuses files written by a newer major
version.
"""

from __future__ import annotations

import json
from pathlib import Path

from .ensemble import EnsembleModel
from .errors import DataError

FORMAT_NAME = "archrank-model"
FORMAT_VERSION = "1.0"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def save_model(model: EnsembleModel, path) -> Path:
    path = Path(path)
    envelope = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "model": model.to_dict(),
    }
    path.write_text(canonical_json(envelope), encoding="utf-8")
    return path


def load_model(path) -> EnsembleModel:
    path = Path(path)
    if not path.exists():
        raise DataError(f"model file not found: {path}")
    try:
        envelope = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: {exc}") from None
    if envelope.get("format") != FORMAT_NAME:
        raise DataError(f"{path}: not an {FORMAT_NAME} file")
    version = str(envelope.get("version", ""))
    try:
        major = int(version.split(".")[0])
    except ValueError:
        raise DataError(f"{path}: unparsable version {version!r}") from None
    supported = int(FORMAT_VERSION.split(".")[0])
    if major > supported:
        raise DataError(
            f"{path}: format version {version} is newer than supported {FORMAT_VERSION}"
        )
    try:
        return EnsembleModel.from_dict(envelope["model"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{path}: malformed model payload ({exc})") from exc
