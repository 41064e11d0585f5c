import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src import __version__
from src.errors import ConfigError

logger = logging.getLogger(__name__)


class RunManifest(BaseModel):
    """Identifies a run: the same manifest always reproduces the same outputs"""

    command: str = Field(description="Subcommand and action, e.g. 'stability verify'")
    version: str = Field(default=__version__, description="Artifact version that produced the outputs")
    config_hash: Optional[str] = Field(default=None, description="SHA-256 of the resolved harness config")
    seed: Optional[int] = Field(default=None, description="Root seed of the random streams")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Flags the subcommand ran with")
    outputs: Dict[str, str] = Field(default_factory=dict, description="Side outputs written, by kind")


def read_input(path: Optional[str]) -> Dict[str, Any]:
    """Load the JSON document passed through --input"""
    if path is None:
        raise ConfigError("this action needs --input <json>")
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigError(f"Input file not found: {file_path}")
    try:
        content = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Error parsing JSON input {file_path}: {e}") from e
    if not isinstance(content, dict):
        raise ConfigError(f"Input {file_path} must hold a JSON object")
    return content


def dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(payload: Dict[str, Any], out: Optional[str] = None) -> None:
    text = dumps(payload)
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    Path(out).write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def write_csv(rows: List[Dict[str, str]], path: str) -> None:
    if not rows:
        raise ConfigError(f"nothing to write to {path}")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.DictWriter(file, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    logger.info("wrote %d rows to %s", len(rows), path)


def write_text(text: str, path: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    logger.info("wrote %s", path)


def ok_record(result: Dict[str, Any], manifest: RunManifest) -> Dict[str, Any]:
    return {"status": "OK", "result": result, "manifest": manifest.model_dump(mode="json")}


def error_record(precondition: str, message: str) -> Dict[str, Any]:
    return {"status": "ERROR", "precondition": precondition, "message": message}
