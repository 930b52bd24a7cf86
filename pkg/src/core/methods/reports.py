import hashlib
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import orjson
from pydantic import BaseModel, ValidationError

from core.config.settings import settings
from core.exceptions import InputValidationException

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


class RunManifest(BaseModel):
    command: str
    arguments: dict[str, Any]
    seeds: list[int] = []
    grid: tuple[int, int] | None = None
    version: str
    started_at: datetime
    elapsed_ms: int = 0
    inputs: dict[str, str] = {}
    outputs: dict[str, str] = {}


class ManifestRecorder:
    """Collects a RunManifest while a command runs; digests are sha256 of the file bytes."""

    def __init__(self, command: str, arguments: dict[str, Any]):
        self.manifest = RunManifest(
            command=command,
            arguments={key: str(value) if isinstance(value, Path) else value for key, value in arguments.items()},
            version=settings.version,
            started_at=datetime.now(timezone.utc)
        )
        self.__start_time = time.perf_counter_ns()

    def input(self, path: Path):
        self.manifest.inputs[str(path)] = digest(path.read_bytes())

    def output(self, path: Path, content: bytes):
        self.manifest.outputs[str(path)] = digest(content)

    def finish(self) -> RunManifest:
        self.manifest.elapsed_ms = int((time.perf_counter_ns() - self.__start_time) / 1_000_000)
        return self.manifest


def digest(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


def dumps(document: BaseModel | dict[str, Any]) -> bytes:
    if isinstance(document, BaseModel):
        document = document.model_dump(mode='json')

    return orjson.dumps(document, option=JSON_OPTIONS) + b'\n'


def write_json(path: Path, document: BaseModel | dict[str, Any]) -> bytes:
    content = dumps(document)
    path.write_bytes(content)

    return content


def read_json(path: Path) -> Any:
    try:
        return orjson.loads(path.read_bytes())
    except FileNotFoundError:
        raise InputValidationException(f'Файл не найден: {path}')
    except orjson.JSONDecodeError as error:
        raise InputValidationException(f'Некорректный JSON в {path}: {error}')


def read_model[T: BaseModel](path: Path, model: type[T]) -> T:
    try:
        return model.model_validate(read_json(path))
    except ValidationError as error:
        raise InputValidationException(f'Файл {path} не соответствует схеме: {error.error_count()} ошибок\n{error}')

