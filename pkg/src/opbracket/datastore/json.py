import json
import logging
import os
import time
from pathlib import Path
from typing import List, Optional

from ..core import ConfigError
from .base import BaseStore, ConfigObject

logger = logging.getLogger(__name__)

DEFAULT_DIRECTORY = str(Path(__file__).resolve().parent.parent / "json_config_store")
CONFIG_DIR_VARIABLE = "OPBRACKET_CONFIG_DIR"


class JSONStore(BaseStore):
    """
    Presets kept as JSON files in one directory.
    Each file is named <type>_<name>.json and holds the instance, metadata, and created attributes.

    Attributes:
        directory (str): Path to the directory holding the preset files.
    """

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(self.directory, exist_ok=True)

    def _path(self, object_type: str, object_name: str) -> str:
        return os.path.join(self.directory, f"{object_type}_{object_name}.json")

    def initialize(self, overwrite: bool = False):
        """
        Prepares the store; with ``overwrite`` every preset file in the directory is removed.
        """
        if overwrite:
            for filename in os.listdir(self.directory):
                file_path = os.path.join(self.directory, filename)
                if os.path.isfile(file_path) and filename.endswith(".json"):
                    os.remove(file_path)

    def store_config(self, obj: ConfigObject) -> ConfigObject:
        """
        Writes the preset, stamping ``created`` with the current time when unset.

        Returns:
            ConfigObject: the stored preset.
        """
        if obj.created is None:
            obj.created = int(time.time())
        data = {
            "instance": obj.instance,
            "metadata": obj.metadata,
            "created": obj.created,
        }
        with open(self._path(obj.type, obj.name), "w", encoding="utf-8") as f:
            json.dump(data, f, indent=4, sort_keys=True)
        logger.debug("stored preset %s/%s", obj.type, obj.name)
        return obj

    def get_config(self, object_type: str, object_name: str) -> Optional[ConfigObject]:
        """
        Reads one preset.

        Returns:
            Optional[ConfigObject]: the preset, or None if there is no such file.

        Raises:
            ConfigError: if the file is not valid JSON or lacks the instance/metadata keys.
        """
        filepath = self._path(object_type, object_name)
        if not os.path.exists(filepath):
            return None
        with open(filepath, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as err:
                raise ConfigError(f"{filepath}: {err}") from err
        if not isinstance(data, dict) or "instance" not in data or not isinstance(data.get("metadata"), dict):
            raise ConfigError(f"{filepath}: expected an object with 'instance' and 'metadata'")
        return ConfigObject(
            type=object_type,
            name=object_name,
            instance=data["instance"],
            metadata=data["metadata"],
            created=data.get("created"),
        )

    def get_entities(self, object_type: str) -> List[tuple[str, int]]:
        """
        Names and creation stamps of every preset of one type, sorted by name.
        """
        entities = []
        prefix = f"{object_type}_"
        for filename in sorted(os.listdir(self.directory)):
            if filename.startswith(prefix) and filename.endswith(".json"):
                config = self.get_config(object_type, filename[len(prefix):-5])
                entities.append((config.name, config.created))
        return entities


def default_store() -> JSONStore:
    """Store at $OPBRACKET_CONFIG_DIR, falling back to the packaged presets."""
    return JSONStore(os.environ.get(CONFIG_DIR_VARIABLE) or DEFAULT_DIRECTORY)
