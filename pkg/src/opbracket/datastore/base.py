from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core import ConfigError

REFERENCE_OPEN = "#|:"
REFERENCE_CLOSE = ":|#"


def is_reference(value) -> bool:
    return isinstance(value, str) and value.startswith(REFERENCE_OPEN) and value.endswith(REFERENCE_CLOSE)


def parse_reference(value: str) -> Tuple[str, str]:
    """``#|:flows:toda:|#`` -> ("flows", "toda")."""
    parts = value[len(REFERENCE_OPEN): -len(REFERENCE_CLOSE)].split(":")
    if len(parts) != 2 or not all(parts):
        raise ConfigError(f"malformed preset reference {value!r}")
    return parts[0], parts[1]


@dataclass
class ConfigObject:
    type: str  # module under opbracket holding the class, e.g. "run" or "flows"
    name: str  # preset name
    instance: str  # class the metadata is passed to
    metadata: dict  # keyword arguments
    created: Optional[int] = None  # epoch when the preset was stored

    def references(self) -> List[Tuple[str, str]]:
        return [parse_reference(value) for value in self.metadata.values() if is_reference(value)]


class BaseStore(ABC):
    """Named presets, one ConfigObject per (type, name)."""

    @abstractmethod
    def initialize(self, overwrite: bool = False):
        pass

    @abstractmethod
    def store_config(self, obj: ConfigObject) -> ConfigObject:
        pass

    @abstractmethod
    def get_config(self, object_type: str, object_name: str) -> Optional[ConfigObject]:
        pass

    @abstractmethod
    def get_entities(self, object_type: str) -> List[tuple[str, int]]:
        pass

    def require_config(self, object_type: str, object_name: str) -> ConfigObject:
        """Like get_config, but a missing preset is a ConfigError naming the known ones."""
        config = self.get_config(object_type, object_name)
        if config is None:
            known = sorted(name for name, _ in self.get_entities(object_type))
            raise ConfigError(f"no {object_type} preset named {object_name!r} (known: {', '.join(known)})")
        return config
