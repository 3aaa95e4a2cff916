from .base import BaseStore, ConfigObject
from .json import DEFAULT_DIRECTORY, JSONStore, default_store
