import importlib
from copy import deepcopy

from pydantic import ValidationError

from .core import ConfigError
from .datastore import BaseStore, ConfigObject
from .datastore.base import is_reference, parse_reference

__version__ = "0.1.0"


def instantiate_from_config(config: ConfigObject, store: BaseStore, _seen: tuple = ()):
    """Build the object a preset describes.

    ``config.type`` names the module under opbracket, ``config.instance`` the class in it;
    metadata strings of the form #|:type:name:|# are replaced by the referenced preset,
    built recursively from the same store.

    Raises:
        ConfigError: for unknown modules or classes, missing or cyclic references, and
            metadata the class rejects.
    """
    key = (config.type, config.name)
    if key in _seen:
        raise ConfigError(f"cyclic preset reference through {config.type}/{config.name}")
    try:
        module = importlib.import_module("." + config.type, "opbracket")
    except ModuleNotFoundError as err:
        raise ConfigError(f"preset {config.name}: unknown type {config.type!r}") from err

    cls = getattr(module, config.instance, None)
    if cls is None:
        raise ConfigError(f"preset {config.name}: {config.type} has no {config.instance!r}")

    params = deepcopy(config.metadata)
    for k, value in params.items():
        if is_reference(value):
            ref_type, ref_name = parse_reference(value)
            ref = store.require_config(ref_type, ref_name)
            params[k] = instantiate_from_config(ref, store, _seen + (key,))

    try:
        return cls(**params)
    except (TypeError, ValidationError) as err:
        raise ConfigError(f"preset {config.type}/{config.name}: {err}") from err
