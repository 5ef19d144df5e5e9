#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CFTW utilities
"""

import hashlib
import importlib.resources as pkg_resources
import inspect
import json
import os
import sys
from abc import abstractmethod
from enum import Enum, EnumMeta
from importlib.abc import Traversable
from typing import Iterable, Optional

from loguru import logger as Logger
from omegaconf import DictConfig, OmegaConf

METADATA: Traversable = pkg_resources.files("cftw") / "metadata"


def load_defaults() -> DictConfig:
    """
    Load package defaults (tolerances, oracle, certification, stability)
    """

    path = METADATA / "defaults.yaml"

    with path.open() as infile:
        defaults = OmegaConf.create(infile.read())

    return defaults


def load_config(path: Optional[str] = None) -> DictConfig:
    """
    Package defaults, optionally overridden by a user YAML file
    """

    config = load_defaults()

    if path is not None:
        config = OmegaConf.merge(config, OmegaConf.load(os.path.expanduser(path)))

    return config


def load_instance_document(name: str) -> dict:
    """
    Load built-in instance document
    """

    path = METADATA / "instances" / f"{name}.json"

    if not path.is_file():
        raise ValueError(f"No built-in instance named `{name}`!")

    with path.open() as infile:
        document = json.load(infile)

    return document


class MetaEnum(EnumMeta):
    """
    Enable `in` checks with raw values

    >>> 'ball' in ConstraintTypes
    True

    >>> 'ellipse' in ConstraintTypes
    False
    """

    def __contains__(cls, item):
        try:
            cls(item)  # pylint: disable=E
        except ValueError:
            return False
        return True


class StrEnum(str, Enum, metaclass=MetaEnum):
    """
    String Enum

    >>> class Bar(StrEnum):
           TEST = 'test'

    >>> print(Bar.TEST == "test")
    True
    """

    def __str__(self) -> str:
        return self.value

    def __repr__(self):
        return str(self)


class LogLevel(StrEnum):
    """
    Logging severity
    """

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


def set_logging(
    logger: Logger,
    level: str,
    directory: Optional[str] = None,
    logfile: str = "cftw.log",
):
    """
    Reset sinks: stderr at `level` and, if `directory` is given, a log file
    """

    assert level in LogLevel, f"Unknown log level `{level}`"

    logger.remove()
    logger.add(sys.stderr, level=level)

    if directory is not None:
        logdir = os.path.join(directory, "logs")
        os.makedirs(logdir, exist_ok=True)
        logger.add(os.path.join(logdir, logfile), mode="a", rotation="1 week")


def compute_hexdigest(message: Iterable, hasher: str = "md5") -> str:
    """
    Compute hexdigest
    """

    hash_func = getattr(hashlib, hasher, None)

    if hash_func is None:
        raise ValueError(f"Hash function `{hasher}` not found in hashlib!")

    h = hash_func()

    if isinstance(message, str):
        h.update(message.encode())
    else:
        for e in message:
            h.update(str(e).encode())

    return h.hexdigest()


def format_float(value: float) -> float:
    """
    Round to 17 significant digits (lossless for float64)
    """

    return float(f"{value:.17g}")


def chunkize_list(a: list, n: int):
    """
    Divide list in `n` (almost) equally sized parts
    """

    if not len(a) >= n:
        raise ValueError(f"Cannot split a list of length {len(a)} into {n} chunks!")
    k, m = divmod(len(a), n)
    chunks = (a[i * k + min(i, m) : (i + 1) * k + min(i + 1, m)] for i in range(n))
    return chunks


class FrozenError(Exception):
    """Object should not be modified"""


class MetaConfig(type):
    """
    Meta class to call `sanity_check` after instantiation
    """

    def __call__(cls, *args, **kwargs):
        """Called when you call Foo(*args, **kwargs)"""
        obj = type.__call__(cls, *args, **kwargs)
        obj.sanity_check()
        return obj


class AbstractConfig(metaclass=MetaConfig):
    """
    Base configuration: immutable, validated on construction.

    Subclasses list their fields with defaults as class attributes and set
    instance values through `_set`.
    """

    def _set(self, **kwargs):
        for key, value in kwargs.items():
            if not hasattr(type(self), key):
                raise TypeError(f"{type(self).__name__} has no field `{key}`")
            if value is not None:
                super().__setattr__(key, value)

    @abstractmethod
    def sanity_check(self):
        """
        Check all attributes are valid
        """

    @classmethod
    def from_omegaconf(cls, config: Optional[DictConfig] = None, **overrides):
        """
        Build from an OmegaConf node, explicit keyword arguments win
        """

        kwargs: dict = {}
        if config is not None:
            kwargs.update(OmegaConf.to_container(config, resolve=True))
        kwargs.update({k: v for k, v in overrides.items() if v is not None})

        return cls(**kwargs)

    def replace(self, **kwargs):
        """
        Copy with some fields changed
        """

        config = self.to_dict()
        config.update(kwargs)

        return type(self)(**config)

    def to_dict(self) -> dict:
        """
        Convert config to dictionary: must include class attributes
        """

        attributes = inspect.getmembers(self, lambda a: not inspect.isroutine(a))

        return dict(a for a in attributes if not a[0].startswith("_"))

    def to_omegaconf(self) -> DictConfig:
        """
        Convert to OmegaConf object
        """

        return OmegaConf.create(self.to_dict())

    def save(self, directory: str, name: str = "conf.yaml"):
        """
        Save as YAML
        """
        OmegaConf.save(self.to_omegaconf(), os.path.join(directory, name))

    def __setattr__(self, name, value):
        raise FrozenError(f"{type(self).__name__} object is immutable!")

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __str__(self):
        return str(OmegaConf.to_yaml(self.to_omegaconf()))

    def __repr__(self):
        return str(OmegaConf.to_yaml(self.to_omegaconf()))
