"""Contains general (mostly internal) utility functions."""
from __future__ import annotations

import dataclasses
import functools
import json
import re
import sys
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from boltons import iterutils

from neumannx.constants import NEUMANNX_PATH, SCHEMA_VERSION

__all__ = [
    "parse_complex",
    "format_complex",
    "to_plain_tree",
    "dump_json",
    "load_schema",
    "validate_report",
    "_patch_mod_all",
]


def parse_complex(text: str) -> complex:
    """Parse a complex number written as ``a+bi`` (no spaces).

    Both ``i`` and ``j`` are accepted as imaginary unit, either part may be omitted.

    Parameters
    ----------
    text :
        The string to parse.

    Returns
    -------
    complex :
        The parsed number.

    Raises
    ------
    ValueError
        If the string is not a valid complex literal.

    Examples
    --------
    >>> parse_complex("1.193292+0.4406488i")
    (1.193292+0.4406488j)
    >>> parse_complex("0.5")
    (0.5+0j)

    """
    literal = text.strip()
    if not literal or re.search(r"\s", literal):
        raise ValueError(f"Cannot parse '{text}' as complex number 'a+bi'.")
    if literal[-1] == "i":
        literal = literal[:-1] + "j"
    try:
        return complex(literal)
    except ValueError:
        raise ValueError(f"Cannot parse '{text}' as complex number 'a+bi'.") from None


def format_complex(z: complex, digits: int = 15) -> str:
    """Format a complex number as ``a+bi`` with the given significant digits.

    Examples
    --------
    >>> format_complex(1.5 - 0.25j)
    '1.5-0.25i'

    """
    z = complex(z)
    sign = "-" if np.signbit(z.imag) else "+"
    return f"{z.real:.{digits}g}{sign}{abs(z.imag):.{digits}g}i"


def _visit_plain(path, key, value):
    """Convert leaf values of a nested structure to JSON compatible types."""
    if isinstance(value, (bool, np.bool_)):
        return key, bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return key, {"re": float(np.real(value)), "im": float(np.imag(value))}
    if isinstance(value, np.integer):
        return key, int(value)
    if isinstance(value, np.floating):
        return key, float(value)
    if isinstance(value, float) and not np.isfinite(value):
        return key, None if np.isnan(value) else str(value)
    if isinstance(value, Path):
        return key, value.as_posix()
    return key, value


def _enter_plain(path, key, value):
    """Enter numpy arrays and dataclasses like lists and dicts."""
    if isinstance(value, np.ndarray):
        return [], enumerate(value.tolist())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {}, dataclasses.asdict(value).items()
    return iterutils.default_enter(path, key, value)


def to_plain_tree(tree: Any) -> Any:
    """Turn a nested structure of numerical results into plain JSON types.

    Complex numbers become ``{"re": ..., "im": ...}`` mappings, numpy scalars and
    arrays become Python scalars and lists and dataclasses become dictionaries.

    Examples
    --------
    >>> to_plain_tree({"value": np.complex128(1 + 2j), "n": np.int64(3)})
    {'value': {'re': 1.0, 'im': 2.0}, 'n': 3}

    """
    if dataclasses.is_dataclass(tree) and not isinstance(tree, type):
        tree = dataclasses.asdict(tree)
    return iterutils.remap(tree, visit=_visit_plain, enter=_enter_plain)


def dump_json(tree: Any) -> str:
    """Serialize a report to canonical JSON text with a schema version field."""
    tree = to_plain_tree(tree)
    if isinstance(tree, dict):
        tree.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(tree, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@functools.lru_cache(maxsize=None)
def _read_schema(name: str) -> str:
    path = NEUMANNX_PATH / "schemas" / f"{name}-{SCHEMA_VERSION}.yaml"
    if not path.exists():
        raise ValueError(f"No schema named '{name}' ({path.name}) is shipped.")
    return path.read_text()


def load_schema(name: str) -> dict:
    """Load a shipped JSON schema (stored as YAML) by name."""
    return yaml.safe_load(_read_schema(name))


def validate_report(report: Any, name: str):
    """Validate a report against one of the shipped schemas.

    Parameters
    ----------
    report :
        The report, either as nested Python structure or as JSON text.
    name :
        Schema name, e.g. ``"certificate"``.

    Raises
    ------
    jsonschema.ValidationError
        If the report does not conform to the schema.

    """
    import jsonschema

    if isinstance(report, str):
        report = json.loads(report)
    else:
        report = json.loads(dump_json(report))
    jsonschema.validate(instance=report, schema=load_schema(name))


def _patch_mod_all(module_name: str):
    """Hack the __module__ attribute of __all__ members to the given module.

    Parameters
    ----------
    module_name :
        the fully qualified module name.

    This is needed as Sphinx currently does not respect the all variable and ignores
    the contents. By simulating that the "all" attributes are belonging here, we work
    around this situation.
    """
    this_mod = sys.modules[module_name]
    for name in getattr(this_mod, "__all__", ()):
        obj = getattr(this_mod, name)
        try:
            obj.__module__ = module_name
        except (AttributeError, TypeError):
            pass
