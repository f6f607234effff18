"""Defines util functions reading and writing the simulation configuration.

The configuration is a flat key=value file with dotted keys (array.n_tx=64),
read with python-dotenv's statement parser. Comments start with '#', lists
are comma separated and sweeps are declared as sweep.<name>.<attribute>.

Functions:
    parse_config(path) -> tuple[SimConfig, list[SweepSpec]]:
        Read a configuration file.
    parse_config_text(text) -> tuple[SimConfig, list[SweepSpec]]:
        Read a configuration from its text.
    format_config(cfg, sweeps=()) -> str:
        Text of a configuration, read back to the same values.
    config_hash(cfg, sweeps=()) -> str:
        sha256 of the canonical configuration.
"""

import hashlib
import json
from dataclasses import asdict
from io import StringIO

from dotenv.parser import parse_stream

from hybrid_precoding_sim.simulator import (
    SimConfig,
    SweepSpec,
    CONFIG_KEYS,
    FAMILIES,
    ParseError,
    ValidationError
)

SNR_SWEEP_NAME = 'snr_db'
_SWEEP_ATTRIBUTES = ('family', 'variable', 'values')


def _statements(text: str):
    for binding in parse_stream(StringIO(text)):
        line = binding.original.line
        if binding.error:
            raise ParseError(f'malformed statement {binding.original.string.strip()!r}', line)
        if binding.key is None:
            continue
        if binding.value is None:
            raise ParseError(f'missing value for {binding.key!r}', line)
        yield binding.key, binding.value.strip(), line


def _collect_sweep(sweeps: dict, key: str, value: str, line: int):
    parts = key.split('.')
    if len(parts) >= 4 and parts[2] == 'set':
        attribute = '.'.join(parts[3:])
        if attribute not in CONFIG_KEYS:
            raise ValidationError(f'line {line}: unknown configuration key '
                                  f'{attribute!r} in {key!r}')
        section = sweeps.setdefault(parts[1], {}).setdefault('set', {})
    elif len(parts) == 3 and parts[2] in _SWEEP_ATTRIBUTES:
        attribute = parts[2]
        section = sweeps.setdefault(parts[1], {})
    else:
        raise ValidationError(f'line {line}: unknown sweep key {key!r}')
    if attribute in section:
        raise ValidationError(f'line {line}: duplicate key {key!r}')
    section[attribute] = value


def _build_sweep(name: str, raw: dict) -> SweepSpec:
    if 'family' not in raw:
        raise ValidationError(f'sweep {name!r} has no family')
    family = raw['family']
    if family not in FAMILIES:
        raise ValidationError(f'sweep {name!r}: unknown family {family!r}, '
                              f'expected one of {sorted(FAMILIES)}')
    default_variable, default_values, default_fixed = FAMILIES[family]
    try:
        values = tuple(float(v) for v in raw['values'].split(',') if v.strip()) \
            if 'values' in raw else default_values
        if 'set' in raw:
            fixed = tuple(sorted((key, CONFIG_KEYS[key][1](value))
                                 for key, value in raw['set'].items()))
        else:
            fixed = default_fixed
    except ValueError as error:
        raise ValidationError(f'sweep {name!r}: {error}') from error
    return SweepSpec(name, family, raw.get('variable', default_variable), values, fixed)


def parse_config_text(text: str) -> tuple[SimConfig, list[SweepSpec]]:
    """Read a configuration from its text.

    Missing keys keep their defaults. A comma separated power.snr_db turns
    into a snr_sumrate sweep named 'snr_db'.

    Args:
        text (str): The configuration text.

    Raises:
        ParseError: On a malformed statement, with its line.
        ValidationError: On an unknown or duplicate key, an invalid value or
                         a violated invariant.

    Returns:
        tuple[SimConfig, list[SweepSpec]]: The configuration and its sweeps.
    """

    values, sweeps = {}, {}
    for key, value, line in _statements(text):
        if key.startswith('sweep.'):
            _collect_sweep(sweeps, key, value, line)
        elif key not in CONFIG_KEYS:
            raise ValidationError(f'line {line}: unknown configuration key {key!r}')
        elif key in values:
            raise ValidationError(f'line {line}: duplicate key {key!r}')
        elif key == 'power.snr_db' and ',' in value:
            if SNR_SWEEP_NAME in sweeps:
                raise ValidationError(f'line {line}: sweep {SNR_SWEEP_NAME!r} '
                                      'declared twice')
            sweeps[SNR_SWEEP_NAME] = {'family': 'snr_sumrate', 'variable': key,
                                      'values': value}
        else:
            values[key] = value

    cfg = SimConfig().with_values(values)
    return cfg, [_build_sweep(name, raw) for name, raw in sweeps.items()]


def parse_config(path) -> tuple[SimConfig, list[SweepSpec]]:
    """Read a configuration file, see parse_config_text.

    Raises:
        ParseError: If the file cannot be read or holds a malformed statement.
    """

    try:
        with open(path) as file:
            text = file.read()
    except OSError as error:
        raise ParseError(f'cannot read configuration {path}: {error}') from error
    return parse_config_text(text)


def _format_value(value) -> str:
    if isinstance(value, (tuple, list)):
        return ','.join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(cfg: SimConfig, sweeps=()) -> str:
    """Text of a configuration that parse_config_text reads back unchanged.

    Args:
        cfg (SimConfig): The configuration.
        sweeps (list[SweepSpec], optional): Its sweeps.

    Returns:
        str: One key=value statement per line.
    """

    lines = []
    for key, (name, _) in CONFIG_KEYS.items():
        value = getattr(cfg, name)
        if value is not None:
            lines.append(f'{key}={_format_value(value)}')
    for spec in sweeps:
        prefix = f'sweep.{spec.name}'
        lines += [f'{prefix}.family={spec.family}',
                  f'{prefix}.variable={spec.variable}',
                  f'{prefix}.values={_format_value(spec.values)}']
        lines += [f'{prefix}.set.{key}={_format_value(value)}' for key, value in spec.fixed]
    return '\n'.join(lines) + '\n'


def config_hash(cfg: SimConfig, sweeps=()) -> str:
    canonical = json.dumps({
        'config': cfg.as_dict(),
        'sweeps': [asdict(spec) for spec in sweeps],
    }, sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()
