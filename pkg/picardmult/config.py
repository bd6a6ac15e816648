'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import os
from dataclasses import asdict, dataclass, field
from typing import Optional, Tuple

import yaml

from picardmult.defines import (BASE_POINT, CANONICAL, FUNCTIONAL_TOL, MATRIX_TOL, MAX_WORD_LEN, MULTIPLIER_TOL,
                                NORMALIZATIONS, SECOND_POINT, SIGMA_ROUND_TOL)
from picardmult.eisenstein import EisensteinIdeal, EisensteinInt
from picardmult.exceptions import InvalidConfig, ZeroDivisor


_default_config = {
    'log': {'filename': 'picardmult.log', 'level': 'WARNING', 'disabled': False},
    'run': {
        'seed': 0,
        'samples': 1000,
        'max_len': 30,
        'ideal': '1,0',
        'base_point': [[BASE_POINT[0].real, BASE_POINT[0].imag], [BASE_POINT[1].real, BASE_POINT[1].imag]],
        'second_point': [[SECOND_POINT[0].real, SECOND_POINT[0].imag], [SECOND_POINT[1].real, SECOND_POINT[1].imag]],
        'tolerances': {'matrix': MATRIX_TOL, 'functional': FUNCTIONAL_TOL, 'sigma_round': SIGMA_ROUND_TOL, 'multiplier': MULTIPLIER_TOL},
        'output': None,
        'normalization': CANONICAL,
    },
    'suites': {
        'halfplane': {'samples': 100000, 'dims': [2, 3, 4], 'taus_per_element': 10},
        'cocycle_relation': {'exact': 500, 'numeric': 500, 'dims': [2, 3], 'max_len': 20},
        'multiplier': {'ideals': ['1,2', '2,0'], 'pairs': 200, 'max_len': 10},
        'torus': {'pairs': 1000},
        'kappa_invariance': {'base_words': 50, 'insertions': 100, 'max_len': 12},
        'Sigma': {'pairs': 1000},
    },
}


class AttrDict(dict):
    def __init__(self, d=None):
        super().__init__()
        if d:
            for k, v in d.items():
                self.__setitem__(k, v)

    def __setitem__(self, key, value):
        if isinstance(value, dict):
            value = AttrDict(value)
        super().__setitem__(key, value)

    def __getattr__(self, item):
        return self.__getitem__(item)

    def __missing__(self, key):
        return AttrDict()

    def __repr__(self) -> str:
        return super().__repr__()

    __setattr__ = __setitem__


def _merge(base: dict, override: dict) -> dict:
    ret = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(ret.get(k), dict):
            ret[k] = _merge(ret[k], v)
        else:
            ret[k] = v
    return ret


class Config:
    """
    Sources, in order: a YAML path, a dict, another Config, the file named by
    PICARDMULT_CONFIG, the built-in defaults. Partial configs are merged over
    the defaults.
    """
    def __init__(self, config=None):
        self.config = AttrDict(_default_config)
        self.log_msg = ""

        if isinstance(config, str):
            if config and os.path.exists(config):
                with open(config) as fp:
                    self.config = AttrDict(_merge(_default_config, yaml.safe_load(fp) or {}))
                    self.log_msg = f'Config: use file={config!r} containing the following main keys: {", ".join(self.config.keys())}'
            else:
                raise InvalidConfig(f'Config: no file={config!r}')
        elif isinstance(config, Config):
            self.config = AttrDict(config.config)
            self.log_msg = f'Config: using Config containing the following main keys: {", ".join(self.config.keys())}'
        elif isinstance(config, dict):
            self.config = AttrDict(_merge(_default_config, config))
            self.log_msg = f'Config: use dict containing the following main keys: {", ".join(self.config.keys())}'
        elif config is None and os.environ.get('PICARDMULT_CONFIG') and os.path.exists(os.environ.get('PICARDMULT_CONFIG')):
            config = os.environ.get('PICARDMULT_CONFIG')
            with open(config) as fp:
                self.config = AttrDict(_merge(_default_config, yaml.safe_load(fp) or {}))
                self.log_msg = f'Config: use file={config!r} from PICARDMULT_CONFIG containing the following main keys: {", ".join(self.config.keys())}'
        elif config is None:
            self.log_msg = 'Config: no config given => default config.'
        else:
            raise InvalidConfig(f'Config: only accept str, dict and Config but got {type(config)!r}')

    def __bool__(self):
        return self.config != {}

    def __getattr__(self, attr):
        return self.config[attr]

    def __getitem__(self, key):
        return self.config[key]

    def __contains__(self, item):
        return item in self.config

    def __repr__(self) -> str:
        return self.config.__repr__()


def parse_point(value) -> Tuple[complex, ...]:
    """
    Accepts 're,im;re,im' or a list of [re, im] pairs.
    """
    try:
        if isinstance(value, str):
            coords = []
            for part in value.split(';'):
                re_part, im_part = part.split(',')
                coords.append(complex(float(re_part), float(im_part)))
            return tuple(coords)
        return tuple(complex(float(re_part), float(im_part)) for re_part, im_part in value)
    except (TypeError, ValueError) as e:
        raise InvalidConfig(f"cannot parse point {value!r}") from e


def parse_ideal(value) -> EisensteinIdeal:
    try:
        if isinstance(value, str):
            return EisensteinIdeal.parse(value)
        if isinstance(value, dict):
            return EisensteinIdeal.from_json(value)
        return EisensteinIdeal(EisensteinInt.from_json(value))
    except ZeroDivisor as e:
        raise InvalidConfig(f"ideal {value!r} is the zero ideal") from e
    except (TypeError, ValueError) as e:
        raise InvalidConfig(f"cannot parse ideal {value!r}") from e


def point_defect(tau: Tuple[complex, ...]) -> float:
    return 2 * tau[0].real + sum(abs(t) ** 2 for t in tau[1:])


@dataclass
class Tolerances:
    matrix: float = MATRIX_TOL
    functional: float = FUNCTIONAL_TOL
    sigma_round: float = SIGMA_ROUND_TOL
    multiplier: float = MULTIPLIER_TOL


@dataclass
class RunConfig:
    seed: int = 0
    samples: int = 1000
    max_len: int = 30
    ideal: EisensteinIdeal = field(default_factory=lambda: EisensteinIdeal(EisensteinInt(1, 0)))
    base_point: Tuple[complex, ...] = BASE_POINT
    second_point: Tuple[complex, ...] = SECOND_POINT
    tolerances: Tolerances = field(default_factory=Tolerances)
    output: Optional[str] = None
    normalization: str = CANONICAL
    suites: AttrDict = field(default_factory=lambda: AttrDict(_default_config['suites']))
    g: Optional[str] = None
    h: Optional[str] = None
    # set when the sample count comes from the command line and applies to every suite
    sample_override: Optional[int] = None
    ideal_given: bool = False

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_config(cls, config: Optional[Config] = None, **overrides) -> 'RunConfig':
        """
        Build from config['run'] and config['suites']; keyword overrides whose value
        is None are ignored so CLI flags can be passed through unconditionally.
        """
        config = config if isinstance(config, Config) else Config(config)
        run = config.run
        tolerances = _merge(_default_config['run']['tolerances'], dict(run.tolerances or {}))
        for key in list(overrides):
            if key.startswith('tol_'):
                value = overrides.pop(key)
                if value is not None:
                    tolerances[key[4:]] = value
        overrides = {k: v for k, v in overrides.items() if v is not None}

        try:
            kwargs = dict(
                seed=int(run.get('seed', 0)),
                samples=int(run.get('samples', 1000)),
                max_len=int(run.get('max_len', 30)),
                ideal=parse_ideal(run.get('ideal', '1,0')),
                base_point=parse_point(run.get('base_point', _default_config['run']['base_point'])),
                second_point=parse_point(run.get('second_point', _default_config['run']['second_point'])),
                tolerances=Tolerances(**{k: float(v) for k, v in tolerances.items()}),
                output=run.get('output'),
                normalization=run.get('normalization', CANONICAL),
                suites=AttrDict(_merge(_default_config['suites'], dict(config.suites or {}))),
            )
        except TypeError as e:
            raise InvalidConfig(f"malformed run section: {e}") from e

        if 'ideal' in overrides:
            overrides['ideal'] = parse_ideal(overrides['ideal'])
            kwargs['ideal_given'] = True
        if 'samples' in overrides:
            kwargs['sample_override'] = int(overrides['samples'])
        for key in ('base_point', 'second_point'):
            if key in overrides:
                overrides[key] = parse_point(overrides[key])
        kwargs.update(overrides)
        return cls(**kwargs)

    def validate(self):
        for name, value in asdict(self.tolerances).items():
            if not value > 0:
                raise InvalidConfig(f"tolerance {name} must be positive, got {value}")
        if self.max_len < 1:
            raise InvalidConfig(f"max_len must be at least 1, got {self.max_len}")
        if self.max_len > MAX_WORD_LEN:
            raise InvalidConfig(f"max_len must be at most {MAX_WORD_LEN}, got {self.max_len}")
        if self.samples < 1:
            raise InvalidConfig(f"samples must be at least 1, got {self.samples}")
        if self.normalization not in NORMALIZATIONS:
            raise InvalidConfig(f"normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}")
        for name in ('base_point', 'second_point'):
            point = getattr(self, name)
            if len(point) != 2:
                raise InvalidConfig(f"{name} must have 2 coordinates, got {len(point)}")
            if not point_defect(point) < 0:
                raise InvalidConfig(f"{name} {point} is not inside the ball")

    def to_json(self) -> dict:
        return {
            'seed': self.seed,
            'samples': self.samples,
            'max_len': self.max_len,
            'ideal': self.ideal.to_json(),
            'base_point': [[t.real, t.imag] for t in self.base_point],
            'second_point': [[t.real, t.imag] for t in self.second_point],
            'tolerances': asdict(self.tolerances),
            'normalization': self.normalization,
        }
