"""
Temperature schedules for Boltzmann action selection
"""
from dataclasses import dataclass
from typing import Union

from games.errors import ConfigError, DomainError


@dataclass(frozen=True)
class Fixed:
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError(f'temperature must be positive, got {self.T}')

    def temperature_at(self, n: int) -> float:
        return self.T

    def describe(self) -> str:
        return f'fixed:{self.T:g}'


@dataclass(frozen=True)
class Decay:
    """T(0) = T0, T(n+1) = T(n) * rate + offset; converges to offset / (1 - rate)"""
    T0: float = 75.0
    rate: float = 0.9
    offset: float = 0.05

    def __post_init__(self):
        if not self.T0 > 0 or not 0.0 <= self.rate < 1.0 or not self.offset > 0:
            raise DomainError(f'invalid decay schedule T0={self.T0}, rate={self.rate}, offset={self.offset}')

    @property
    def fixed_point(self) -> float:
        return self.offset / (1.0 - self.rate)

    def temperature_at(self, n: int) -> float:
        if n < 0:
            raise DomainError(f'step must be non-negative, got {n}')
        floor = self.fixed_point
        return floor + (self.T0 - floor) * self.rate ** n

    def describe(self) -> str:
        return f'decay:{self.T0:g}:{self.rate:g}:{self.offset:g}'


TemperatureSchedule = Union[Fixed, Decay]


def temperature_at(schedule: TemperatureSchedule, n: int) -> float:
    return schedule.temperature_at(n)


def parse_schedule(text: str) -> TemperatureSchedule:
    """Parse `fixed:T`, `decay` or `decay:T0:rate:offset`"""
    kind, _, rest = text.partition(':')
    try:
        if kind == 'fixed':
            return Fixed(float(rest))
        if kind == 'decay':
            if not rest:
                return Decay()
            t0, rate, offset = (float(x) for x in rest.split(':'))
            return Decay(t0, rate, offset)
    except ValueError as e:
        raise ConfigError(f'Invalid schedule {text!r}: {str(e)}') from e
    raise ConfigError(f"Unknown schedule {text!r}; use 'fixed:T' or 'decay'")
