from learning.learners import (
    COOP,
    DEFECT,
    BqlState,
    QlState,
    act,
    boltzmann,
    bql_update,
    decode_state,
    encode_state,
    ql_update,
)
from learning.schedules import Decay, Fixed, TemperatureSchedule, parse_schedule, temperature_at
