from teaching.games import (
    Classification,
    TeachingClass,
    TeachingGame,
    block_pushing,
    classify,
    dif,
    load_teaching_game,
    move_rest_pd,
    teaching_game_from_dict,
    teaching_game_to_dict,
    teaching_pd,
)
from teaching.session import SessionLog, StudentSpec, play, run_session
from teaching.strategies import (
    DelayedSwitch,
    FixedAction,
    LearnerTeacher,
    PolicyTeacher,
    TeacherSpec,
    TeacherStrategy,
    TitForTat,
    TwoTitsForTat,
    parse_teacher,
    teacher_act,
)
