from experiments.blockpush import BlockPushConfig, blockpush
from experiments.dif import DIF_GAMMAS, DIF_MATRICES, dif_sweep
from experiments.montecarlo import horizon_for, mc_value, mc_values
from experiments.runner import RESULT_COLUMNS, result_row, run_experiment, run_trials, write_results
from experiments.specs import EXPERIMENT_IDS, ExperimentSpec, preset
