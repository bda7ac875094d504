from population.simulation import (
    MaliciousPolicy,
    PopStats,
    PopulationConfig,
    load_population_config,
    population_config_from_dict,
    Role,
    Verdict,
    rational_deviation_check,
    run_population,
)
