from .scenario import dump_scenario, load_scenario, parse_scenario, table1_scenario
from .studies import (CleanStudyRow, MonteCarloResult, RunRecord, Table2Row, emit_table2,
                      reconstruct_measurements, run_clean_study, run_montecarlo)

__all__ = [
    "CleanStudyRow", "MonteCarloResult", "RunRecord", "Table2Row", "dump_scenario",
    "emit_table2", "load_scenario", "parse_scenario", "reconstruct_measurements",
    "run_clean_study", "run_montecarlo", "table1_scenario",
]
