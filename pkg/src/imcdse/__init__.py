"""imcdse: design-space exploration for crossbar in-memory-computing chips.

Search a discrete 9-parameter chip space with a genetic algorithm,
scoring candidates on several CNN workloads at once with an analytical
energy / latency / area model.
"""

from .workloads import (Layer, LayerKind, Workload, parse_workload,
                        serialize_workload, load_workload, load_bundled,
                        load_default_workloads, layer_storage_demand,
                        layer_mvm_count, layer_activation_bytes,
                        total_cell_demand)
from .space import (SearchSpace, HardwareConfig, PARAM_NAMES, space_size,
                    decode, encode, sample_random, default_space, tiny_space,
                    load_space, save_space)
from .cost import (CostConstants, DEFAULT_CONSTANTS, Metrics, Infeasible,
                   MappingResult, check_timing, map_workload, estimate_area,
                   estimate_latency, estimate_energy, evaluate, load_constants)
from .objective import (ObjectiveForm, ObjectiveSpec, Score, score_single,
                        score_joint, better)
from .evolution import (GaParams, Individual, History, init_population,
                        sbx_crossover, polynomial_mutation, tournament_select,
                        run_search, top_k)
from .experiments import (RunReport, CrossEvalTable, OracleResult, run_joint,
                          run_separate, cross_evaluate, failed_fraction,
                          score_loss, score_loss_table, brute_force_oracle,
                          best_recalculated)
from .reporting import emit_reports

__version__ = "0.1.0"
