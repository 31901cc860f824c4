"""Event- and self-triggered critic-learning attitude consensus.

A deterministic simulator and control library for networks of rigid bodies
whose attitudes, parameterized by Modified Rodriguez Parameters, are driven
to consensus by a model-free quadratic critic.  Controller updates and
inter-agent communication happen only at event- or self-triggered instants.
"""

from .graph import Topology, TopologyError, build_topology, is_strongly_connected
from .dynamics import (AugmentedError, InertiaError, InertiaMatrix,
                       RigidBodyState, augmented_input_matrix, body_derivative,
                       compensator_step_input, compensator_terms,
                       consensus_error, cross, mrp_kinematics_matrix, skew)
from .critic import (CriticState, PHI_DIM, PHI_PAIRS, control_from_critic,
                     critic_update, grad_phi, phi, policy_iteration_step,
                     value)
from .trigger import (TriggerParams, TriggerState, control_activity,
                      dynamic_condition_holds, measurement_error,
                      self_condition_holds, self_measurement_bound,
                      self_threshold, y_step, zeno_lower_bound)
from .sim import (AgentInitial, ConfigError, MetricsReport, SimConfig,
                  SimulationAbort, SweepError, Trace, accumulate_cost,
                  metrics, read_metrics_json, read_trace_csv, run, sweep,
                  trace_columns, trigger_trace_columns, write_metrics,
                  write_trace_csv, write_trigger_trace_csv)
from .cli import Scenario, compare_reports, load_scenario

__version__ = "0.1.0"
