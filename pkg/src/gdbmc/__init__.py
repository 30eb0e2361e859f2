"""Simulation toolkit for Monte Carlo without detailed balance.

Modules: deterministic RNG (rng), Brownian-bridge sampling (bridge),
directed jump processes (jumpproc) and their summary tables (tables),
relative-entropy diagnostics (entropy), weighted molecular graphs and
centering (graph, distgeo), partial chirotopes and LP realization
(chirotope, lp), restricted-space Metropolis MC (metropolis), and the
bead-driven non-equilibrium molecular MC (molecular).
"""

__version__ = "0.1.0"

from .bridge import bridge_covariance, bridge_variance, levy_bridge, levy_bridges
from .chirotope import (PartialChirotope, RealizationRequest, check_chirality,
                        chi_of_points, realize_lp)
from .distgeo import (CenteringSchedule, VibrantParams, anneal_and_settle,
                      check_distance, iterative_centering, vibrant_center,
                      vibrant_iteration)
from .entropy import FiniteChain, entropy_rates, kl_continuous, kl_discrete, slit_kl
from .graph import (WeightedGraph, center, hooke_potential, in_restricted_space,
                    load_graph_file)
from .jumpproc import JumpStats, ProcessConfig, derived_ratios, run
from .lp import SimplexOutcome, SimplexProblem, solve
from .metropolis import MCReport, PotentialModel, mc_run, trial_move
from .molecular import BeadSpec, EquippedSystem, equip, noneq_step, polymer_demo
from .rng import MersenneTwister
