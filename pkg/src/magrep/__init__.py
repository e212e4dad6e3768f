"""Cavity-magnon quantum repeater chain simulator.

Layers, bottom up:

* :mod:`magrep.qcore` - dense complex linear algebra, labeled density
  matrices, Bell/Werner states, concurrence and fidelity.
* :mod:`magrep.dynamics` - Lindblad-equation node model producing the
  heralded cavity-magnon Bell pair.
* :mod:`magrep.swap` - beam-splitter interference, Bell-state measurement
  with feed-forward corrections, depolarizing swap noise.
* :mod:`magrep.network` - analytic link budgets, multiplexing and per-hop
  fidelity for multi-hop chains.
* :mod:`magrep.cli` - deterministic runs emitting CSV tables and SVG plots.
"""

from .dynamics import (
    EvolutionTrace,
    IntegrationError,
    LindbladParams,
    MaterialParams,
    build_full_hamiltonian,
    build_rwa_hamiltonian,
    collapse_operators,
    coupling_strength,
    evolve,
    generate_bell_pair,
    lindblad_rhs,
)
from .network import (
    BUILTIN_SCENARIOS,
    ChainReport,
    NoiseModel,
    ScenarioParams,
    chain_fidelity,
    click_probability,
    cumulative_success,
    get_scenario,
    hop_success,
    link_efficiency,
    simulate_chain,
    threshold_hops,
)
from .qcore import (
    DensityMatrix,
    HilbertSpec,
    bell_state,
    concurrence,
    fidelity,
    kron,
    partial_trace,
    werner_state,
)
from .swap import (
    BELL_OUTCOMES,
    BellOutcome,
    SwapResult,
    beam_splitter_unitary,
    bsm,
    depolarize,
    heralded_link_probability,
    node_swap_gate,
    swap_time,
)

__version__ = "0.1.0"
