"""Local quantum uncertainty of cavity qubits leaking into vacuum reservoirs."""

from .channel import AmplitudeChannel, JointState, evolve, isometry, mirror_time, reduced
from .entanglement import ConcurrenceResult, concurrence, death_birth_times
from .lqu import (
    LquBreakdown,
    Observable,
    lqu_bipartite,
    lqu_bruteforce,
    lqu_matrix,
    lqu_multiqubit,
    skew_information,
)
from .states import (
    DensityMatrix,
    PureInitialState,
    WernerParam,
    pure_state,
    validate,
    werner_state,
)
from .sweep import MergeEvents, SweepConfig, SweepRecord, detect_merge, run_sweep, write_csv

__version__ = "0.1.0"
