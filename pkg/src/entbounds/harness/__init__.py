"""Random instances, verification campaigns, worked examples and the CLI."""

from .campaign import RunConfig, TrialRecord, run_campaign
from .experiments import continuity_sweep, repro_paper_example
from .generators import haar_state, random_amplitudes, random_biorthogonal_pair
