"""Counter-based random streams.

A single 64-bit master seed plus a stream index select an independent
Philox stream.  Streams indexed by trial number make Monte Carlo runs
reproducible no matter how trials are scheduled across workers: trial t
always draws from stream t, whether it runs first or last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1

# Stream indices are partitioned as (role << 48) | counter so that
# different uses of randomness inside one run can never collide.
_ROLE_SHIFT = 48
ROLE_TRIAL = 0
ROLE_PROBE = 1
ROLE_RETRY = 2


def compose_stream_index(role: int, counter: int) -> int:
    """Pack a role tag and a counter into one stream index."""
    if not 0 <= role < (1 << 16):
        raise ValueError(f"role {role} out of range")
    if not 0 <= counter < (1 << _ROLE_SHIFT):
        raise ValueError(f"counter {counter} out of range")
    return (role << _ROLE_SHIFT) | counter


@dataclass(frozen=True)
class SeedStream:
    """Master seed from which numbered child generators are derived.

    Children with distinct indices have statistically independent output,
    and the (master_seed, index) pair determines the byte stream exactly,
    independent of creation order or process boundaries.
    """

    master_seed: int

    def __post_init__(self) -> None:
        if not 0 <= int(self.master_seed) <= _MASK64:
            raise ValueError("master_seed must fit in 64 bits")

    def generator(self, stream_index: int) -> np.random.Generator:
        """Return the child generator for ``stream_index``."""
        if stream_index < 0:
            raise ValueError("stream_index must be nonnegative")
        key = np.array(
            [int(self.master_seed) & _MASK64, int(stream_index) & _MASK64],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))

    def trial_generator(self, trial: int) -> np.random.Generator:
        """Generator for Monte Carlo trial number ``trial``."""
        return self.generator(compose_stream_index(ROLE_TRIAL, trial))
