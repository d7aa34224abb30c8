"""Deterministic seed derivation for trial-parallel sampling.

Every random quantity in the package is drawn from a PCG64 generator whose
seed is derived from the experiment seed, the trial index, and a stream tag
by SplitMix64.  The derivation is order-free: trial k can be sampled without
sampling trials 0..k-1, and graph/feature/split streams of the same trial
are mutually independent.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Stream tags; distinct per consumer so the same trial never reuses bits.
GRAPH_STREAM = 1
FEATURE_STREAM = 2
SPLIT_STREAM = 3
AUX_STREAM = 4


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer (Steele, Lea & Flood 2014), the mix function of
    java.util.SplittableRandom."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def stream_seed(seed: int, trial_index: int, stream: int = AUX_STREAM) -> int:
    """64-bit sub-seed for (seed, trial_index, stream).

    trial_seed is the (trial_index+1)-th output of a SplitMix64 sequence
    started at `seed`; the stream seed is the `stream`-th output of a
    sequence started at trial_seed.
    """
    if trial_index < 0:
        raise ValueError(f"trial_index must be >= 0, got {trial_index}")
    trial_seed = splitmix64((seed + trial_index * _GOLDEN) & _MASK64)
    return splitmix64((trial_seed + stream * _GOLDEN) & _MASK64)


def rng_for(seed: int, trial_index: int, stream: int = AUX_STREAM) -> np.random.Generator:
    """PCG64 generator for one (seed, trial, stream) triple."""
    return np.random.Generator(np.random.PCG64(stream_seed(seed, trial_index, stream)))
