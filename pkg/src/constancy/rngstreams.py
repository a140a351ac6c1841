"""Deterministic sub-stream derivation.

One user-facing 64-bit seed reproduces every random choice in the package.
A sub-stream is identified by (seed, label, index): the label is a short
ASCII tag naming the consumer ("classical-mc", "fm-placement", ...) and
the index separates repeated uses under the same label.  The triple is fed
to numpy's SeedSequence, so distinct labels give statistically independent
streams and the mapping is stable across runs and platforms.
"""

import zlib

import numpy as np


def substream(seed, label, index=0):
    """Return a numpy Generator for the (seed, label, index) sub-stream."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(label.encode("ascii")), int(index)])
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed, label, index=0):
    """Collapse a (seed, label, index) triple to a plain 64-bit seed."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(label.encode("ascii")), int(index)])
    return int(ss.generate_state(2, np.uint32).view(np.uint64)[0])
