"""
Reproducible random streams.

A stream is identified by (master_seed, stream_id) and backed by the
counter-based Philox generator, so the same pair yields the same numbers
on every platform and distinct ids give independent streams.
"""
import hashlib

import numpy as np

from .exceptions import DomainError

_UINT64 = 2 ** 64


def _derive_id(*parts) -> int:
    digest = hashlib.sha256(':'.join(str(part) for part in parts).encode('utf-8')).digest()
    return int.from_bytes(digest[:8], byteorder='big')


class RngStream:
    """Single-owner random stream; parallel work must use distinct stream ids."""

    def __init__(self, master_seed: int, stream_id: int = 0):
        for name, value in (('master_seed', master_seed), ('stream_id', stream_id)):
            if not 0 <= int(value) < _UINT64:
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {value}")
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        seed_sequence = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(seed_sequence))

    @classmethod
    def for_name(cls, master_seed: int, name: str) -> 'RngStream':
        """Stream keyed by a name, e.g. one per verification check."""
        return cls(master_seed, _derive_id(master_seed, 'name', name))

    def child(self, index: int) -> 'RngStream':
        """Independent sub-stream; the same index always gives the same stream."""
        return RngStream(self.master_seed, _derive_id(self.master_seed, self.stream_id, index))

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def open_uniform(self, size=None):
        """Uniform on the open interval (0, 1)."""
        values = self.generator.random(size)
        if np.ndim(values) == 0:
            while values == 0.0:
                values = self.generator.random()
            return values
        zeros = values == 0.0
        while zeros.any():
            values[zeros] = self.generator.random(int(zeros.sum()))
            zeros = values == 0.0
        return values

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def exponential(self, scale=1.0, size=None):
        return self.generator.exponential(scale, size)

    def gamma(self, shape, size=None):
        return self.generator.gamma(shape, 1.0, size)

    def log_gamma(self, shape, size=None):
        """log of a Gamma(shape, 1) draw, finite even when the draw itself underflows."""
        shape = np.asarray(shape, dtype=float)
        return np.log(self.generator.gamma(shape + 1.0, 1.0, size)) + np.log(self.open_uniform(size)) / shape

    def wald(self, mean, shape, size=None):
        """Inverse Gaussian with the given mean and shape."""
        return self.generator.wald(mean, shape, size)

    def binomial(self, n, p, size=None):
        return self.generator.binomial(n, p, size)

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_id={self.stream_id})"
