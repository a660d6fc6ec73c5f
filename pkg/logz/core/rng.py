"""Hierarchical, reproducible random streams."""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from logz.core.exceptions import ValidationException


@dataclass(frozen=True)
class RngStream:
    """
    A seed plus a hierarchical path.

    Streams with distinct paths come from independent ``SeedSequence``
    spawn keys; the same (seed, path) always yields the same generator state.

    Example:
        >>> root = RngStream(7)
        >>> block = root.child(3, 2, 0, 5)
        >>> block.path
        (3, 2, 0, 5)
    """

    seed: int
    path: Tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValidationException(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if any(int(p) < 0 for p in self.path):
            raise ValidationException(f"path indices must be non-negative, got {self.path}")

    def child(self, *index: int) -> "RngStream":
        """Stream one or more levels below this one."""
        return RngStream(self.seed, self.path + tuple(int(i) for i in index))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        sequence = np.random.SeedSequence(entropy=int(self.seed), spawn_key=self.path)
        return np.random.default_rng(sequence)


RngLike = Union[RngStream, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    """Accept either a stream or an already-positioned generator."""
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise ValidationException(f"Expected RngStream or numpy Generator, got {type(rng).__name__}")
