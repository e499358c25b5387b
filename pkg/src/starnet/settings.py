"""Measurement-direction configurations (unit Bloch vectors)."""
from dataclasses import dataclass

import numpy as np

from ._validation import unit_vectors
from .bell import vertesi_pairs
from .errors import (
    DegenerateDifferenceError,
    InvalidDimensionError,
    InvalidRadiusError,
    InvalidSettingsError,
    UnsupportedParameterError,
)


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Alice's and Bob's k Bloch directions, stored as read-only (k, 3) arrays."""

    alice: np.ndarray
    bob: np.ndarray

    def __post_init__(self):
        alice = unit_vectors(self.alice, "alice")
        bob = unit_vectors(self.bob, "bob")
        if alice.shape != bob.shape:
            raise InvalidSettingsError(f"alice has {len(alice)} settings but bob has {len(bob)}")
        if len(alice) < 2:
            raise InvalidSettingsError("need at least 2 settings per party")
        object.__setattr__(self, "alice", alice)
        object.__setattr__(self, "bob", bob)

    @property
    def k(self):
        return self.alice.shape[0]

    def to_dict(self):
        return {"alice": self.alice.tolist(), "bob": self.bob.tolist()}


def gchsh_settings(k):
    """Planar xz-settings maximizing the chained inequality.

    Alice's x-th vector sits at angle (x-1)pi/k and Bob's y-th at
    (2y-1)pi/(2k), measured from the z axis.
    """
    if k < 2:
        raise InvalidDimensionError(f"gCHSH settings need k >= 2, got {k}")
    idx = np.arange(1, k + 1)
    a = (idx - 1) * np.pi / k
    b = (2 * idx - 1) * np.pi / (2 * k)
    zeros = np.zeros(k)
    alice = np.column_stack([np.sin(a), zeros, np.cos(a)])
    bob = np.column_stack([np.sin(b), zeros, np.cos(b)])
    return MeasurementSettings(alice, bob)


def circle_points(radius, count, start_angle, step=None):
    """Unit vectors whose xy-projection lies on a circle of the given radius.

    Point r (0-based) is the start point rotated counterclockwise by
    r * step (default 2 pi / count); every point is lifted to the upper
    hemisphere, z = +sqrt(1 - radius^2).
    """
    if not 0.0 < radius < 1.0:
        raise InvalidRadiusError(f"radius must lie in (0, 1), got {radius}")
    if count < 1:
        raise InvalidDimensionError(f"count must be positive, got {count}")
    if step is None:
        step = 2.0 * np.pi / count
    angles = start_angle + step * np.arange(count)
    z = np.sqrt(1.0 - radius * radius)
    return np.column_stack([radius * np.cos(angles), radius * np.sin(angles), np.full(count, z)])


def vertesi_primary_vectors(ntilde):
    if ntilde == 2:
        vecs = [(1.0, 0.0, 0.0), (0.5, np.sqrt(3) / 2, 0.0)]
    elif ntilde == 3:
        r6, r3 = np.sqrt(6) / 3, np.sqrt(3)
        vecs = [(0.0, r6, r3 / 3), (0.5, r6, -r3 / 6), (-0.5, r6, -r3 / 6)]
    elif ntilde == 30:
        # start points (0, rho) of the outer circles are at planar angle pi/2
        vecs = np.vstack(
            [
                circle_points(0.22, 4, np.pi / 4, np.pi / 2),
                circle_points(0.52, 10, np.pi / 2, np.pi / 5),
                circle_points(0.77, 16, np.pi / 2, np.pi / 8),
            ]
        )
    else:
        raise UnsupportedParameterError(f"Vertesi vectors are defined for ntilde in {{2, 3, 30}}, got {ntilde}")
    return unit_vectors(vecs, "primary vectors")


def complete_vertesi_settings(primary):
    """Append the normalized difference directions (v^s - v^t)/|v^s - v^t|.

    Differences follow the flat pair order; Bob uses the same list as Alice.
    """
    primary = unit_vectors(primary, "primary vectors")
    ntilde = len(primary)
    if ntilde < 2:
        raise InvalidDimensionError("need at least two primary vectors")
    extra = []
    for pair in vertesi_pairs(ntilde):
        d = primary[pair.s - 1] - primary[pair.t - 1]
        norm = np.linalg.norm(d)
        if norm < 1e-12:
            raise DegenerateDifferenceError(f"primary vectors {pair.s} and {pair.t} coincide")
        extra.append(d / norm)
    full = np.vstack([primary, np.array(extra)])
    return MeasurementSettings(full, full)


def vertesi_settings(ntilde):
    return complete_vertesi_settings(vertesi_primary_vectors(ntilde))
