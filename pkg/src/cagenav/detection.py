"""IMU-based collision detection.

Streams body-frame accelerometer samples, flags threshold crossings on any
axis (with gravity removed from the z comparison), and picks the strongest
sample out of a fixed-size window following the first crossing so that one
physical impact yields exactly one detection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from cagenav.geometry import GRAVITY, Rotation, gravity_in_body


class StreamOrderError(ValueError):
    """Raised when IMU samples arrive with non-increasing timestamps."""


@dataclass(frozen=True)
class ImuSample:
    """One accelerometer sample.

    ``accel`` uses the specific-force convention: a level hover reads
    (0, 0, +g).  ``attitude`` is the world->body rotation at sample time.
    """

    t: float
    accel: np.ndarray
    attitude: Rotation = field(default_factory=Rotation.identity)

    def __post_init__(self):
        a = np.asarray(self.accel, dtype=float)
        if a.shape != (3,) or not np.all(np.isfinite(a)):
            raise ValueError("accel must be a finite 3-vector")
        object.__setattr__(self, "accel", a)


@dataclass(frozen=True)
class DetectorConfig:
    a_star: float = 10.0     # m/s^2 trigger threshold per axis
    window_n: int = 10       # samples inspected after the trigger
    g: float = GRAVITY
    cooldown: float = 0.5    # s of trigger suppression after an emission

    def __post_init__(self):
        if self.a_star <= 0 or self.window_n < 1 or self.g <= 0 or self.cooldown < 0:
            raise ValueError("invalid detector configuration")


@dataclass(frozen=True)
class DetectionCandidate:
    """Peak sample chosen to represent one collision."""

    peak_sample: ImuSample
    trigger_t: float


def compensated_accel(sample: ImuSample, g: float = GRAVITY) -> np.ndarray:
    """Measured specific force with the body-frame gravity vector removed."""
    return sample.accel - gravity_in_body(sample.attitude, g)


def exceeds_threshold(sample: ImuSample, cfg: DetectorConfig) -> bool:
    """True when any axis crosses a*; z is compared after gravity removal."""
    gz = gravity_in_body(sample.attitude, cfg.g)[2]
    ax, ay, az = sample.accel
    return (
        abs(ax) > cfg.a_star
        or abs(ay) > cfg.a_star
        or abs(az - gz) > cfg.a_star
    )


class CollisionDetector:
    """Single-stream sliding-window peak detector.

    Feed samples in time order; at most one candidate is emitted per
    window + cooldown span.  The peak metric is the norm of the fully
    gravity-compensated acceleration, so it is attitude-consistent and
    feeds the intensity estimate directly.
    """

    def __init__(self, cfg: DetectorConfig | None = None):
        self.cfg = cfg or DetectorConfig()
        self._last_t: float | None = None
        self._window: list[ImuSample] | None = None
        self._trigger_t: float | None = None
        self._suppress_until = -np.inf

    def reset(self) -> None:
        self._last_t = None
        self._window = None
        self._trigger_t = None
        self._suppress_until = -np.inf

    def feed(self, sample: ImuSample) -> DetectionCandidate | None:
        if self._last_t is not None and sample.t <= self._last_t:
            raise StreamOrderError(
                f"sample at t={sample.t} not after previous t={self._last_t}"
            )
        self._last_t = sample.t

        if self._window is not None:
            self._window.append(sample)
            # trigger sample + window_n followers
            if len(self._window) >= self.cfg.window_n + 1:
                return self._emit(sample.t)
            return None

        if sample.t < self._suppress_until:
            return None
        if exceeds_threshold(sample, self.cfg):
            self._window = [sample]
            self._trigger_t = sample.t
        return None

    def _emit(self, now: float) -> DetectionCandidate:
        window = self._window
        assert window is not None and self._trigger_t is not None
        mags = [float(np.linalg.norm(compensated_accel(s, self.cfg.g))) for s in window]
        peak = window[int(np.argmax(mags))]  # argmax keeps the earliest tie
        candidate = DetectionCandidate(peak_sample=peak, trigger_t=self._trigger_t)
        self._window = None
        self._trigger_t = None
        self._suppress_until = now + self.cfg.cooldown
        return candidate
