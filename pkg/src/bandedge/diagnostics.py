"""Shape measurements on sampled traces (extrema, envelopes, settling)."""

from __future__ import annotations

import numpy as np


def local_maxima(y) -> np.ndarray:
    """Indices of strict interior local maxima of a sampled curve."""
    y = np.asarray(y, dtype=float)
    return np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])) + 1


def turning_points(y) -> np.ndarray:
    """Indices where the discrete slope changes sign (flat steps skipped)."""
    y = np.asarray(y, dtype=float)
    slope = np.sign(np.diff(y))
    idx = np.flatnonzero(slope != 0)
    flips = idx[1:][slope[idx[1:]] != slope[idx[:-1]]]
    return flips


def envelope(t, y, center: float, width: float = 10.0) -> float:
    """``max |y|`` over ``[center - width/2, center + width/2]``."""
    t = np.asarray(t)
    window = (t >= center - width / 2) & (t <= center + width / 2)
    if not window.any():
        raise ValueError(f"no samples within {width} of t={center}")
    return float(np.max(np.abs(np.asarray(y)[window])))


def settle_time(t, y) -> float:
    """Time of the last turning point of ``y``; after it the approach is monotone.

    All band-edge traces end on the same slowly decaying ``t**-0.5`` tail, so
    a threshold relative to the peak does not separate the regimes; the
    end of the oscillatory transient does.
    """
    tp = turning_points(y)
    return float(np.asarray(t)[tp[-1]]) if len(tp) else 0.0


def has_gain(neg_im_chi, rel_tol: float = 1e-6) -> bool:
    """True when ``-Im chi`` dips below ``-rel_tol * max(-Im chi)``."""
    y = np.asarray(neg_im_chi)
    return bool(y.min() < -rel_tol * max(y.max(), 0.0))
