"""Material recovery from measured two-port data, and cross-length prediction.

The symmetric-line response is reparameterized per frequency into an
interface reflection Gamma and a propagation factor P = exp(-gamma*l).
Gamma yields the characteristic impedance, P (after phase unwrapping
across the grid) yields the complex propagation constant, and the two
together separate eps and mu. The recovered table then predicts filters
of any other length built from the same compound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C0, ETA0
from .errors import (
    BranchAmbiguityError,
    ExtractionError,
    NonPassiveDataError,
    OpenCircuitError,
    SingularInversionError,
    UnphysicalPointError,
)
from .txline import (
    CoaxGeometry,
    FrequencyGrid,
    MaterialModel,
    MaterialSample,
    TwoPortResponse,
    s_params_model,
)

# |S11| below this is treated as a perfectly matched point (Gamma = 0).
_MATCHED_S11 = 1e-8

# Recovered Re(gamma) in (-_ALPHA_CLAMP, 0) is rounded up to 0; anything
# more negative is flagged as non-passive.
_ALPHA_CLAMP = 1e-9

_P_PASSIVE_TOL = 1e-9
_GAMMA_ROUNDING_TOL = 1e-6


@dataclass(frozen=True)
class ExtractionPoint:
    """Per-frequency inversion intermediates."""

    f_hz: float
    gamma_refl: complex
    prop_factor: complex
    gamma: complex
    z_ohm: complex
    branch_index: int


@dataclass
class ExtractionReport:
    """Result of inverting one measured response.

    points holds every frequency that survived point inversion, flagged
    or not; flags maps grid indices of unusable points to a short reason;
    material is built from the unflagged points only.
    """

    points: list[ExtractionPoint]
    material: MaterialModel
    asymmetry_max: float
    flags: dict[int, str] = field(default_factory=dict)


def invert_point(s11: complex, s21: complex) -> tuple[complex, complex]:
    """Split one (S11, S21) pair into (Gamma, P).

    Uses K = (S11^2 - S21^2 + 1) / (2*S11) and picks the reflection root
    with |Gamma| <= 1. The two roots are exact reciprocals, so the large
    one is computed cancellation-free and the small one as its inverse.
    Matched points (|S11| < 1e-8) short-circuit to Gamma = 0, P = S21.
    """
    s11 = complex(s11)
    s21 = complex(s21)
    if not all(map(math.isfinite, (s11.real, s11.imag, s21.real, s21.imag))):
        raise NonPassiveDataError("non-finite S-parameters")

    if abs(s11) < _MATCHED_S11:
        return 0.0 + 0.0j, s21

    k = (s11 * s11 - s21 * s21 + 1.0) / (2.0 * s11)
    root = cmath.sqrt(k * k - 1.0)
    big = k + root if abs(k + root) >= abs(k - root) else k - root
    if big == 0.0:
        raise NonPassiveDataError("degenerate reflection roots")
    small = 1.0 / big
    gamma_refl = small if abs(small) <= abs(big) else big
    mag = abs(gamma_refl)
    if mag > 1.0 + _GAMMA_ROUNDING_TOL:
        raise NonPassiveDataError(f"both reflection roots outside unit disk (|G|={mag:.6g})")
    if mag > 1.0:
        gamma_refl /= mag  # rounding guard only; keeps |Gamma| <= 1

    v = s11 + s21
    den = 1.0 - v * gamma_refl
    if abs(den) < 1e-12:
        raise SingularInversionError("1 - (S11+S21)*Gamma vanished; point not invertible")
    prop_factor = (v - gamma_refl) / den
    return gamma_refl, prop_factor


def unwrap_gamma(
    points: list[tuple[float, complex]], length_m: float
) -> tuple[list[complex], list[int]]:
    """Recover gamma per point from ordered (f_hz, P) pairs.

    gamma = -(ln|P| + i*unwrapped_arg(P)) / l, with the first point's
    phase taken as its principal value in (-pi, pi] and later points kept
    continuous. Returns the gammas and the 2*pi winding count applied at
    each point. Tiny negative real parts from rounding are clamped to 0;
    larger ones are returned as-is for the caller to flag.
    """
    if length_m <= 0.0:
        raise ValueError("length_m must be > 0 for unwrapping")
    if not points:
        return [], []
    f = np.array([p[0] for p in points], dtype=float)
    p = np.array([p[1] for p in points], dtype=complex)
    if np.any(p == 0.0):
        raise ValueError("zero propagation factor; attenuation is unbounded at that point")

    phase = np.angle(p)
    if len(points) > 1:
        steps = np.diff(phase)
        wrapped = np.mod(steps + np.pi, 2.0 * np.pi) - np.pi
        bad = np.abs(wrapped) >= np.pi - 1e-12
        if np.any(bad):
            i = int(np.argmax(bad))
            raise BranchAmbiguityError(float(f[i]), float(f[i + 1]))
        unwrapped = np.concatenate(([phase[0]], phase[0] + np.cumsum(wrapped)))
    else:
        unwrapped = phase

    branch = np.rint((unwrapped - phase) / (2.0 * np.pi)).astype(int)
    re = -np.log(np.abs(p)) / length_m
    re = np.where((re > -_ALPHA_CLAMP) & (re < 0.0), 0.0, re)
    im = -unwrapped / length_m
    gammas = re + 1j * im
    return [complex(g) for g in gammas], [int(b) for b in branch]


def impedance_from_reflection(gamma_refl: complex, z0_ohm: float) -> complex:
    """Bilinear map Z = z0 * (1 + Gamma) / (1 - Gamma)."""
    den = 1.0 - gamma_refl
    if abs(den) < 1e-12:
        raise OpenCircuitError("Gamma at +1; impedance is an open circuit")
    return z0_ohm * (1.0 + gamma_refl) / den


def material_from_point(
    gamma: complex, z_ohm: float, geom: CoaxGeometry, f_hz: float
) -> MaterialSample:
    """Invert (gamma, Z) at one frequency into a MaterialSample.

    n = Im(gamma)*c/(2*pi*f) recovers sqrt(eps*mu); w from the coaxial
    impedance formula recovers sqrt(mu/eps); their product and ratio
    separate mu and eps. alpha is Re(gamma) directly.
    """
    n = gamma.imag * C0 / (2.0 * np.pi * f_hz)
    w = 2.0 * np.pi * z_ohm / (ETA0 * geom.log_diameter_ratio)
    if n <= 0.0 or w <= 0.0:
        raise UnphysicalPointError(
            f"sqrt(eps*mu)={n:.6g}, sqrt(mu/eps)={w:.6g}; not a physical material"
        )
    mu = n * w
    eps = n / w
    if eps < 1.0:
        if eps < 1.0 - 1e-9:
            raise UnphysicalPointError(f"recovered eps_rel={eps:.12g} below 1")
        eps = 1.0  # rounding guard for exactly-vacuum data
    return MaterialSample(f_hz=f_hz, eps_rel=eps, mu_rel=mu, alpha_np_per_m=gamma.real)


def moving_median(values: np.ndarray, window: int) -> np.ndarray:
    """Odd-window moving median; windows are shifted, not shrunk, at edges."""
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be a positive odd integer")
    a = np.asarray(values, dtype=float)
    n = a.size
    if window == 1 or n == 0:
        return a.copy()
    w = min(window, n if n % 2 == 1 else n - 1)
    h = w // 2
    out = np.empty_like(a)
    for i in range(n):
        lo = min(max(i - h, 0), n - w)
        out[i] = np.median(a[lo : lo + w])
    return out


def extract_material(
    measured: TwoPortResponse,
    geom: CoaxGeometry,
    smooth_window: int = 1,
    asymmetry_max: float = 0.0,
) -> ExtractionReport:
    """Invert a measured symmetric response into a MaterialModel.

    Runs invert_point per frequency, unwraps the propagation factor
    across the grid, and converts each surviving point to a material
    sample. Points that fail any stage are flagged and excluded from the
    material table; more than 50% flagged raises ExtractionError.
    smooth_window (odd, 1 = off) applies a moving median to the
    recovered eps, mu and alpha columns.
    """
    if geom.length_m <= 0.0:
        raise ValueError("geometry length must be > 0 for extraction")
    if smooth_window < 1 or smooth_window % 2 == 0:
        raise ValueError("smooth_window must be a positive odd integer")

    f = measured.grid.points_hz
    n = len(measured.grid)
    flags: dict[int, str] = {}
    inverted: dict[int, tuple[complex, complex]] = {}

    for i in range(n):
        try:
            g, p = invert_point(measured.s11[i], measured.s21[i])
        except NonPassiveDataError:
            flags[i] = "passivity-violation"
            continue
        except SingularInversionError:
            flags[i] = "near-singular-inversion"
            continue
        if abs(p) > 1.0 + _P_PASSIVE_TOL:
            flags[i] = "passivity-violation"
            continue
        if abs(p) == 0.0:
            flags[i] = "zero-transmission"
            continue
        inverted[i] = (g, p)

    def too_many_flagged() -> bool:
        return len(flags) > n / 2.0

    # Unwrapping is sequential; an ambiguous interval invalidates its
    # right-hand point, which is dropped before retrying.
    active = sorted(inverted)
    while True:
        if too_many_flagged() or not active:
            raise ExtractionError(
                f"{len(flags)} of {n} points unusable: "
                + _summarize_flags(flags),
                flags=flags,
            )
        try:
            gammas, branches = unwrap_gamma(
                [(float(f[i]), inverted[i][1]) for i in active], geom.length_m
            )
            break
        except BranchAmbiguityError as err:
            victim = next(i for i in active if float(f[i]) == err.f_hi)
            flags[victim] = "branch-ambiguity"
            active.remove(victim)

    points: list[ExtractionPoint] = []
    samples: list[tuple[int, MaterialSample]] = []
    for i, gamma, branch in zip(active, gammas, branches):
        g_refl, p = inverted[i]
        try:
            z = impedance_from_reflection(g_refl, measured.z0_ohm)
        except OpenCircuitError:
            flags[i] = "open-circuit"
            continue
        points.append(
            ExtractionPoint(
                f_hz=float(f[i]),
                gamma_refl=g_refl,
                prop_factor=p,
                gamma=gamma,
                z_ohm=z,
                branch_index=branch,
            )
        )
        if gamma.real < 0.0:
            flags[i] = "negative-alpha"
            continue
        try:
            samples.append((i, material_from_point(gamma, z.real, geom, float(f[i]))))
        except UnphysicalPointError:
            flags[i] = "unphysical-material"

    if too_many_flagged() or not samples:
        raise ExtractionError(
            f"{len(flags)} of {n} points unusable: " + _summarize_flags(flags),
            flags=flags,
        )

    # An odd-window median always returns one of the input values, so the
    # smoothed columns cannot leave the valid sample domain.
    fs = np.array([s.f_hz for _, s in samples])
    eps = moving_median(np.array([s.eps_rel for _, s in samples]), smooth_window)
    mu = moving_median(np.array([s.mu_rel for _, s in samples]), smooth_window)
    alpha = moving_median(np.array([s.alpha_np_per_m for _, s in samples]), smooth_window)
    material = MaterialModel.from_arrays(fs, eps, mu, alpha)

    return ExtractionReport(
        points=points,
        material=material,
        asymmetry_max=asymmetry_max,
        flags=flags,
    )


def predict(
    material: MaterialModel,
    new_geom: CoaxGeometry,
    grid: FrequencyGrid,
    z0_ohm: float = 50.0,
) -> TwoPortResponse:
    """Model a filter of another geometry from an extracted material."""
    return s_params_model(new_geom, material, grid, z0_ohm)


def _summarize_flags(flags: dict[int, str]) -> str:
    by_reason: dict[str, int] = {}
    for reason in flags.values():
        by_reason[reason] = by_reason.get(reason, 0) + 1
    parts = [f"{reason} x{count}" for reason, count in sorted(by_reason.items())]
    return ", ".join(parts) if parts else "none"
