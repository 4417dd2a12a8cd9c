"""Touchstone v1 (.s2p) reading/writing plus the toolkit's CSV formats.

Only two-port S-parameter files are handled: `!` starts a comment, one
`#` option line gives unit / parameter / format / reference impedance,
and each data row holds 9 numbers (f, then S11 S21 S12 S22 pairs).
Angles are degrees in files and radians internally. All parse errors
carry a 1-based line number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .txline import DB_FLOOR, FrequencyGrid, MaterialModel, TwoPortResponse, magnitude_db

UNIT_TO_HZ = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
FORMATS = ("ri", "ma", "db")

MATERIAL_CSV_HEADER = "f_hz,eps_rel,mu_rel,alpha_np_per_m"
RESPONSE_CSV_HEADER = "freq_hz,s11_re,s11_im,s21_re,s21_im,s11_db,s21_db"


@dataclass
class RawTwoPort:
    """All four S-parameters as read from a file, frequencies in Hz."""

    grid: FrequencyGrid
    s11: np.ndarray
    s21: np.ndarray
    s12: np.ndarray
    s22: np.ndarray
    z0_ohm: float = 50.0

    def __post_init__(self) -> None:
        n = len(self.grid)
        for name in ("s11", "s21", "s12", "s22"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            setattr(self, name, arr)
            if arr.shape != (n,):
                raise ValueError(f"{name} length must equal the grid length")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _pair_to_complex(fmt: str, a: float, b: float) -> complex:
    if fmt == "ri":
        return complex(a, b)
    if fmt == "ma":
        mag = a
    else:  # db
        mag = 10.0 ** (a / 20.0)
    phase = math.radians(b)
    return mag * complex(math.cos(phase), math.sin(phase))


def _complex_to_pair(fmt: str, s: complex) -> tuple[float, float]:
    if fmt == "ri":
        return s.real, s.imag
    mag = abs(s)
    ang = math.degrees(math.atan2(s.imag, s.real)) if mag > 0.0 else 0.0
    if fmt == "ma":
        return mag, ang
    return (20.0 * math.log10(mag) if mag > 0.0 else DB_FLOOR), ang


def _parse_option_line(line: str, line_no: int) -> tuple[str, str, float]:
    unit = "ghz"
    fmt = "ma"
    z0 = 50.0
    tokens = line[1:].split()
    i = 0
    while i < len(tokens):
        tok = tokens[i].lower()
        if tok in UNIT_TO_HZ:
            unit = tok
        elif tok in FORMATS:
            fmt = tok
        elif tok in ("y", "z", "g", "h"):
            raise ParseError(line_no, f"unsupported parameter '{tokens[i]}'; only S is accepted")
        elif tok == "s":
            pass
        elif tok == "r":
            if i + 1 >= len(tokens):
                raise ParseError(line_no, "option 'R' is missing its impedance value")
            try:
                z0 = float(tokens[i + 1])
            except ValueError:
                raise ParseError(line_no, f"unparseable reference impedance {tokens[i + 1]!r}")
            if not math.isfinite(z0) or z0 <= 0.0:
                raise ParseError(line_no, f"reference impedance must be positive, got {z0!r}")
            i += 1
        else:
            raise ParseError(line_no, f"unrecognized option token {tokens[i]!r}")
        i += 1
    return unit, fmt, z0


def parse_s2p(text: str) -> RawTwoPort:
    """Parse Touchstone v1 two-port text into a RawTwoPort in Hz/RI form."""
    option: tuple[str, str, float] | None = None
    freqs: list[float] = []
    rows: list[list[complex]] = []
    last_line = 0

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw_line.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            if option is not None:
                raise ParseError(line_no, "duplicate option line")
            option = _parse_option_line(line, line_no)
            continue
        if option is None:
            raise ParseError(line_no, "data encountered before the option line")

        unit, fmt, _ = option
        tokens = line.split()
        if len(tokens) != 9:
            raise ParseError(
                line_no, f"expected 9 numbers on a two-port data line, got {len(tokens)}"
            )
        values: list[float] = []
        for tok in tokens:
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(line_no, f"unparseable number {tok!r}")
            if not math.isfinite(v):
                raise ParseError(line_no, f"non-finite number {tok!r}")
            values.append(v)

        f_hz = values[0] * UNIT_TO_HZ[unit]
        if f_hz <= 0.0:
            raise ParseError(line_no, f"frequency must be > 0, got {values[0]!r}")
        if freqs and f_hz <= freqs[-1]:
            raise ParseError(line_no, "frequencies must be strictly increasing")
        freqs.append(f_hz)
        rows.append(
            [_pair_to_complex(fmt, values[k], values[k + 1]) for k in (1, 3, 5, 7)]
        )

    if option is None:
        raise ParseError(last_line + 1, "no option line found")

    data = np.array(rows, dtype=complex).reshape(len(rows), 4)
    return RawTwoPort(
        grid=FrequencyGrid(np.array(freqs)),
        s11=data[:, 0],
        s21=data[:, 1],
        s12=data[:, 2],
        s22=data[:, 3],
        z0_ohm=option[2],
    )


def write_s2p(raw: RawTwoPort, unit: str = "ghz", fmt: str = "ri") -> str:
    """Serialize a RawTwoPort as Touchstone v1 text (12 significant digits)."""
    unit = unit.lower()
    fmt = fmt.lower()
    if unit not in UNIT_TO_HZ:
        raise ValueError(f"unit must be one of {sorted(UNIT_TO_HZ)}, got {unit!r}")
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")

    lines = [
        "! coaxfilt two-port export",
        f"# {unit.upper()} S {fmt.upper()} R {_fmt(raw.z0_ohm)}",
    ]
    scale = UNIT_TO_HZ[unit]
    for i, f_hz in enumerate(raw.grid.points_hz):
        fields = [_fmt(f_hz / scale)]
        for s in (raw.s11[i], raw.s21[i], raw.s12[i], raw.s22[i]):
            a, b = _complex_to_pair(fmt, complex(s))
            fields.append(_fmt(a))
            fields.append(_fmt(b))
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def symmetrize(raw: RawTwoPort) -> tuple[TwoPortResponse, float]:
    """Average the reciprocal/symmetric pairs and report the worst asymmetry.

    Returns ((S11+S22)/2, (S21+S12)/2) as a TwoPortResponse plus
    max over the grid of max(|S11-S22|, |S21-S12|).
    """
    s11 = (raw.s11 + raw.s22) / 2.0
    s21 = (raw.s21 + raw.s12) / 2.0
    if len(raw.grid):
        asym = float(
            max(np.max(np.abs(raw.s11 - raw.s22)), np.max(np.abs(raw.s21 - raw.s12)))
        )
    else:
        asym = 0.0
    return TwoPortResponse(grid=raw.grid, s11=s11, s21=s21, z0_ohm=raw.z0_ohm), asym


def raw_from_response(resp: TwoPortResponse) -> RawTwoPort:
    """Expand a symmetric response to the four-parameter file form."""
    return RawTwoPort(
        grid=resp.grid,
        s11=resp.s11.copy(),
        s21=resp.s21.copy(),
        s12=resp.s21.copy(),
        s22=resp.s11.copy(),
        z0_ohm=resp.z0_ohm,
    )


def export_csv(resp: TwoPortResponse) -> str:
    """Plot-ready CSV of a response (dB columns use the -300 floor sentinel)."""
    lines = [RESPONSE_CSV_HEADER]
    for i, f_hz in enumerate(resp.grid.points_hz):
        s11 = complex(resp.s11[i])
        s21 = complex(resp.s21[i])
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    f_hz,
                    s11.real,
                    s11.imag,
                    s21.real,
                    s21.imag,
                    magnitude_db(s11),
                    magnitude_db(s21),
                )
            )
        )
    return "\n".join(lines) + "\n"


def response_from_csv(text: str, z0_ohm: float = 50.0) -> TwoPortResponse:
    """Read a response CSV written by export_csv back into a TwoPortResponse."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(1, "empty response CSV")
    if lines[0].strip() != RESPONSE_CSV_HEADER:
        raise ParseError(1, f"expected header {RESPONSE_CSV_HEADER!r}")
    freqs: list[float] = []
    s11: list[complex] = []
    s21: list[complex] = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 7:
            raise ParseError(line_no, f"expected 7 columns, got {len(fields)}")
        try:
            vals = [float(v) for v in fields]
        except ValueError:
            raise ParseError(line_no, "unparseable number in response CSV")
        freqs.append(vals[0])
        s11.append(complex(vals[1], vals[2]))
        s21.append(complex(vals[3], vals[4]))
    try:
        grid = FrequencyGrid(np.array(freqs))
    except ValueError as err:
        raise ParseError(len(lines), str(err))
    return TwoPortResponse(grid=grid, s11=np.array(s11), s21=np.array(s21), z0_ohm=z0_ohm)


def material_to_csv(mat: MaterialModel) -> str:
    lines = [MATERIAL_CSV_HEADER]
    for s in mat.samples:
        lines.append(
            ",".join(_fmt(v) for v in (s.f_hz, s.eps_rel, s.mu_rel, s.alpha_np_per_m))
        )
    return "\n".join(lines) + "\n"


def material_from_csv(text: str) -> MaterialModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(1, "empty material CSV")
    if lines[0].strip() != MATERIAL_CSV_HEADER:
        raise ParseError(1, f"expected header {MATERIAL_CSV_HEADER!r}")
    rows: list[tuple[float, float, float, float]] = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 columns, got {len(fields)}")
        try:
            f, eps, mu, alpha = (float(v) for v in fields)
        except ValueError:
            raise ParseError(line_no, "unparseable number in material CSV")
        rows.append((f, eps, mu, alpha))
    try:
        return MaterialModel.from_arrays(
            [r[0] for r in rows],
            [r[1] for r in rows],
            [r[2] for r in rows],
            [r[3] for r in rows],
        )
    except ValueError as err:
        raise ParseError(len(lines), str(err))
