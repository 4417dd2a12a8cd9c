#!/usr/bin/env python3
"""Regenerate the committed test fixtures and golden CLI outputs.

Everything here is deterministic; rerunning must reproduce the committed
bytes exactly. Run from the repository root:

    python scripts/make_fixtures.py
"""

import io
import json
import os
import shutil
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

import numpy as np

import coaxfilt as cf
from coaxfilt.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"

INNER_D = 0.0051
LENGTH_42 = 0.042
LENGTH_36 = 0.036
SLOPE_DB_PER_GHZ = 1.0


def reference_material() -> cf.MaterialModel:
    a1 = SLOPE_DB_PER_GHZ / (cf.NP_TO_DB * 1e9 * LENGTH_42)
    return cf.MaterialModel.from_arrays(
        [1e7, 2e10], [4.2, 4.2], [1.0, 1.0], [a1 * 1e7, a1 * 2e10]
    )


def matched_geometry(length_m: float, mat: cf.MaterialModel) -> cf.CoaxGeometry:
    ratio = cf.solve_diameter_ratio(50.0, mat, 1e9)
    return cf.CoaxGeometry(length_m, INNER_D, INNER_D * ratio)


def run_cli(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    GOLDEN.mkdir(parents=True, exist_ok=True)

    mat = reference_material()
    g42 = matched_geometry(LENGTH_42, mat)
    g36 = matched_geometry(LENGTH_36, mat)

    # --- fixtures -----------------------------------------------------
    design = {
        "geometry": {
            "length_m": LENGTH_42,
            "inner_d_m": g42.inner_d_m,
            "outer_d_m": g42.outer_d_m,
        },
        "material": {
            "samples": [
                {
                    "f_hz": s.f_hz,
                    "eps_rel": s.eps_rel,
                    "mu_rel": s.mu_rel,
                    "alpha_np_per_m": s.alpha_np_per_m,
                }
                for s in mat.samples
            ]
        },
        "z0_ohm": 50.0,
        "grid": {"f_start_hz": 1e9, "f_stop_hz": 2e10, "n_points": 21, "spacing": "linear"},
        "targets": {
            "reflection_ceiling_db": -20.0,
            "band_max_hz": 2e10,
            "slope_target_db_per_ghz": 1.0,
            "slope_tolerance_rel": 0.1,
        },
    }
    (FIXTURES / "design_42mm.json").write_text(json.dumps(design, indent=2) + "\n")
    (FIXTURES / "material_ref.csv").write_text(cf.material_to_csv(mat))

    meas_grid = cf.FrequencyGrid.linear(1e8, 2e10, 201)
    for geom, name in ((g42, "meas_42mm.s2p"), (g36, "meas_36mm.s2p")):
        resp = cf.s_params_model(geom, mat, meas_grid, 50.0)
        (FIXTURES / name).write_text(cf.write_s2p(cf.raw_from_response(resp)))

    # gain-like corrupted file: every point violates passivity
    corrupt_grid = cf.FrequencyGrid.linear(1e9, 2e9, 11)
    corrupt = cf.RawTwoPort(
        grid=corrupt_grid,
        s11=np.full(11, 0.001 + 0.0j),
        s21=np.full(11, 1.2 + 0.0j),
        s12=np.full(11, 1.2 + 0.0j),
        s22=np.full(11, 0.001 + 0.0j),
    )
    (FIXTURES / "corrupt_nonpassive.s2p").write_text(cf.write_s2p(corrupt))

    # mismatched lossless 65 Ohm line; fails the -20 dB ceiling
    mis_mat = cf.MaterialModel.constant(4.0, 1.0, 0.0)
    mis_ratio = cf.solve_diameter_ratio(65.0, mis_mat, 1e9)
    mis_geom = cf.CoaxGeometry(LENGTH_42, 0.001, 0.001 * mis_ratio)
    mis_resp = cf.s_params_model(mis_geom, mis_mat, meas_grid, 50.0)
    (FIXTURES / "mismatch_65ohm.csv").write_text(cf.export_csv(mis_resp))

    # --- golden CLI outputs -------------------------------------------
    # Commands run from a scratch directory with bare output names so the
    # echoed "wrote <path>" lines stay location-independent.
    with tempfile.TemporaryDirectory() as tmp:
        old_cwd = Path.cwd()
        os.chdir(tmp)
        try:
            def golden(cmd: list[str], stdout_name: str | None, outputs: list[str]):
                code, out = run_cli(cmd)
                assert code == 0, (cmd, code, out)
                if stdout_name:
                    (GOLDEN / stdout_name).write_text(out)
                for name in outputs:
                    shutil.copyfile(Path(tmp) / name, GOLDEN / name)

            golden(
                ["model", str(FIXTURES / "design_42mm.json"), "--out", "model_42mm.csv"],
                "model_stdout.txt",
                ["model_42mm.csv"],
            )
            golden(
                ["model", str(FIXTURES / "design_42mm.json"), "--out", "model_42mm.s2p"],
                None,
                ["model_42mm.s2p"],
            )
            golden(
                [
                    "extract", str(FIXTURES / "meas_42mm.s2p"),
                    "--length", "0.042",
                    "--inner-d", str(g42.inner_d_m), "--outer-d", str(g42.outer_d_m),
                    "--out", "extract_material.csv",
                ],
                "extract_stdout.txt",
                ["extract_material.csv"],
            )
            golden(
                [
                    "predict", str(FIXTURES / "material_ref.csv"),
                    "--length", "0.036",
                    "--inner-d", str(g36.inner_d_m), "--outer-d", str(g36.outer_d_m),
                    "--grid", "1e9:2e10:21",
                    "--out", "predict_36mm.csv",
                ],
                "predict_stdout.txt",
                ["predict_36mm.csv"],
            )
            golden(
                [
                    "synth", str(FIXTURES / "material_ref.csv"),
                    "--target-z", "50", "--slope-db-per-ghz", "1.0", "--f-ref", "1e9",
                ],
                "synth_stdout.txt",
                [],
            )
            golden(["check", str(GOLDEN / "model_42mm.csv")], "check_stdout_pass.txt", [])
            golden(
                ["convert", str(GOLDEN / "model_42mm.s2p"), "convert_ma_mhz.s2p",
                 "--to", "ma", "--unit", "mhz"],
                "convert_stdout.txt",
                ["convert_ma_mhz.s2p"],
            )

            code, out = run_cli(["check", str(FIXTURES / "mismatch_65ohm.csv")])
            assert code == 6, (code, out)
            (GOLDEN / "check_stdout_fail.txt").write_text(out)
        finally:
            os.chdir(old_cwd)

    print(f"fixtures in {FIXTURES}")
    print(f"golden outputs in {GOLDEN}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
