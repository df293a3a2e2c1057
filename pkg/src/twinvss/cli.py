"""Command-line entry point: figure-reproduction recipes over one config file.

Subcommands
-----------
joint-spectrum   joint spectral amplitude and its correlation diagnostics
schmidt          Schmidt weights and Bogoliubov gains at the target photons
spectrogram      grouped delay trace and its energy spectrum for one crystal
ensemble         crystal-length ensemble average and recovered level peaks
flux-sweep       delay-integrated groups versus photon number, slopes, crossover

Every run writes data.csv (command-specific columns below), manifest.toml
(config echo, derived quantities, timings), plot.svg, and, for the
spectrogram and ensemble commands, peaks.csv.  CSV numbers use 9-significant-
digit scientific notation, comma delimiters, LF endings, UTF-8.

data.csv columns per command:
  joint-spectrum  nu_s_ev, nu_i_ev, abs_amplitude     (decimated |amplitude|)
  schmidt         mode, lambda, u, v
  spectrogram     energy_ev, magnitude, magnitude_raw
  ensemble        energy_ev, magnitude, magnitude_raw
  flux-sweep      n_s, gain, noise, classical, quantum, noise_plus_classical,
                  slope_quantum, slope_noise_classical, crossover_n_s

Exit codes: 0 success, 2 configuration error, 3 numerical error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, default_config, ensemble_lengths, load_config, to_setup
from .errors import ConfigurationError, NumericalError
from .pipeline import Setup, build_state, total_trace
from .schmidt import photon_number, schmidt_number_uv
from .spectro import detect_peaks, ensemble_average, signal_to_background, spectrogram
from .svgplot import heatmap, line_chart
from .tpa import flux_sweep


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.8e}"
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> None:
    """Write rows with the fixed numeric contract (9 significant digits)."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt_value(v) for v in row) + "\n")


def _toml_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def _write_toml_section(lines: list[str], name: str, data: dict) -> None:
    lines.append(f"[{name}]")
    for key, value in data.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            continue  # arrays of tables handled after scalars
        if isinstance(value, list):
            lines.append(f"{key} = [" + ", ".join(_toml_scalar(v) for v in value) + "]")
        elif isinstance(value, dict):
            continue
        else:
            lines.append(f"{key} = {_toml_scalar(value)}")
    for key, value in data.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            for entry in value:
                lines.append(f"[[{name}.{key}]]")
                for k2, v2 in entry.items():
                    lines.append(f"{k2} = {_toml_scalar(v2)}")
    lines.append("")


def write_manifest(
    path: Path, config: RunConfig, derived: dict, timings: dict
) -> None:
    """Manifest with the full config echo; timings go last so deterministic
    comparisons can strip everything from the [timings] header on."""
    lines: list[str] = [f'artifact_version = "{__version__}"', ""]
    for section, data in config.to_mapping().items():
        _write_toml_section(lines, f"config.{section}", data)
    _write_toml_section(lines, "derived", derived)
    _write_toml_section(lines, "timings", timings)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines))


def _derived_from_state(state) -> dict:
    return {
        "gain": float(state.gains.gain),
        "photon_number_achieved": photon_number(state.gains),
        "schmidt_number_k_uv": (
            schmidt_number_uv(state.gains) if state.gains.gain > 0 else float("nan")
        ),
        "correlation_coefficient": state.correlation,
        "schmidt_rank_retained": int(state.decomposition.rank),
        "amplitude_norm_factor": float(state.amplitude.norm_factor),
    }


def cmd_joint_spectrum(config: RunConfig, setup: Setup, out: Path, threads: int) -> dict:
    t0 = time.perf_counter()
    state = build_state(setup)
    built = time.perf_counter()
    mags = np.abs(state.amplitude.values)
    nu_s = setup.grid_s.detunings()
    nu_i = setup.grid_i.detunings()
    stride = max(1, setup.grid_s.points // 128)
    rows = [
        (float(nu_s[j]), float(nu_i[k]), float(mags[j, k]))
        for j in range(0, len(nu_s), stride)
        for k in range(0, len(nu_i), stride)
    ]
    write_csv(out / "data.csv", ["nu_s_ev", "nu_i_ev", "abs_amplitude"], rows)
    heatmap(
        out / "plot.svg",
        mags[::stride, ::stride].T,
        (float(nu_s[0]), float(nu_s[-1])),
        (float(nu_i[0]), float(nu_i[-1])),
        title="joint spectral amplitude (magnitude)",
        xlabel="signal detuning (eV)",
        ylabel="idler detuning (eV)",
    )
    derived = _derived_from_state(state)
    return {
        "derived": derived,
        "timings": {"build_s": built - t0, "emit_s": time.perf_counter() - built},
    }


def cmd_schmidt(config: RunConfig, setup: Setup, out: Path, threads: int) -> dict:
    t0 = time.perf_counter()
    state = build_state(setup)
    built = time.perf_counter()
    decomp, gains = state.decomposition, state.gains
    rows = [
        (g, float(decomp.lambdas[g]), float(gains.u[g]), float(gains.v[g]))
        for g in range(decomp.rank)
    ]
    write_csv(out / "data.csv", ["mode", "lambda", "u", "v"], rows)
    line_chart(
        out / "plot.svg",
        np.arange(decomp.rank) + 1,
        [("lambda", decomp.lambdas), ("v", gains.v)],
        title="Schmidt spectrum and mode gains",
        xlabel="mode index",
        ylabel="weight",
        logy=True,
    )
    return {
        "derived": _derived_from_state(state),
        "timings": {"build_s": built - t0, "emit_s": time.perf_counter() - built},
    }


def _emit_spectra(out: Path, config: RunConfig, spec, raw_spec) -> list:
    rows = [
        (float(e), float(m), float(r))
        for e, m, r in zip(spec.bin_energies, spec.magnitude, raw_spec.magnitude)
    ]
    write_csv(out / "data.csv", ["energy_ev", "magnitude", "magnitude_raw"], rows)
    peaks = detect_peaks(
        spec,
        min_energy=config.analysis.peak_min_energy_ev,
        rel_threshold=config.analysis.peak_rel_threshold,
    )
    write_csv(
        out / "peaks.csv",
        ["energy_ev", "magnitude"],
        [(p.energy, p.magnitude) for p in peaks],
    )
    line_chart(
        out / "plot.svg",
        spec.bin_energies,
        [("magnitude", spec.magnitude)],
        title="TPA spectrogram",
        xlabel="energy (eV)",
        ylabel="magnitude (arb. units)",
    )
    return peaks


def cmd_spectrogram(config: RunConfig, setup: Setup, out: Path, threads: int) -> dict:
    t0 = time.perf_counter()
    state = build_state(setup)
    trace = total_trace(setup)
    scanned = time.perf_counter()
    spec = spectrogram(
        trace.total,
        trace.delays,
        window=config.analysis.window,
        remove_dc=config.analysis.dc_removal,
    )
    raw_spec = spectrogram(trace.total, trace.delays, "rectangular", False)
    peaks = _emit_spectra(out, config, spec, raw_spec)
    write_csv(
        out / "trace.csv",
        ["delay_fs", "noise", "classical", "quantum", "total"],
        zip(trace.delays, trace.noise, trace.classical, trace.quantum, trace.total),
    )
    derived = _derived_from_state(state)
    derived["detected_peaks"] = len(peaks)
    return {
        "derived": derived,
        "timings": {"scan_s": scanned - t0, "emit_s": time.perf_counter() - scanned},
    }


def cmd_ensemble(config: RunConfig, setup: Setup, out: Path, threads: int) -> dict:
    t0 = time.perf_counter()
    lengths = ensemble_lengths(config)
    result = ensemble_average(
        setup,
        lengths,
        threads=threads,
        window=config.analysis.window,
        remove_dc=config.analysis.dc_removal,
    )
    averaged = time.perf_counter()
    peaks = _emit_spectra(out, config, result.spectrogram, result.raw_spectrogram)
    write_csv(
        out / "trace.csv",
        ["delay_fs", "averaged_total"],
        zip(result.delays, result.averaged_trace),
    )
    ratio = (
        signal_to_background(
            result.spectrogram,
            [p.energy for p in peaks],
            min_energy=config.analysis.peak_min_energy_ev,
        )
        if peaks
        else float("nan")
    )
    derived = {
        "member_count": int(len(lengths)),
        "length_min_m": float(lengths[0]),
        "length_max_m": float(lengths[-1]),
        "detected_peaks": len(peaks),
        "signal_to_background": ratio,
    }
    return {
        "derived": derived,
        "timings": {
            "ensemble_s": averaged - t0,
            "emit_s": time.perf_counter() - averaged,
        },
    }


def cmd_flux_sweep(config: RunConfig, setup: Setup, out: Path, threads: int) -> dict:
    t0 = time.perf_counter()
    state = build_state(setup)
    table = flux_sweep(
        state.decomposition,
        setup.medium,
        config.sweep.photon_numbers,
        n_delays=setup.delay_points,
        t_max=setup.delay_max_fs,
        threads=threads,
    )
    swept = time.perf_counter()
    crossover = table.crossover if table.crossover is not None else float("nan")
    rows = [
        (
            float(table.photon_numbers[i]),
            float(table.gains[i]),
            float(table.noise[i]),
            float(table.classical[i]),
            float(table.quantum[i]),
            float(table.noise[i] + table.classical[i]),
            table.slope_quantum,
            table.slope_noise_classical,
            crossover,
        )
        for i in range(len(table.photon_numbers))
    ]
    write_csv(
        out / "data.csv",
        [
            "n_s",
            "gain",
            "noise",
            "classical",
            "quantum",
            "noise_plus_classical",
            "slope_quantum",
            "slope_noise_classical",
            "crossover_n_s",
        ],
        rows,
    )
    line_chart(
        out / "plot.svg",
        table.photon_numbers,
        [
            ("quantum", table.quantum),
            ("noise+classical", table.noise + table.classical),
        ],
        title="delay-integrated TPA groups vs photon number",
        xlabel="photon number",
        ylabel="integrated signal (arb. units)",
        logx=True,
        logy=True,
    )
    derived = {
        "slope_quantum": table.slope_quantum,
        "slope_noise_classical": table.slope_noise_classical,
        "crossover_n_s": crossover,
        "correlation_coefficient": state.correlation,
    }
    return {
        "derived": derived,
        "timings": {"sweep_s": swept - t0, "emit_s": time.perf_counter() - swept},
    }


_COMMANDS = {
    "joint-spectrum": cmd_joint_spectrum,
    "schmidt": cmd_schmidt,
    "spectrogram": cmd_spectrogram,
    "ensemble": cmd_ensemble,
    "flux-sweep": cmd_flux_sweep,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinvss",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} recipe")
        p.add_argument("--config", type=Path, default=None, help="TOML config file")
        p.add_argument(
            "--out", type=Path, default=Path("twinvss-out"), help="output directory"
        )
        p.add_argument(
            "--threads", type=int, default=0, help="worker threads (0 = auto)"
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="replace configured levels with a seeded random set",
        )
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else default_config()
        setup = to_setup(config, seed=args.seed)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        result = _COMMANDS[args.command](config, setup, out, args.threads)
        write_manifest(
            out / "manifest.toml", config, result["derived"], result["timings"]
        )
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
