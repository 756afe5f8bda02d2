"""Command-line front end.

Processing commands (vocode, denoise, multiply) read a WAV file, run the
randomized pipeline per channel with channel-distinct sub-seeds, and write a
WAV at the same rate and encoding. Bench commands (verify-frame,
bench-convergence, bench-lvd) run the verification suites and emit
machine-readable CSV.

Exit codes: 0 success, 1 a verification threshold failed, 2 usage or I/O
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from .atoms import default_mother_wavelet
from .config import RunConfig
from .errors import LtftError, MaskFormatError, WavFormatError
from .frame_filter import LTFTFrame
from .phase_space import (
    LVD_CSV_HEADER,
    cwt_domain,
    cwt_truncation_ratio,
    ltft_domain,
    ltft_truncation_ratio,
)
from .pipelines import PipelineConfig, SymbolGrid, denoise, multiply, phase_vocoder, run_mc_pipeline
from .signals import Signal
from .verify import (
    VerifyRow,
    convergence_run,
    frame_op_equivalence,
    pseudo_inverse_residual,
    random_bandlimited_signal,
    write_rows,
)
from .wavio import read_wav, write_wav

EXIT_OK = 0
EXIT_TEST_FAIL = 1
EXIT_USAGE = 2


def _add_params_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--tau-min", type=float, dest="tau_min", help="smallest oscillation count")
    p.add_argument("--tau-max", type=float, dest="tau_max", help="largest oscillation count")
    p.add_argument("--a", type=float, dest="a_hz", help="lower transition frequency (Hz)")
    p.add_argument("--b", type=float, dest="b_hz", help="upper transition frequency (Hz)")
    p.add_argument("--w", type=float, dest="w_factor", help="frequency-domain width factor W >= 1")
    p.add_argument("--z", type=float, dest="z_ratio", help="Monte Carlo samples per unit envelope measure")
    p.add_argument("--seed", type=int, dest="seed", help="base random seed")
    p.add_argument("--mode", choices=("synthesis", "analysis"), dest="mode")
    p.add_argument("--cache-dir", dest="cache_dir", help="frame-filter cache directory")
    p.add_argument("--log-json", dest="log_json", help="write the run log to this file")


def _load_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    keys = ("tau_min", "tau_max", "a_hz", "b_hz", "w_factor", "z_ratio", "seed", "mode", "cache_dir")
    return cfg.overridden(**{k: getattr(args, k, None) for k in keys})


def _emit_log(args, payload: dict) -> None:
    line = json.dumps(payload, sort_keys=True, default=float)
    print(line, file=sys.stderr)
    if getattr(args, "log_json", None):
        with open(args.log_json, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")


def _process_wav(args, worker) -> int:
    """Shared read-process-write loop for the audio commands; ``worker``
    maps (signal, frame, pipeline_cfg, stats) to an output signal."""
    wav = read_wav(args.input)
    cfg = _load_config(args)
    rate = float(wav.rate)
    params = cfg.resolve_params(rate)
    frame = LTFTFrame.build(params, rate, cfg.filter_grid, cache_dir=cfg.cache_dir)
    out_channels: List[np.ndarray] = []
    stats_all = []
    for c, channel in enumerate(wav.channels):
        s = Signal.centered(channel, rate)
        pipe_cfg = PipelineConfig.from_z(
            cfg.z_ratio,
            s.n - 1,
            rate,
            params,
            w_factor=cfg.w_factor,
            seed=[cfg.seed, c],
            mode=cfg.mode,
            lebesgue_tau=cfg.lebesgue_tau,
        )
        stats: dict = {}
        out = worker(s, frame, pipe_cfg, stats)
        out_channels.append(np.asarray(out.samples, dtype=np.float64))
        stats_all.append(stats)
    write_wav(args.output, wav.rate, out_channels, wav.encoding)
    _emit_log(
        args,
        {
            "command": args.command,
            "config": cfg.resolved_dict(rate),
            "input": args.input,
            "output": args.output,
            "channels": len(wav.channels),
            "stats": stats_all,
        },
    )
    return EXIT_OK


def _cmd_vocode(args) -> int:
    if args.stretch < 1:
        raise LtftError(f"--stretch must be a positive integer, got {args.stretch}")

    def worker(s, frame, pipe_cfg, stats):
        return phase_vocoder(s, frame, args.stretch, pipe_cfg, stats=stats)

    return _process_wav(args, worker)


def _cmd_denoise(args) -> int:
    def worker(s, frame, pipe_cfg, stats):
        return denoise(s, frame, args.threshold, pipe_cfg, stats=stats)

    return _process_wav(args, worker)


def _cmd_multiply(args) -> int:
    mask = SymbolGrid.from_csv(args.mask)

    def worker(s, frame, pipe_cfg, stats):
        return multiply(s, frame, mask, pipe_cfg, stats=stats)

    return _process_wav(args, worker)


def _cmd_verify_frame(args) -> int:
    cfg = _load_config(args)
    rate = float(args.rate)
    params = cfg.resolve_params(rate)
    frame = LTFTFrame.build(params, rate, cfg.filter_grid, cache_dir=cfg.cache_dir)
    a_est, b_est = frame.filter.bounds
    rows = [VerifyRow("frame_lower_bound", f"rate={rate}", "A_est", a_est, 0.0, a_est > 0.0)]
    m = args.resolution
    for i in range(args.signals):
        s = random_bandlimited_signal(m + 1, rate, seed=cfg.seed + i)
        err = frame_op_equivalence(s, frame)
        rows.append(
            VerifyRow("frame_op_equivalence", f"M={m},signal={i}", "rel_error", err, 0.02, err < 0.02)
        )
    for i in range(min(2, args.signals)):
        res = pseudo_inverse_residual(
            random_bandlimited_signal(m + 1, rate, seed=cfg.seed + 100 + i), frame
        )
        rows.append(
            VerifyRow("reconstruction", f"M={m},signal={i}", "rel_error", res, 0.05, res < 0.05)
        )
    if args.out:
        write_rows(args.out, rows)
    ok = all(r.passed for r in rows)
    for r in rows:
        print(f"{r.test_id}[{r.params}] {r.metric}={r.value:.3e} threshold={r.threshold} {'PASS' if r.passed else 'FAIL'}")
    _emit_log(args, {"command": "verify-frame", "config": cfg.resolved_dict(rate), "pass": ok})
    return EXIT_OK if ok else EXIT_TEST_FAIL


def _cmd_bench_convergence(args) -> int:
    cfg = _load_config(args)
    rate = float(args.rate)
    m = args.resolution
    params = cfg.resolve_params(rate)
    frame = LTFTFrame.build(params, rate, cfg.filter_grid, cache_dir=cfg.cache_dir)
    s = random_bandlimited_signal(m + 1, rate, seed=cfg.seed)
    domain = ltft_domain(m, rate, cfg.w_factor, params)
    k_values = [int(v) for v in args.k_list.split(",")]
    run = convergence_run(s, frame, domain, k_values, n_seeds=args.seeds, seed0=cfg.seed)
    lo, hi = -0.65, -0.35
    ok = lo <= run.slope <= hi
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("k,seed,error\n")
            for i in range(run.n_seeds):
                for j, k in enumerate(run.k_values):
                    fh.write(f"{k},{cfg.seed + i},{run.errors[i][j]!r}\n")
            fh.write(f"slope,,{run.slope!r}\n")
    print(
        f"convergence slope={run.slope:.3f} (ci +-{run.slope_ci95:.3f}) over K={list(run.k_values)}: "
        f"{'PASS' if ok else 'FAIL'} (band [{lo}, {hi}])"
    )
    _emit_log(args, {"command": "bench-convergence", "config": cfg.resolved_dict(rate), "slope": run.slope, "pass": ok})
    return EXIT_OK if ok else EXIT_TEST_FAIL


def _cmd_bench_lvd(args) -> int:
    cfg = _load_config(args)
    failures = []
    lines = []
    reports = {}
    for m in (256, 512, 1024, 2048):
        rate = float(m)
        params = cfg.overridden(a_hz=10.0, b_hz=100.0).resolve_params(rate)
        s = random_bandlimited_signal(m + 1, rate, seed=cfg.seed)
        for w in (1.0, 2.0, 4.0):
            dom = ltft_domain(m, rate, w, params, two_sided=True)
            ref = ltft_domain(m, rate, 4 * w, params, two_sided=True)
            reports[(m, w)] = ltft_truncation_ratio(params, s, dom, ref, resolution=m)
    ratios_cv = [reports[(m, 2.0)].ratio_cv for m in (256, 512, 1024, 2048)]
    spread = (max(ratios_cv) - min(ratios_cv)) / max(ratios_cv)
    if spread >= 0.1:
        failures.append(f"measure/M varies by {spread:.1%} across resolutions")
    for m in (256, 512, 1024, 2048):
        rep = reports[(m, 2.0)]
        if rep.trunc_error >= 0.1:
            failures.append(f"L-T-F truncation ratio {rep.trunc_error:.3f} at M={m}, W=2")
        seq = [reports[(m, w)].trunc_error for w in (1.0, 2.0, 4.0)]
        if not (seq[2] <= seq[0] + 1e-3 and seq[1] <= seq[0] + 1e-3):
            failures.append(f"truncation ratio not decreasing in W at M={m}: {seq}")
        lines.append(f"M={m}: measure/M={rep.ratio_cv:.2f} ratio(W=1,2,4)={seq}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(LVD_CSV_HEADER + "\n")
            for key in sorted(reports):
                fh.write(reports[key].csv_row() + "\n")

    mother = default_mother_wavelet()
    rng = np.random.default_rng(cfg.seed)
    m_cwt = 256
    coeffs = rng.standard_normal(2 * m_cwt + 1) + 1j * rng.standard_normal(2 * m_cwt + 1)
    cwt_rows = []
    for w in (1.0, 2.0, 4.0):
        rep = cwt_truncation_ratio(mother, coeffs, cwt_domain(m_cwt, w, 0.5), cwt_domain(m_cwt, 4 * w, 0.5))
        cwt_rows.append(rep)
        bound = 3 * w * m_cwt
        lines.append(
            f"wavelet M={m_cwt} W={w}: measure={rep.psi_l1:.1f} (bound {bound:.0f}) ratio={rep.trunc_error:.3f}"
        )
        if rep.psi_l1 > bound:
            failures.append(f"wavelet domain measure {rep.psi_l1:.1f} exceeds 3WM={bound}")
    if cwt_rows[-1].trunc_error >= 0.15:
        failures.append(f"wavelet truncation ratio {cwt_rows[-1].trunc_error:.3f} at W=4")
    if args.cwt_out:
        with open(args.cwt_out, "w", encoding="utf-8") as fh:
            fh.write(LVD_CSV_HEADER + "\n")
            for rep in cwt_rows:
                fh.write(rep.csv_row() + "\n")

    for line in lines:
        print(line)
    for f in failures:
        print(f"FAIL: {f}")
    ok = not failures
    print("PASS" if ok else "FAIL")
    _emit_log(args, {"command": "bench-lvd", "config": cfg.resolved_dict(), "pass": ok})
    return EXIT_OK if ok else EXIT_TEST_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltft",
        description="Localizing time-frequency transform: randomized phase-space audio processing and verification benches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vocode", help="integer time stretch without pitch change")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--stretch", type=int, required=True, help="integer stretch factor >= 1")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_vocode)

    p = sub.add_parser("denoise", help="phase-space shrinkage denoiser")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--threshold", type=float, required=True, help="soft threshold level")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_denoise)

    p = sub.add_parser("multiply", help="phase-space multiplier from a mask CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--mask", required=True, help="symbol mask CSV (see SymbolGrid)")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_multiply)

    p = sub.add_parser("verify-frame", help="frame bound and operator-equivalence checks")
    p.add_argument("--rate", type=float, default=1024.0)
    p.add_argument("--resolution", type=int, default=1024)
    p.add_argument("--signals", type=int, default=10)
    p.add_argument("--out", help="write pass/fail rows to this CSV")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_verify_frame)

    p = sub.add_parser("bench-convergence", help="Monte Carlo error-rate bench")
    p.add_argument("--rate", type=float, default=1024.0)
    p.add_argument("--resolution", type=int, default=1024)
    p.add_argument("--k-list", default=",".join(str(2**i) for i in range(10, 17)))
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--out", help="write per-K rows plus a slope row to this CSV")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_bench_convergence)

    p = sub.add_parser("bench-lvd", help="linear-volume truncation bench")
    p.add_argument("--out", help="write localizing-family rows to this CSV")
    p.add_argument("--cwt-out", dest="cwt_out", help="write wavelet rows to this CSV")
    _add_params_flags(p)
    p.set_defaults(fn=_cmd_bench_lvd)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (WavFormatError, MaskFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LtftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
