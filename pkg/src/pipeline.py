"""Command implementations: one design/analysis run over a validated configuration."""

import time
from functools import cached_property
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from src.biphoton import (
    JSAGrid,
    PumpSpec,
    SpectralGrid,
    assemble_jsa,
    check_span,
    covering_k_grid,
    edge_fraction,
    hom_features,
    hom_scan,
    jta_from_jsa,
    mismatch_grid,
    schmidt_decomposition,
)
from src.data_processors import CSVExporter, HeatmapExporter, JSONExporter, RunManifest, SequenceExporter, read_sequence
from src.dispersion import DispersionModel, get_model
from src.dispersion.phase_matching import C_NM_PER_FS, TYPE_II, solve_gvm_wavelength, solve_poling_period
from src.poling import AchievedPMF, DomainSequence, achieved_pmf, amplitude_trace, track_domains
from src.poling.domains import domain_count
from src.studies import (
    RateParams,
    SchmidtPipeline,
    miller_scaled_deff,
    offset_study,
    pair_rate,
    schmidt_statistics,
)
from src.targets import BaseTarget, build_target
from src.utils.config import RunConfig
from src.utils.exceptions import ConfigError
from src.utils.logging import get_logger, log_duration

SEQUENCE_FILE = "sequence.txt"

# fixed dataflow order of the `all` command
ALL_ORDER = ("design", "pmf", "jsa", "jta", "hom", "schmidt", "rate", "tolerance")


class DesignRun:
    """Lazily computed state of one run; each command writes its artifacts.

    Intermediate results (period, target, sequence, PMF, JSA) are cached, so
    `all` computes each of them once.

    Attributes:
        config (RunConfig): Validated run configuration
        output_dir (str): Artifact directory
        sequence_path (str, optional): Existing sequence to analyse instead of designing
        ideal (bool): Analyse the analytic target PMF instead of the crystal
        manifest (RunManifest, optional): Records every written artifact
    """

    def __init__(
        self,
        config: RunConfig,
        output_dir: Optional[str] = None,
        sequence_path: Optional[str] = None,
        ideal: bool = False,
        manifest: Optional[RunManifest] = None,
    ):
        self.logger = get_logger()
        self.config = config
        self.output_dir = output_dir or config.output.directory
        self.sequence_path = sequence_path
        self.ideal = ideal
        self.manifest = manifest
        self.results: Dict[str, Dict] = {}

        self.csv = CSVExporter(output_dir=self.output_dir)
        self.json = JSONExporter(output_dir=self.output_dir)
        self.heatmap = HeatmapExporter(output_dir=self.output_dir)
        self.sequences = SequenceExporter(output_dir=self.output_dir)

    # ------------------------------------------------------------------
    # cached state
    # ------------------------------------------------------------------

    @cached_property
    def model(self) -> DispersionModel:
        settings = self.config.dispersion
        try:
            return get_model(settings.model, settings.temperature_k)
        except ValueError as e:
            raise ConfigError(str(e), "dispersion.model")

    @property
    def pump_nm(self) -> float:
        return self.config.pump.center_nm

    @cached_property
    def period_nm(self) -> float:
        if self.config.crystal.poling_period_nm is not None:
            return self.config.crystal.poling_period_nm
        degenerate = 2.0 * self.pump_nm
        return solve_poling_period(self.model, self.pump_nm, degenerate, degenerate)

    @property
    def k0(self) -> float:
        return 2.0 * np.pi / self.period_nm

    @property
    def domain_width(self) -> float:
        return self.period_nm / 2.0

    @cached_property
    def target(self) -> BaseTarget:
        return build_target(self.config.target, self.k0, self.config.crystal.length_nm)

    @cached_property
    def pump(self) -> PumpSpec:
        return PumpSpec(self.config.pump.center_nm, self.config.pump.fwhm_nm)

    @cached_property
    def grid(self) -> SpectralGrid:
        settings = self.config.grid
        return SpectralGrid(settings.size, self.config.degenerate_nm, settings.span_nm)

    @cached_property
    def mismatch(self) -> np.ndarray:
        return mismatch_grid(self.model, self.grid)

    @cached_property
    def k_grid(self) -> np.ndarray:
        return covering_k_grid(self.mismatch, self.config.grid.pmf_points)

    @cached_property
    def sequence(self) -> DomainSequence:
        if self.sequence_path:
            seq = read_sequence(self.sequence_path)
            self.logger.info(f"Loaded {seq.n_domains} domains from {self.sequence_path}")
            return seq
        existing = Path(self.output_dir) / SEQUENCE_FILE
        if existing.exists():
            seq = read_sequence(str(existing))
            self.logger.info(f"Using the designed sequence in {existing}")
            return seq
        return self._design()

    @cached_property
    def achieved(self) -> AchievedPMF:
        return achieved_pmf(
            self.sequence,
            self.k_grid,
            omega=self.target.sign_window,
            sign_reference=self.target.sign_reference,
        )

    @property
    def pmf(self) -> Callable[[np.ndarray], np.ndarray]:
        return self.target.pmf if self.ideal else self.achieved

    @cached_property
    def jsa_grid(self) -> JSAGrid:
        jsa = assemble_jsa(self.pmf, self.pump, self.grid, self.model, mismatch=self.mismatch)
        check_span(jsa)
        return jsa

    # ------------------------------------------------------------------
    # helpers
    # ------------------------------------------------------------------

    def _record(self, path: str) -> str:
        if self.manifest is not None:
            self.manifest.record(path)
        return path

    def _design(self) -> DomainSequence:
        start = time.time()
        length = self.config.crystal.length_nm
        n_domains = domain_count(length, self.domain_width)
        positions = np.arange(1, n_domains + 1) * self.domain_width
        self.logger.info(
            f"Designing {n_domains} domains of {self.domain_width:.4f} nm for a "
            f"{self.target.kind} target over {length / 1e6:g} mm"
        )
        targets = self.target.amplitude_table(positions)
        seq = track_domains(targets, self.k0, self.domain_width, n_domains)

        self._record(self.sequences.process(seq, SEQUENCE_FILE))
        self._record(self.csv.process(amplitude_trace(seq, targets), "amplitude_trace.csv"))
        self.results["design"] = {"n_domains": n_domains, "elapsed_s": time.time() - start}
        return seq

    # ------------------------------------------------------------------
    # commands
    # ------------------------------------------------------------------

    def gvm(self) -> Dict:
        wavelength = solve_gvm_wavelength(self.model)
        report = {
            "gvm_wavelength_nm": wavelength,
            "pump_wavelength_nm": wavelength / 2.0,
            "model": self.model.name,
            "temperature_k": self.model.temperature_k,
        }
        self._record(self.json.process(report, "gvm.json"))
        print(f"gvm_wavelength_nm={wavelength:.4f}")
        return report

    def period(self) -> Dict:
        degenerate = 2.0 * self.pump_nm
        report = {
            "poling_period_nm": self.period_nm,
            "pump_nm": self.pump_nm,
            "signal_nm": degenerate,
            "idler_nm": degenerate,
            "model": self.model.name,
            "temperature_k": self.model.temperature_k,
        }
        self._record(self.json.process(report, "period.json"))
        print(f"poling_period_nm={self.period_nm:.4f}")
        return report

    def design(self) -> Dict:
        if self.sequence_path:
            self.logger.warning("--sequence given; the design step is skipped")
            return {"n_domains": self.sequence.n_domains}
        # a stale sequence.txt from an earlier run is replaced
        for name in ("sequence", "achieved", "jsa_grid"):
            self.__dict__.pop(name, None)
        self.__dict__["sequence"] = self._design()
        return self.results["design"]

    def pmf_command(self) -> Dict:
        k = self.k_grid
        columns = {"k_rad_per_nm": k, "target": self.target.pmf(k)}
        if not self.ideal:
            pmf = self.achieved
            columns.update(
                achieved=pmf.amplitude,
                transfer_real=pmf.transfer.real,
                transfer_imag=pmf.transfer.imag,
            )
        self._record(self.csv.process(pd.DataFrame(columns), "pmf.csv"))
        report = {"points": int(k.size), "ideal": self.ideal}
        if not self.ideal:
            report["peak_k_rad_per_nm"] = self.achieved.peak_k
        return report

    def jsa(self) -> Dict:
        jsa = self.jsa_grid
        axis = self.grid.wavelengths
        self._record(self.csv.write_matrix(jsa.amplitude.real, axis, axis, "jsa.csv"))
        self._record(self.heatmap.process(np.abs(jsa.amplitude), "jsa.ppm"))
        return {"norm": jsa.norm, "edge_fraction": edge_fraction(jsa)}

    def jta(self) -> Dict:
        jta = jta_from_jsa(self.jsa_grid)
        magnitude = np.abs(jta.amplitude)
        self._record(self.csv.write_matrix(magnitude, jta.times, jta.times, "jta.csv", corner="t_signal_fs/t_idler_fs"))
        self._record(self.heatmap.process(magnitude, "jta.ppm"))
        return {"d_time_fs": jta.d_time}

    def hom_delays(self) -> np.ndarray:
        settings = self.config.hom
        tau_max = settings.tau_max_fs
        if tau_max is None:
            degenerate = self.config.degenerate_nm
            _, signal_pol, idler_pol = TYPE_II
            walk_off = abs(
                self.model.group_index(signal_pol, degenerate) - self.model.group_index(idler_pol, degenerate)
            )
            tau_max = 2.5 * self.config.crystal.length_nm * walk_off / C_NM_PER_FS
            if not tau_max > 0:
                tau_max = float(self.grid.times[-1])
        count = int(np.floor(tau_max / settings.step_fs))
        return np.arange(-count, count + 1) * settings.step_fs

    def hom(self) -> Dict:
        taus = self.hom_delays()
        self.logger.info(f"HOM scan over {taus.size} delays up to {taus[-1]:.0f} fs")
        p = hom_scan(self.jsa_grid, taus)
        features = hom_features(taus, p)
        self._record(self.csv.process(pd.DataFrame({"tau_fs": taus, "p": p}), "hom.csv"))
        self._record(self.json.process(features, "hom.json"))
        return features

    def schmidt(self) -> Dict:
        result = schmidt_decomposition(self.jsa_grid)
        report = {"K": result.schmidt_number, "top_weights": result.top(16)}
        self._record(self.json.process(report, "schmidt.json"))
        self.logger.info(f"Schmidt number K = {result.schmidt_number:.4f}")
        return report

    def rate_params(self) -> RateParams:
        settings = self.config.rate
        d_eff = settings.d_eff_pm_per_v
        if d_eff is None:
            degenerate = 2.0 * self.pump_nm
            d_eff = miller_scaled_deff(
                settings.d_ref_pm_per_v,
                settings.reference_wavelengths_nm,
                (self.pump_nm, degenerate, degenerate),
                self.model,
            )
        common = dict(
            pump_power_w=settings.pump_power_w,
            pump_waist_um=settings.pump_waist_um,
            biphoton_waist_um=settings.biphoton_waist_um,
            d_eff_pm_per_v=d_eff,
            length_nm=self.config.crystal.length_nm,
        )
        if settings.footnote_indices:
            return RateParams(
                n_pump=settings.n_pump,
                n_signal=settings.n_signal,
                n_idler=settings.n_idler,
                ng_signal=settings.ng_signal,
                ng_idler=settings.ng_idler,
                pump_wavelength_nm=self.pump_nm,
                **common,
            )
        return RateParams.from_model(self.model, self.pump_nm, **common)

    def rate(self) -> Dict:
        params = self.rate_params()
        report = pair_rate(self.sequence, params, self.model)
        data = report.to_dict()
        data.update(
            rate_per_s=report.rate_per_s,
            d_eff_pm_per_v=params.d_eff_pm_per_v,
            pump_field_v_per_m=params.field_amplitude,
            estimates=report.estimates,
        )
        self._record(self.json.process(data, "rate.json"))
        return data

    def tolerance(self) -> Dict:
        settings = self.config.tolerance
        pipeline = SchmidtPipeline(
            self.model,
            self.grid,
            self.pump,
            self.config.grid.pmf_points,
            sign_window=self.target.sign_window,
            sign_reference=self.target.sign_reference,
        )
        reports = schmidt_statistics(
            pipeline, self.sequence, settings.resolutions_nm, settings.repetitions, settings.seed
        )
        rows: List[Dict] = [
            {"R_nm": r.resolution_nm, "rep": rep, "K": k}
            for r in reports
            for rep, k in enumerate(r.k_values)
        ]
        table = pd.DataFrame(rows, columns=["R_nm", "rep", "K"])
        self._record(self.csv.process(table, "tolerance.csv"))
        summary = {"reports": [r.summary() for r in reports]}
        self._record(self.json.process(summary, "tolerance_summary.json"))

        offsets = offset_study(pipeline, self.sequence, settings.offsets_nm)
        self._record(self.json.process({"offsets": offsets}, "offsets.json"))
        return {"summary": summary["reports"], "offsets": offsets}

    def run_all(self) -> Dict:
        return {name: run_command(self, name) for name in ALL_ORDER}


# Register commands for easy access
COMMANDS: Dict[str, Callable[[DesignRun], Dict]] = {
    "gvm": DesignRun.gvm,
    "period": DesignRun.period,
    "design": DesignRun.design,
    "pmf": DesignRun.pmf_command,
    "jsa": DesignRun.jsa,
    "jta": DesignRun.jta,
    "hom": DesignRun.hom,
    "schmidt": DesignRun.schmidt,
    "rate": DesignRun.rate,
    "tolerance": DesignRun.tolerance,
    "all": DesignRun.run_all,
}


def get_command(name: str) -> Callable[[DesignRun], Dict]:
    """
    Look up a command by name.

    Args:
        name (str): Command name

    Returns:
        callable: Unbound ``DesignRun`` method

    Raises:
        ValueError: If the command is not registered
    """
    if name not in COMMANDS:
        raise ValueError(f"Command '{name}' not found. Available commands: {', '.join(COMMANDS.keys())}")
    return COMMANDS[name]


def run_command(run: DesignRun, name: str) -> Dict:
    """Run one command, logging its duration."""
    with log_duration(name, run.logger):
        result = get_command(name)(run)
    run.results[name] = result
    return result
