"""Fabrication-tolerance studies: fixed width offsets and random width errors."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from src.biphoton.jsa import (
    EDGE_WARNING_FRACTION,
    JSAGrid,
    assemble_jsa,
    check_span,
    covering_k_grid,
    jsa_centroid,
    mismatch_grid,
)
from src.biphoton.analysis import schmidt_decomposition
from src.biphoton.spectral import PumpSpec, SpectralGrid
from src.dispersion.base_model import DispersionModel
from src.poling.domains import DomainSequence
from src.poling.pmf import achieved_pmf
from src.utils.exceptions import ParameterError, QPMError
from src.utils.helpers import thread_limit
from src.utils.logging import get_logger

logger = get_logger()


def offset_sequence(seq: DomainSequence, delta_nm: float) -> DomainSequence:
    """
    Shift every domain width by Δ, keeping the signs.

    On a uniform design this sets all widths to L_c + Δ; applying −Δ afterwards
    restores the original widths.

    Args:
        seq (DomainSequence): Designed sequence
        delta_nm (float): Width offset Δ in nm

    Returns:
        DomainSequence: Offset sequence (nominal width and k₀ unchanged)

    Raises:
        ParameterError: If any resulting width is not positive
    """
    if delta_nm == 0:
        return seq
    widths = seq.widths + delta_nm
    if not np.all(widths > 0):
        raise ParameterError(f"offset {delta_nm} nm leaves a non-positive domain width")
    return seq.with_widths(widths)


def perturb_sequence(seq: DomainSequence, resolution_nm: float, seed: int) -> DomainSequence:
    """
    Random fabrication error: width_j = L_c + γ_j·R with γ_j ~ U[−0.5, 0.5).

    Every domain keeps its designed start position and only its far edge
    moves, so the errors of neighbouring domains do not add up along the
    crystal. Overlaps and gaps between neighbours are allowed.

    Args:
        seq (DomainSequence): Designed sequence
        resolution_nm (float): Fabrication resolution R, 0 ≤ R < 2L_c
        seed (int): Philox key of the run

    Returns:
        DomainSequence: Perturbed copy; the same object when R = 0
    """
    if resolution_nm < 0 or resolution_nm >= 2.0 * seq.nominal_width:
        raise ParameterError(
            f"resolution must lie in [0, {2.0 * seq.nominal_width:.6g}) nm, got {resolution_nm}"
        )
    if resolution_nm == 0:
        return seq
    # counter-based Philox: run r of a study uses key base_seed + r
    gamma = np.random.Generator(np.random.Philox(key=seed)).uniform(-0.5, 0.5, seq.n_domains)
    return seq.with_widths(seq.nominal_width + gamma * resolution_nm, anchored=True)


class SchmidtPipeline:
    """Sequence → achieved PMF → JSA → Schmidt number on a fixed grid.

    The mismatch matrix and the PMF k grid are computed once and shared by
    every evaluation, so one pipeline can serve many threads.
    """

    def __init__(
        self,
        model: DispersionModel,
        grid: SpectralGrid,
        pump: PumpSpec,
        pmf_points: int = 4096,
        sign_window: Optional[float] = None,
        sign_reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ):
        self.model = model
        self.grid = grid
        self.pump = pump
        self.sign_window = sign_window
        self.sign_reference = sign_reference
        self.mismatch = mismatch_grid(model, grid)
        self.k_grid = covering_k_grid(self.mismatch, pmf_points)
        self._span_checked = False

    def jsa(self, seq: DomainSequence) -> JSAGrid:
        """JSA of one sequence; the first one that spills onto the grid border is reported."""
        pmf = achieved_pmf(seq, self.k_grid, omega=self.sign_window, sign_reference=self.sign_reference)
        jsa = assemble_jsa(pmf, self.pump, self.grid, self.model, mismatch=self.mismatch)
        if not self._span_checked and check_span(jsa) > EDGE_WARNING_FRACTION:
            self._span_checked = True
        return jsa

    def __call__(self, seq: DomainSequence) -> float:
        return schmidt_decomposition(self.jsa(seq)).schmidt_number


@dataclass
class ToleranceReport:
    """Schmidt-number statistics of one fabrication resolution.

    Attributes:
        resolution_nm (float): R
        repetitions (int): Number of runs
        mean_k (float): K̄
        sd_k (float): Sample standard deviation of K
        k_values (List[float]): K of each run, by run index
        seed (int): Base seed
        error (str, optional): Failure text when the study for this R aborted
    """

    resolution_nm: float
    repetitions: int
    mean_k: float = float("nan")
    sd_k: float = float("nan")
    k_values: List[float] = field(default_factory=list)
    seed: int = 0
    error: Optional[str] = None

    def summary(self) -> Dict[str, object]:
        data = {
            "R_nm": self.resolution_nm,
            "repetitions": self.repetitions,
            "mean_K": self.mean_k,
            "sd_K": self.sd_k,
            "seed": self.seed,
        }
        if self.error:
            data["error"] = self.error
        return data


def _statistics(values: np.ndarray) -> tuple:
    # deviations from the first run keep identical runs at SD = 0 exactly
    deviations = values - values[0]
    return float(values[0] + deviations.mean()), float(deviations.std(ddof=1))


def schmidt_statistics(
    pipeline: Callable[[DomainSequence], float],
    seq: DomainSequence,
    resolutions_nm: Sequence[float],
    repetitions: int = 100,
    base_seed: int = 0,
    workers: Optional[int] = None,
) -> List[ToleranceReport]:
    """
    Monte Carlo Schmidt-number statistics over fabrication resolutions.

    Run r of every resolution uses the generator keyed by base_seed + r, so a
    shorter study reproduces the leading runs of a longer one.

    Args:
        pipeline (callable): Sequence → Schmidt number
        seq (DomainSequence): Designed sequence (the tracker is not re-run)
        resolutions_nm (Sequence[float]): Resolutions R
        repetitions (int): Runs per resolution, at least 2
        base_seed (int): Non-negative base seed
        workers (int, optional): Thread count; defaults to QPM_THREADS or the CPU count

    Returns:
        List[ToleranceReport]: One report per resolution, in input order
    """
    if repetitions < 2:
        raise ParameterError(f"repetitions must be >= 2, got {repetitions}")
    if base_seed < 0:
        raise ParameterError(f"base seed must be >= 0, got {base_seed}")
    workers = workers or thread_limit()

    reports = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for resolution in resolutions_nm:
            report = ToleranceReport(float(resolution), repetitions, seed=base_seed)
            try:
                if resolution == 0:
                    k_values = np.full(repetitions, pipeline(seq))
                else:
                    def run(index: int, resolution=resolution) -> float:
                        return pipeline(perturb_sequence(seq, resolution, base_seed + index))

                    k_values = np.array(
                        list(
                            tqdm(
                                executor.map(run, range(repetitions)),
                                total=repetitions,
                                desc=f"R={resolution:g} nm",
                                leave=False,
                            )
                        )
                    )
            except (QPMError, ValueError, np.linalg.LinAlgError) as e:
                logger.error(f"Tolerance study aborted for R={resolution:g} nm: {e}")
                report.error = str(e)
                reports.append(report)
                continue

            report.k_values = k_values.tolist()
            report.mean_k, report.sd_k = _statistics(k_values)
            logger.info(f"R={resolution:g} nm: mean K {report.mean_k:.4f}, SD {report.sd_k:.4f}")
            reports.append(report)

    return reports


def offset_study(
    pipeline: SchmidtPipeline, seq: DomainSequence, offsets_nm: Sequence[float]
) -> List[Dict[str, float]]:
    """
    Schmidt number and JSA centroid for each fixed width offset.

    Args:
        pipeline (SchmidtPipeline): Evaluation pipeline
        seq (DomainSequence): Designed sequence
        offsets_nm (Sequence[float]): Offsets Δ

    Returns:
        List[Dict[str, float]]: offset_nm, schmidt_number, centroid_signal_nm, centroid_idler_nm
    """
    rows = []
    for delta in offsets_nm:
        jsa = pipeline.jsa(offset_sequence(seq, delta))
        signal, idler = jsa_centroid(jsa)
        number = schmidt_decomposition(jsa).schmidt_number
        logger.info(f"Offset {delta:+g} nm: K {number:.4f}, centroid ({signal:.2f}, {idler:.2f}) nm")
        rows.append(
            {
                "offset_nm": float(delta),
                "schmidt_number": number,
                "centroid_signal_nm": signal,
                "centroid_idler_nm": idler,
            }
        )
    return rows
