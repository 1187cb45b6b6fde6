"""Plain-text domain sequence files."""

from pathlib import Path

import numpy as np

from src.data_processors.base_processor import BaseProcessor
from src.poling.domains import DomainSequence
from src.utils.exceptions import ParameterError, SequenceNotFoundError

HEADER_WIDTH = "# L_c_nm="
HEADER_K0 = "# k0_rad_per_nm="


def format_sequence(seq: DomainSequence) -> str:
    """Header lines, then one ``<sign> <width_nm>`` line per domain (floats as repr).

    Anchored sequences add the domain start as a third column.
    """
    lines = [f"{HEADER_WIDTH}{seq.nominal_width!r}", f"{HEADER_K0}{seq.k0!r}"]
    if seq.anchored:
        lines.extend(f"{int(s)} {float(w)!r} {float(a)!r}" for s, w, a in zip(seq.signs, seq.widths, seq.starts))
    else:
        lines.extend(f"{int(s)} {float(w)!r}" for s, w in zip(seq.signs, seq.widths))
    return "\n".join(lines) + "\n"


class SequenceExporter(BaseProcessor):
    """Write domain sequences that reload bit-exactly."""

    extension = "txt"

    def process(self, data: DomainSequence, filename: str = "sequence.txt") -> str:
        self.logger.info(f"Writing {data.n_domains} domains to {self.get_output_path(filename)}")
        return self.write_artifact(filename, format_sequence(data))


def read_sequence(path: str) -> DomainSequence:
    """
    Load a sequence file written by ``SequenceExporter``.

    Args:
        path (str): Sequence file

    Returns:
        DomainSequence: Reloaded sequence

    Raises:
        SequenceNotFoundError: If the file does not exist
        ParameterError: If the headers or a domain line are malformed
    """
    file = Path(path)
    if not file.exists():
        raise SequenceNotFoundError(str(path))

    nominal = k0 = None
    signs, widths, starts = [], [], []
    for number, raw in enumerate(file.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            if line.startswith(HEADER_WIDTH):
                nominal = float(line[len(HEADER_WIDTH):])
            elif line.startswith(HEADER_K0):
                k0 = float(line[len(HEADER_K0):])
            elif line.startswith("#"):
                continue
            else:
                sign, width, *start = line.split()
                if len(start) > 1:
                    raise ValueError(line)
                signs.append(int(sign))
                widths.append(float(width))
                starts.extend(float(a) for a in start)
        except ValueError:
            raise ParameterError(f"{path}:{number}: malformed line {raw!r}")

    if nominal is None or k0 is None:
        raise ParameterError(f"{path}: missing '{HEADER_WIDTH}' or '{HEADER_K0}' header")
    if starts and len(starts) != len(signs):
        raise ParameterError(f"{path}: domain start given for only {len(starts)} of {len(signs)} domains")
    return DomainSequence(np.array(signs), np.array(widths), nominal, k0, np.array(starts) if starts else None)
