import hashlib
import json
import logging
import math
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from config import settings
from models.manifest import RunManifest
from models.matrices import IntSymMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ReportRenderer:
    """JSON rendering of service results and the run manifests written next to output files"""

    @staticmethod
    def _float(x: float) -> Any:
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        rounded = float(f"{x:.{settings.FLOAT_SIGNIFICANT_DIGITS}g}")
        return 0.0 if rounded == 0 else rounded

    @staticmethod
    def normalize(obj: Any) -> Any:
        """Recursively turn results into JSON-ready values: Fractions as "p/q", floats to 12 digits."""
        if obj is None or isinstance(obj, (bool, str)):
            return obj
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, Enum):
            return ReportRenderer.normalize(obj.value)
        if isinstance(obj, Fraction):
            return str(obj)
        if isinstance(obj, (int, np.integer)):
            return int(obj)
        if isinstance(obj, (float, np.floating)):
            return ReportRenderer._float(float(obj))
        if isinstance(obj, IntSymMatrix):
            return obj.to_list()
        if isinstance(obj, np.ndarray):
            return ReportRenderer.normalize(obj.tolist())
        if isinstance(obj, BaseModel):
            return ReportRenderer.normalize(obj.model_dump())
        if isinstance(obj, pd.DataFrame):
            return ReportRenderer.normalize(obj.to_dict(orient="records"))
        if isinstance(obj, datetime):
            return obj.isoformat()
        if isinstance(obj, dict):
            return {str(ReportRenderer.normalize(k)): ReportRenderer.normalize(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            if hasattr(obj, "_asdict"):
                return ReportRenderer.normalize(obj._asdict())
            return [ReportRenderer.normalize(v) for v in obj]
        raise ValueError(f"Cannot render object of type {type(obj).__name__}")

    @staticmethod
    def render_json(obj: Any, indent: int = 2) -> str:
        return json.dumps(ReportRenderer.normalize(obj), indent=indent)

    @staticmethod
    def file_digest(path: PathLike) -> str:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()

    @staticmethod
    def manifest_path(output: PathLike) -> Path:
        """b.pmm -> b.manifest.json"""
        out = Path(output)
        return out.with_name(out.stem + settings.MANIFEST_SUFFIX)

    @staticmethod
    def write_manifest(output: PathLike, subcommand: str, argv: List[str],
                       inputs: Iterable[PathLike] = (), outputs: Iterable[PathLike] = (),
                       wall_time: float = 0.0) -> Path:
        manifest = RunManifest(
            tool_version=settings.TOOL_VERSION,
            subcommand=subcommand,
            argv=list(argv),
            input_digests={str(p): ReportRenderer.file_digest(p) for p in inputs},
            output_digests={str(p): ReportRenderer.file_digest(p) for p in outputs},
            wall_time=wall_time,
            created_at=datetime.now(timezone.utc),
        )
        path = ReportRenderer.manifest_path(output)
        path.write_text(ReportRenderer.render_json(manifest) + "\n")
        logger.info(f"Wrote manifest {path}")
        return path

    @staticmethod
    def verify_manifest(path: PathLike) -> Dict[str, bool]:
        """File name -> whether its current sha256 still matches the recorded digest."""
        manifest = RunManifest.model_validate_json(Path(path).read_text())
        recorded = {**manifest.input_digests, **manifest.output_digests}
        status = {}
        for name, digest in recorded.items():
            current = Path(name)
            status[name] = current.exists() and ReportRenderer.file_digest(current) == digest
            if not status[name]:
                logger.warning(f"Digest mismatch for {name} recorded in {path}")
        return status
