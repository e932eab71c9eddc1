"""
Repository layer for experiment output.

This module defines the ResultRepository class, which writes per-round rows and sweep curves as
CSV and summaries as JSON under one output directory.
"""

from pathlib import Path
from typing import List

import pandas as pd
from pydantic import BaseModel

from app.experiments.schemas.result_schemas import ResultRow, SweepPoint
from app.utils.constants.constants import RESULT_COLUMNS, SWEEP_COLUMNS
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions

_COMPONENT = "ResultRepository"


class ResultRepository:
    """
    Repository for result files.
    """

    def __init__(self, output_dir: Path) -> None:
        """
        Initialize the ResultRepository with an output directory, created on first write.

        Args:
            output_dir (Path): Directory receiving every file.
        """
        self._output_dir: Path = Path(output_dir)

    @property
    def output_dir(self) -> Path:
        return self._output_dir

    def _path(self, file_name: str) -> Path:
        self._output_dir.mkdir(parents=True, exist_ok=True)
        return self._output_dir / file_name

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.WRITE_RESULTS)
    def write_rows(self, rows: List[ResultRow], file_name: str) -> Path:
        """
        Writes round rows with the stable result header, ordered by (scenario id, round).

        Args:
            rows (List[ResultRow]): Rows to write.
            file_name (str): Target file name inside the output directory.

        Returns:
            Path: The written file.
        """
        frame = pd.DataFrame([row.model_dump(mode="json") for row in rows], columns=RESULT_COLUMNS)
        frame = frame.sort_values(["scenario_id", "round"], kind="stable")
        path = self._path(file_name)
        frame.to_csv(path, index=False)
        return path

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.WRITE_RESULTS)
    def write_sweep(self, points: List[SweepPoint], file_name: str) -> Path:
        frame = pd.DataFrame([point.model_dump() for point in points], columns=SWEEP_COLUMNS)
        path = self._path(file_name)
        frame.to_csv(path, index=False)
        return path

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.WRITE_RESULTS)
    def write_summary(self, summary: BaseModel, file_name: str) -> Path:
        """
        Writes a summary model as indented JSON.

        Returns:
            Path: The written file.
        """
        path = self._path(file_name)
        path.write_text(summary.model_dump_json(indent=2), encoding="utf-8")
        return path

    def read_rows(self, file_name: str) -> pd.DataFrame:
        """Loads a previously written CSV with every column kept as written."""
        return pd.read_csv(self._output_dir / file_name, dtype={"p_t_watts_list": str, "channels": str})
