"""Utility modules for console output and CSV persistence."""

from shared.utils.csv_storage import FLOAT_FORMAT, build_frame, ensure_directory, load_csv, save_csv

__all__ = ["FLOAT_FORMAT", "build_frame", "ensure_directory", "load_csv", "save_csv"]
