"""
File handling utilities
"""
import csv
import json
import sys
from pathlib import Path

from ..core.errors import ParseError


class FileHandler:
    """Reads inputs and writes reports for the command line"""

    @staticmethod
    def read_text(file_path):
        """
        Read a UTF-8 text file

        Args:
            file_path (str): Path to file

        Returns:
            str: File contents

        Raises:
            ParseError: if the file cannot be read
        """
        try:
            return Path(file_path).read_text(encoding='utf-8')
        except OSError as e:
            raise ParseError(f"cannot read {file_path}: {e}") from e

    @staticmethod
    def write_jsonl(records, stream=None):
        """
        Write one JSON object per line

        Args:
            records: iterable of JSON-serializable dicts
            stream: text stream (default: stdout)
        """
        stream = stream or sys.stdout
        for record in records:
            stream.write(json.dumps(record, ensure_ascii=False) + '\n')
        stream.flush()

    @staticmethod
    def write_csv(rows, stream=None, fieldnames=None):
        """
        Write dict rows as CSV with a header line

        Args:
            rows (list): dicts sharing the same keys
            stream: text stream (default: stdout)
            fieldnames (list): column order (default: keys of the first row)
        """
        stream = stream or sys.stdout
        rows = list(rows)
        if not rows and not fieldnames:
            return
        writer = csv.DictWriter(stream, fieldnames=fieldnames or list(rows[0]), lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        stream.flush()
