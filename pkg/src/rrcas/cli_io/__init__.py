"""Session scripts: parsing and the JSON report schema."""

import json
from importlib import resources


def report_schema() -> dict:
    """JSON schema every report line written by a session satisfies."""
    return json.loads(resources.files(__name__).joinpath("report.schema.json").read_text())
