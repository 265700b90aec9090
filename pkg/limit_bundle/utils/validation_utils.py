import json
import os
from functools import lru_cache
from typing import Any, Dict

from jsonschema import Draft7Validator, ValidationError


@lru_cache(maxsize=1)
def load_report_schema() -> Dict[str, Any]:
    """
    Load the JSON schema of suite reports shipped in ``docs/report_schema.json``.

    Returns:
        Dict[str, Any]: The schema.
    """
    current_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    schema_path = os.path.join(current_dir, 'docs', 'report_schema.json')
    with open(schema_path, 'r') as file:
        schema = json.load(file)
    Draft7Validator.check_schema(schema)
    return schema


def validate_report(report: Dict[str, Any]) -> bool:
    """
    Validate a JSON suite report against the documented report schema.

    Args:
        report: The report as produced by ``SuiteReport.to_json_dict()``.

    Returns:
        True if validation is successful

    Raises:
        ValueError: If validation fails, with the failing path and property details
    """
    schema = load_report_schema()
    try:
        Draft7Validator(schema).validate(report)
        return True
    except ValidationError as e:
        error_path = " -> ".join(str(p) for p in e.absolute_path) if e.absolute_path else "root"

        property_info = ""
        if e.absolute_path:
            prop_name = e.absolute_path[-1]
            prop_schema = schema.get("properties", {}).get(prop_name)
            if prop_schema:
                property_info = f"\nExpected type: {prop_schema.get('type', prop_schema.get('enum', 'unknown'))}"

        raise ValueError(
            f"Report schema validation failed at '{error_path}': {e.message}"
            f"{property_info}"
        ) from e


def get_schema_summary() -> str:
    """Human-readable list of the report's top-level and per-check fields."""
    schema = load_report_schema()
    summary = [f"Report fields: {', '.join(schema['required'])}"]
    check_schema = schema["properties"]["checks"]["items"]
    summary.append(f"Check fields: {', '.join(check_schema['required'])}")
    config_schema = schema["properties"]["config"]
    summary.append(f"Config fields: {', '.join(config_schema['required'])}")
    return "\n".join(summary)
