from typing import Any, List, Optional
from ..core.exceptions import ValidationError
from ..core.scalars import field_from_spec


def validate_int_range(
    value: Any,
    min_val: int = 0,
    max_val: Optional[int] = None,
    param_name: str = "value"
) -> int:
    """Validate that a value is an integer within the specified range"""
    if isinstance(value, bool):
        raise ValidationError(f"Parameter '{param_name}' must be an integer")
    try:
        int_val = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"Parameter '{param_name}' must be an integer")
    if isinstance(value, float) and value != int_val:
        raise ValidationError(f"Parameter '{param_name}' must be an integer, got {value}")

    if int_val < min_val or (max_val is not None and int_val > max_val):
        bound = f"between {min_val} and {max_val}" if max_val is not None else f"at least {min_val}"
        raise ValidationError(f"Parameter '{param_name}' must be {bound}, got {int_val}")

    return int_val


def validate_field_spec(value: Any, param_name: str = "field") -> str:
    if not isinstance(value, str):
        raise ValidationError(f"Parameter '{param_name}' must be a string")
    try:
        field_from_spec(value)
    except ValidationError as e:
        raise ValidationError(f"Parameter '{param_name}': {e.detail}")
    return value


def parse_int_list(text: str, param_name: str = "sizes") -> List[int]:
    """Parse a comma-separated list of non-negative integers"""
    parts = [part.strip() for part in str(text).split(",") if part.strip()]
    if not parts:
        raise ValidationError(f"Parameter '{param_name}' must list at least one integer")
    return [validate_int_range(part, 0, None, param_name) for part in parts]
