from .validators import validate_int_range, validate_field_spec, parse_int_list

__all__ = ["validate_int_range", "validate_field_spec", "parse_int_list"]
