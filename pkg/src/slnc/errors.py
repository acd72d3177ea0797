"""Errors that the CLI maps onto exit codes."""


class InputError(Exception):
    """Malformed or inconsistent input (file syntax, shape mismatch, bad flags)."""


class FieldTooSmall(Exception):
    """A field-size guard failed or a deterministic scan exhausted the field."""
