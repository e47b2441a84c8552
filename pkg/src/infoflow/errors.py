"""Exception types shared across the package."""


class SchemaError(ValueError):
    """An input document does not match the expected file schema."""


class ValidationError(ValueError):
    """A structurally well-formed value violates a semantic invariant."""


class UnknownInterfaceError(ValueError):
    """A query names an interface the graph does not declare."""
