class InvariantError(RuntimeError):
    """An internal consistency check failed (a bug or a false hypothesis)."""
