def g():
    """Docstring with # hash."""
    return None
