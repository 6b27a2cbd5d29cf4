"""Document loading, scenario analysis, recommendations and rendering.

Submodules are imported directly by the CLI and tests; nothing is re-exported here."""

__all__: list[str] = []
