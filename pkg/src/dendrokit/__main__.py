"""Allow running dendrokit as `python -m dendrokit`."""

from dendrokit.cli import cli

cli()
