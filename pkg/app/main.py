"""Command-line entry point and composition root."""

import sys
from collections.abc import Sequence

from app.application.exceptions import ConfigurationError, DataFormatError, UsageError
from app.domain.exceptions import DomainError
from app.infrastructure.config import load_settings
from app.infrastructure.container import get_application_container
from app.infrastructure.logging import get_logger, setup_logging
from app.infrastructure.run_context import run_scope
from app.presentation.cli import commands
from app.presentation.cli.parser import build_parser, settings_overrides

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

logger = get_logger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        overrides = settings_overrides(args)
    except UsageError as e:
        sys.stderr.write(f"positivity-audit: {e}\n")
        return EXIT_USAGE

    try:
        settings = load_settings(args.config, overrides)
    except ConfigurationError as e:
        sys.stderr.write(f"positivity-audit: {e}\n")
        return EXIT_DATA

    setup_logging(settings.log_level)
    container = get_application_container()
    container.wire(modules=[commands])
    try:
        with run_scope(args.command) as scope:
            try:
                commands.HANDLERS[args.command](args, settings)
            except UsageError as e:
                scope.exit_status = EXIT_USAGE
                logger.error("Usage error", extra={"error": str(e)})
                sys.stderr.write(f"positivity-audit: {e}\n")
            except DataFormatError as e:
                scope.exit_status = EXIT_DATA
                logger.error(
                    "Input rejected",
                    extra={"error": str(e), "problems": [str(p) for p in e.problems]},
                )
                sys.stderr.write(f"positivity-audit: {e.itemized()}\n")
            except (DomainError, ConfigurationError) as e:
                scope.exit_status = EXIT_DATA
                logger.error(
                    "Analysis failed", extra={"error": str(e), "type": type(e).__name__}
                )
                sys.stderr.write(f"positivity-audit: {e}\n")
            return scope.exit_status
    finally:
        container.unwire()


if __name__ == "__main__":
    sys.exit(main())
