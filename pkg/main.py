import sys

from src.cli.app import run_cli

if __name__ == "__main__":
    """
    Main Entry Point for the Apéry / Delannoy congruence engine.

    Architecture:
    1.  **CLI** (`src/cli/app.py`): parses the command and prints results.
    2.  **Harness** (`src/core/harness.py`): enumerates parameter tuples and
        fans them out to worker processes.
    3.  **Checkers** (`src/core/identities.py`, `qcongruences.py`, `conjectures.py`):
        exact evaluation of every claim.

    Worker processes re-import this module on spawn platforms; the guard keeps
    them from re-running the CLI.
    """
    try:
        sys.exit(run_cli(sys.argv[1:]))
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        sys.exit(130)
