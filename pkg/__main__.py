#!/usr/bin/env python3
"""regret-filter - Python module execution entry.

Usage:
    python -m regret_filter synth --model builtin:scalar
    python -m regret_filter reproduce --table 1
"""

import sys


def main() -> int:
    """Python module execution main entry point.

    Returns:
        CLI exit code.
    """
    from cli import main as cli_main

    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
