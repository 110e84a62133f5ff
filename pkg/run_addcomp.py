"""Run addcomp from a source checkout: python run_addcomp.py <command> [options]."""

from __future__ import annotations

import sys

from addcomp.cli import main


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
