#!/usr/bin/env python3
"""
reprodet launcher script

Runs the reprodet command line (gen, verify, det, bench, batch) from a
source checkout without installing the package.
"""
import sys


if __name__ == "__main__":
    from reprodet.app import main

    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nExiting...")
        sys.exit(130)
