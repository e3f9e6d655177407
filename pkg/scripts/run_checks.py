"""Run every verification suite with default sizes and report timings."""

import sys
import time

from smallpfa.checks import SUITES


def main():
    failed = 0
    for name, suite in SUITES.items():
        start = time.perf_counter()
        result = suite()
        elapsed = time.perf_counter() - start
        failed += not result.passed
        print(f"{name:20s} {'pass' if result.passed else 'FAIL'} {elapsed:6.2f}s  {result.detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
