import sys

from theory_combinators.cli import main

if __name__ == "__main__":
    sys.exit(main())
