import sys

from kronholm.cli import main

# Run
if __name__ == "__main__":
    sys.exit(main())
