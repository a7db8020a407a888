import sys

from tverberg_kit.cli import main

sys.exit(main())
