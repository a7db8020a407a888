from __future__ import annotations

import sys
from pathlib import Path

# Ensure tverberg_app/ is on sys.path so `tverberg_kit.*` imports work when run as a script
_HERE = Path(__file__).resolve()
_APP_DIR = _HERE.parent  # <root>/tverberg_app/main.py -> <root>/tverberg_app
if str(_APP_DIR) not in sys.path:
    sys.path.insert(0, str(_APP_DIR))

from tverberg_kit.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
