"""Allow ``python -m latticeroot``."""

import sys

from .cli import main

sys.exit(main())
