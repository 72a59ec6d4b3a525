"""Allow ``python -m pirick``."""

import sys

from .cli import main

sys.exit(main())
