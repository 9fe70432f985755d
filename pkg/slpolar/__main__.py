"""Allow ``python -m slpolar``."""

from .cli import main

raise SystemExit(main())
