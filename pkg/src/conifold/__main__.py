import sys

from conifold.cli import main

sys.exit(main())
