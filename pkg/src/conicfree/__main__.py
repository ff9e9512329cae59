import sys

from conicfree.cli import main

sys.exit(main())
