import sys

from abcdlab.cli import main

sys.exit(main())
