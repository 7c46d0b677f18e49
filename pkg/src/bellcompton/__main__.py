import sys

from bellcompton.cli import main

sys.exit(main())
