import sys

from xygates.cli import main

sys.exit(main())
