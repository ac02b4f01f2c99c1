import sys

from similo.cli import main

sys.exit(main())
