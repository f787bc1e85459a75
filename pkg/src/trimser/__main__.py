import sys

from trimser.cli import main

sys.exit(main())
