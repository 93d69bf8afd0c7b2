import sys

from unicellular.cli import main

sys.exit(main())
