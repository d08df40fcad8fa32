import sys

from phishsyntax.cli import main

sys.exit(main())
