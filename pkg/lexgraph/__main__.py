import sys

from .cli_eval.cli import main

sys.exit(main())
