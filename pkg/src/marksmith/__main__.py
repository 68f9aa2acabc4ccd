import sys

from marksmith.cli import main

sys.exit(main())
