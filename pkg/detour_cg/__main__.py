import sys

from detour_cg.cli import main

sys.exit(main())
