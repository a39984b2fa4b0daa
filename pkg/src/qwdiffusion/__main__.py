import sys

from qwdiffusion.cli import main

sys.exit(main())
