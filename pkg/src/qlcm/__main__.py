import sys

from qlcm.cli import main

sys.exit(main())
