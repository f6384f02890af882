import sys

from laguerre2d.harness import main

sys.exit(main())
