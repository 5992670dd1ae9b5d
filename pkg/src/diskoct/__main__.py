import sys

from diskoct.cli import main

sys.exit(main())
