import sys

from sl2c.cli import main

sys.exit(main())
