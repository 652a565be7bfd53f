import sys

from beilab.main import main

sys.exit(main())
