import sys

from braess.main import main

sys.exit(main())
