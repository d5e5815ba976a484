import sys

from bottleneck.main import main

sys.exit(main())
