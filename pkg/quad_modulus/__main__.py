"""Entry point of the command-line interface of quad_modulus package."""

import sys

from .main import main


if __name__ == '__main__':
    sys.exit(main())
