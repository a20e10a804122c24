"""Version of quad_modulus package."""

VERSION = '0.1.0'
