"""Setup script for quad_modulus package."""

import setup_boilerplate


class Package(setup_boilerplate.Package):
    """Package metadata."""

    name = 'quad-modulus'
    description = 'Conformal modulus of polygonal quadrilaterals, with numerical verification' \
        ' of its monotonicity and convexity laws.'
    url = 'https://github.com/quad-modulus/quad-modulus'
    author = 'quad-modulus contributors'
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Typing :: Typed']
    keywords = [
        'conformal modulus', 'quadrilateral', 'Schwarz-Christoffel', 'finite elements',
        'polarization', 'symmetrization', 'verification']
    entry_points = {'console_scripts': ['quad-modulus = quad_modulus.main:main']}


if __name__ == '__main__':
    Package.setup()
