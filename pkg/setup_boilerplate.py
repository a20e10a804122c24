"""Package metadata defaults and helpers used by setup.py.

The package declares its metadata as a subclass of setup_boilerplate.Package; fields left as
None are filled in by Package.prepare() from the repository: version from the _version module,
long description from the readme, requirements from requirements.txt and python_requires from
the version classifiers.
"""

import logging
import pathlib
import runpy
import sys
import typing as t

import setuptools

_LOG = logging.getLogger(__name__)

HERE = pathlib.Path(__file__).resolve().parent

PYTHON_CLASSIFIER = 'Programming Language :: Python :: '

ONLY_SUFFIX = ' :: Only'

README_TYPES = {'.md': 'text/markdown', '.rst': 'text/x-rst'}


def find_version(package_name: str, version_module_name: str = '_version',
                 version_variable_name: str = 'VERSION') -> str:
    """Read VERSION from package_name/_version.py without importing the package.

    The version module is executed on its own, so it must not use relative imports.
    """
    path = HERE.joinpath(package_name.replace('-', '_'), f'{version_module_name}.py')
    return runpy.run_path(str(path))[version_variable_name]


def find_packages(root_directory: str = '.') -> t.List[str]:
    """Packages to distribute; tests are left out of binary distributions."""
    binary = any(_ in sys.argv for _ in ('bdist', 'bdist_wheel'))
    return setuptools.find_packages(root_directory, exclude=['test', 'test.*'] if binary else [])


def parse_requirements(requirements_path: str = 'requirements.txt') -> t.List[str]:
    """Non-empty, non-comment lines of a requirements file."""
    lines = HERE.joinpath(requirements_path).read_text().splitlines()
    return [_.strip() for _ in lines if _.strip() and not _.strip().startswith('#')]


def _classifier_version(classifier: str) -> t.Optional[t.Tuple[t.Tuple[int, ...], bool]]:
    if not classifier.startswith(PYTHON_CLASSIFIER):
        return None
    version = classifier[len(PYTHON_CLASSIFIER):]
    only = version.endswith(ONLY_SUFFIX)
    if only:
        version = version[:-len(ONLY_SUFFIX)]
    try:
        return tuple(int(_) for _ in version.split('.')), only
    except ValueError:
        return None


def find_required_python_version(classifiers: t.Sequence[str]) -> t.Optional[str]:
    """Lowest full Python version among the classifiers as a specifier, e.g. '>=3.9'.

    A single ':: Only' classifier is used when no full version is listed, and every listed
    version has to agree with it.
    """
    versions, only_versions = [], []
    for classifier in classifiers:
        parsed = _classifier_version(classifier)
        if parsed is not None:
            (only_versions if parsed[1] else versions).append(parsed[0])
    if len(only_versions) > 1:
        raise ValueError(f'more than one "{ONLY_SUFFIX}" version in {only_versions}')
    for only_version in only_versions:
        for version in versions:
            if version[:len(only_version)] != only_version:
                raise ValueError(f'the "{ONLY_SUFFIX}" version {only_version}'
                                 f' is inconsistent with version {version}')
    if versions:
        longest = max(len(_) for _ in versions)
        lowest = min(_ for _ in versions if len(_) == longest)
        return '>=' + '.'.join(str(_) for _ in lowest)
    if only_versions:
        return '.'.join(str(_) for _ in only_versions[0])
    return None


class Package:
    """Default metadata and behaviour for a Python package setup script."""

    root_directory: str = '.'
    name: t.Optional[str] = None
    version: t.Optional[str] = None
    description: t.Optional[str] = None
    long_description: t.Optional[str] = None
    long_description_content_type: t.Optional[str] = None
    url: t.Optional[str] = None
    download_url: t.Optional[str] = None
    author: t.Optional[str] = None
    author_email: t.Optional[str] = None
    license_str: str = 'Apache License 2.0'
    classifiers: t.List[str] = []
    keywords: t.List[str] = []
    packages: t.Optional[t.List[str]] = None
    package_data: t.Dict[str, t.List[str]] = {}
    install_requires: t.Optional[t.List[str]] = None
    extras_require: t.Mapping[str, t.List[str]] = {}
    python_requires: t.Optional[str] = None
    entry_points: t.Mapping[str, t.List[str]] = {}
    """For example {'console_scripts': ['script_name = package.module:function']}."""

    test_suite: str = 'test'

    @classmethod
    def try_fields(cls, *names) -> t.Optional[t.Any]:
        """Return first existing of given class field names."""
        for name in names:
            if hasattr(cls, name):
                return getattr(cls, name)
        raise AttributeError((cls, names))

    @classmethod
    def parse_readme(cls, readme_filename: str = 'README.md',
                     encoding: str = 'utf-8') -> t.Tuple[str, str]:
        """Readme text and its content type, derived from the file extension."""
        readme_path = HERE.joinpath(readme_filename)
        text = readme_path.read_text(encoding=encoding)
        content_type = README_TYPES.get(readme_path.suffix.lower(), 'text/plain')
        return text, f'{content_type}; charset=UTF-8'

    @classmethod
    def prepare(cls) -> None:
        """Fill in possibly missing package metadata."""
        if cls.version is None:
            cls.version = find_version(cls.name)
        if cls.long_description is None:
            cls.long_description, cls.long_description_content_type = cls.parse_readme()
        if cls.packages is None:
            cls.packages = find_packages(cls.root_directory)
        if cls.install_requires is None:
            cls.install_requires = parse_requirements()
        if cls.python_requires is None:
            cls.python_requires = find_required_python_version(cls.classifiers)
        _LOG.debug('prepared %s %s requiring Python %s', cls.name, cls.version,
                   cls.python_requires)

    @classmethod
    def setup(cls) -> None:
        """Call setuptools.setup with correct arguments."""
        cls.prepare()
        setuptools.setup(
            name=cls.name, version=cls.version, description=cls.description,
            long_description=cls.long_description,
            long_description_content_type=cls.long_description_content_type,
            url=cls.url, download_url=cls.download_url,
            author=cls.author, author_email=cls.author_email,
            maintainer=cls.try_fields('maintainer', 'author'),
            maintainer_email=cls.try_fields('maintainer_email', 'author_email'),
            license=cls.license_str, classifiers=cls.classifiers, keywords=cls.keywords,
            packages=cls.packages, package_dir={'': cls.root_directory},
            include_package_data=True, package_data=cls.package_data,
            install_requires=cls.install_requires, extras_require=cls.extras_require,
            python_requires=cls.python_requires,
            entry_points=cls.entry_points, test_suite=cls.test_suite)
