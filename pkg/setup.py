from setuptools import setup, find_packages
from pathlib import Path

_version_ns = {}
exec((Path(__file__).parent / "floertoolkit" / "__version__.py").read_text(), _version_ns)
__version__ = _version_ns["__version__"]

with Path("requirements.txt").open() as f:
    install_requires = [line for line in f.read().splitlines() if line.strip()]

setup(
    name="FloerToolkit",
    version=__version__,
    author="Gustavo Inostroza",
    author_email="gusinostrozar@gmail.com",
    description="A package for computing algebraic Floer-type homologies of finite chain complexes",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    url="https://github.com/Inostroza7/FloerToolkit",
    packages=find_packages(exclude=["tests"]),
    package_data={"floertoolkit": ["golden/*.cx", "golden/*.hd", "golden/expected.json"]},
    install_requires=install_requires,
    extras_require={
        "test": ["pytest>=8.0", "pytest-asyncio>=0.23", "hypothesis>=6.100"],
    },
    entry_points={
        "console_scripts": ["floertoolkit=floertoolkit.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.9',
)
