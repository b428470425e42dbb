# setup.py - Setuptools Configuration

from setuptools import setup, find_packages
from pathlib import Path

# Read README for long_description
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding="utf-8") if (this_directory / "README.md").exists() else ""

setup(
    # Basic Information
    name="pst-network",
    version="1.0.1",
    description="Perfect state transfer on switchable graphs: PST analysis, p-PST network construction and quantum routing tables",
    long_description=long_description,
    long_description_content_type="text/markdown",

    # License
    license="MIT",

    # Classifiers
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: Polish",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],

    # Python Version
    python_requires=">=3.9",

    # Packages
    packages=find_packages(exclude=["tests", "fixtures", "examples"]),

    # Core Dependencies
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "networkx>=3.1",
        "click>=8.1.0,<8.2",
        "colorlog>=6.7.0",
        "python-dotenv>=1.0.0",
        "pandas>=2.0.0",
        "openpyxl>=3.1.0",
    ],

    # Optional Dependencies (extras)
    extras_require={
        # Development Tools
        "dev": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "pytest-mock>=3.11.0",
            "black>=23.7.0",
            "pylint>=2.17.0",
            "flake8>=6.0.0",
            "mypy>=1.4.0",
            "isort>=5.12.0",
        ],
    },

    # Entry Points (for console scripts)
    entry_points={
        "console_scripts": [
            "pst-network=pst_network.cli.pst_cli:main",
        ],
    },

    # Include Data Files
    include_package_data=True,

    # Zip Safe
    zip_safe=False,

    # Keywords
    keywords=[
        "quantum",
        "perfect-state-transfer",
        "spin-network",
        "graph",
        "routing",
        "hypercube",
    ],
)
