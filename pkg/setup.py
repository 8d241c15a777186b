from setuptools import setup, find_packages

setup(
    name="qrtw",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    package_data={
        "src.qrtw.registry": ["catalogue.yml", "data/*.qrt"],
        "config": ["qrtw-config.yml"],
    },
    install_requires=[
        "sympy>=1.12",
        "rich",
        "dataclasses-json>=0.6.0",
        "python-dotenv>=1.0.0",
        "PyYAML>=6.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "qrtw=src.cli.main:main",
        ],
    },
    python_requires=">=3.9",
    description="QRT Workbench - exact verification of integrable birational maps",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
