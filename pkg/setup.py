from setuptools import setup, find_packages

setup(
    name="dcdiff",
    version="0.1.0",
    description="Exact sumset bounds for sets with distinct consecutive differences",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    author="dcdiff developers",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "click>=8.1.0",
        "pyyaml>=6.0",
        "pydantic>=2.0.0",
        "rich>=13.0.0",
        "networkx>=3.0",
        "numpy>=1.22",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "dcdiff=dcdiff.cli:cli",
        ],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
