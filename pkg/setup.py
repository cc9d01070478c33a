from setuptools import find_packages, setup

setup(
    name="wpd",
    version="1.0.0",
    description="Wave/particle nonclassicality witnesses for two-mode light "
    "measured with click-counting detectors",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src", "src.*", "utils", "logger"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "pydantic>=1.10.13,<2",
        "parsimonious==0.10.0",
    ],
    extras_require={
        "test": ["pytest"],  # For testing
    },
    entry_points={"console_scripts": ["wpd=src.main:run"]},
)
