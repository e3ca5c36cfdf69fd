from setuptools import setup, find_packages

setup(
    name="wedge_entanglement",
    version="0.1",
    packages=find_packages(include=["src*", "configs*"]),
    install_requires=["numpy", "scipy", "tqdm"],
    entry_points={"console_scripts": ["entangle=src.entangle.cli:main"]},
)
