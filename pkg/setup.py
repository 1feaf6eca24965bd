# minimal setup.py to be able to use the -e flag (pip install -e .)

from setuptools import find_packages, setup

setup(
    package_data={"isogeny2": ["data/*.txt"]},
    include_package_data=True,
    packages=find_packages(include=["isogeny2", "isogeny2.*"]),
)
