from setuptools import setup, find_packages

setup(
    name='pdcomplex',
    version='0.1.0',
    packages=find_packages(include=['pdcomplex', 'pdcomplex.*']),
    entry_points={
        'console_scripts': ['pdc=pdcomplex.cli.app:main']
    }
)
