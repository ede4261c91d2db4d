#!/usr/bin/env python
from setuptools import setup, find_packages

setup(
    name="theory-combinators",
    version="0.0.1.dev1",
    author='Adam Victor Brandizzi',
    author_email='adam@brandizzi.com.br',
    description='Checker and flattener for theory presentation combinators',
    license='LGPLv3',

    packages=find_packages(),
    package_data={'theory_combinators.tests': ['resources/*.tpc']},
    install_requires=[
        'graphviz',
        'lark',
    ],
    entry_points={
        'console_scripts': ['tpc=theory_combinators.cli:main'],
    },
    test_suite='theory_combinators.tests',
)
