#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

# put package requirements here
requirements = [
    'numpy',
    'scipy',
    'jmespath',
    'python-box'
]

# put setup requirements (distutils extensions, etc.) here
setup_requirements = [
    'pytest-runner',
]

# put package test requirements here
test_requirements = [
    'pytest',
    'numpy',
    'scipy',
    'jmespath',
    'python-box',
]

setup(
    name='zonalprop',
    version='0.1.0',
    description="Analytic J2/J3 zonal orbit propagation with nonsingular periodic corrections",
    long_description=readme + '\n\n' + history,
    author="Lars Solberg",
    author_email='lars.solberg@gmail.com',
    packages=find_packages(include=['zonalprop'], exclude=['tests']),
    include_package_data=True,
    install_requires=requirements,
    python_requires='>=3.7',
    license="MIT license",
    zip_safe=False,
    keywords='zonalprop orbit propagation J2 J3 mean elements',
    entry_points={
        'console_scripts': [
            'zonalprop = zonalprop:main',
        ]
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Astronomy',
        'Topic :: Scientific/Engineering :: Physics',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.7',
    ],
    test_suite='tests',
    tests_require=test_requirements,
    setup_requires=setup_requirements,
)
