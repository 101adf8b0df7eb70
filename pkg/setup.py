from os import path

from setuptools import find_packages, setup
from operadic_incidence import __version__


this_directory = path.abspath(path.dirname(__file__))

with open(path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

VERSION = __version__
DISTNAME = 'operadic_incidence'
LICENSE = 'GNU GPLv3'
AUTHOR = 'operadic_incidence contributors'
MAINTAINER = AUTHOR
DESCRIPTION = 'Incidence comodule bialgebras of operadic trees: cuts, blobs, Faà di Bruno and moulds'

PACKAGES = ['operadic_incidence']

DEPENDENCIES = ['sympy']

TEST_DEPENDENCIES = ['pytest']

classifiers = [
    'Development Status :: 4 - Beta',
    'Intended Audience :: Education',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Operating System :: POSIX :: Linux',
    'Operating System :: Unix',
    'Operating System :: Microsoft :: Windows',
    'Operating System :: MacOS'
]
keywords = 'operad trees incidence bialgebra hopf algebra faa di bruno connes kreimer moulds'


setup(
    name=DISTNAME,
    long_description=long_description,
    long_description_content_type='text/markdown',
    author=AUTHOR,
    maintainer=MAINTAINER,
    description=DESCRIPTION,
    license=LICENSE,
    version=VERSION,
    entry_points={
        'console_scripts': [
            'operadic-incidence=operadic_incidence.cli:main'
        ]
    },
    packages=find_packages(exclude=("tests",)),
    package_dir={'operadic_incidence': 'operadic_incidence'},
    install_requires=DEPENDENCIES,
    extras_require={'test': TEST_DEPENDENCIES},
    python_requires='>=3.8',
    include_package_data=True,
    classifiers=classifiers,
    keywords=keywords,
)
