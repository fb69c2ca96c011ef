"""Setup script for hqst."""
from setuptools import find_packages, setup

import hqst


setup(name='hqst',
      version=hqst.__version__,
      description='Simulation of hybrid quantum state transfer between heterogeneous cavity-QED nodes.',
      long_description=open('README.md', encoding='utf-8').read(),
      long_description_content_type='text/markdown',
      classifiers=[
            'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
            'Topic :: Scientific/Engineering :: Physics',
      ],
      python_requires='~=3.9',
      packages=find_packages(),
      include_package_data=True,
      package_data={'hqst': ['data/*.csv']},
      install_requires=open('requirements.txt').read().splitlines(),
      extras_require={'quality': ['isort', 'flake8', 'pydocstyle', 'mypy'],
                      'tests': ['coverage']})
