from setuptools import setup

setup(
    name='repquest',
    version='0.1.0.0',
    py_modules=[
        'progress',
        'repquest_binexp',
        'repquest_bounds',
        'repquest_cdm',
        'repquest_config',
        'repquest_directrep',
        'repquest_envs',
        'repquest_experiments',
        'repquest_locale',
        'repquest_main',
        'repquest_netio',
        'repquest_nnet',
        'repquest_optim',
        'repquest_output',
        'repquest_replearn',
        'repquest_sweep',
    ],
    package_dir={'': 'repquest'},
    license='BSD-3-clause',
    author='RepQuest contributors',
    author_email='',
    description='Multi-task representation learning experiments.',
    entry_points={
        'console_scripts': ['repquest = repquest_main:main'],
    },
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'setuptools'
    ]
)
