"""Metadata, dependencies and the console script are declared in setup.cfg"""
from setuptools import setup

setup()
