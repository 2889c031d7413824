"""
Initialize cmd package.
This module contains the nstr command-line entry point.
"""
