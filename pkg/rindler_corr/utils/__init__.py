"""
rindler-corr Utils Module
"""
