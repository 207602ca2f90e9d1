"""
Configuration modules for the planning toolkit.
"""
