"""
procedures behind each command-line command
"""
