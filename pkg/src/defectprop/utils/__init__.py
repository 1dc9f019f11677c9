"""
configuration, logging, error types and output helpers
"""
