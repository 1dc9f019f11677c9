"""Configuration files (iconfig.yml, extra_logging.yml) for defectprop."""
