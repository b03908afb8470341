"""Settings, exceptions and minimization helpers"""
