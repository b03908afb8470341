"""
TC-SQUEEZE: exact Tavis-Cummings squeezing simulator
"""
import os
import sys

from aws_lambda_powertools import Logger

os.environ.setdefault("POWERTOOLS_SERVICE_NAME", "tc-squeeze")

# The first Logger of a service owns its handler; stdout is reserved for CLI summaries
logger = Logger(stream=sys.stderr)
