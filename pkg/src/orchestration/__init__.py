"""Run configuration, dispatch and command-line entry point"""
