"""
Scripts

Stand-alone entry points for verifying the catalogue in batch.
"""
