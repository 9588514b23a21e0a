"""Command-line surface.

Each module defines one click command:
- data: gen-data
- train: train
- evaluate: eval
- bench: bench
"""
