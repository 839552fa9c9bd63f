"""
Driven harmonic oscillator: model and propagators.
"""
