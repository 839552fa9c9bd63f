"""
Ramsey interferometer: gates, ancilla dephasing, protocol runner.
"""
