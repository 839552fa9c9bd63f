"""
Work statistics: processes, two-point measurement, characteristic function.
"""
