"""
Utility modules for qscatter
"""
