"""
staeckels3
Integrable systems from the separation of variables of the geodesic flow on S3, reduced to S2xS2.
"""

__version__ = "0.1.0"
__author__ = 'staeckels3 developers'
