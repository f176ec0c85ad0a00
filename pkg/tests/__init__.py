"""
Test suite for spherelab.
"""
