"""
Test suite for qdcav
"""
