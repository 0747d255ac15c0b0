"""
Integration tests for the qdcav CLI
"""
