"""
Unit tests for individual services and repositories
"""
